#include "mapfpp/lhpq.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "mapfpp/cvs.hpp"
#include "mapfpp/errors.hpp"
#include "mapfpp/hull.hpp"
#include "mapfpp/laws.hpp"
#include "mapfpp/pmap_io.hpp"
#include "mapfpp/stats.hpp"

namespace mapfpp {

namespace {

const OffspringSampler& theta_sampler() {
    static const OffspringSampler s = theta_pmf().sampler();
    return s;
}

std::uint64_t key(int k, std::int64_t x) {
    return (static_cast<std::uint64_t>(k) << 44) ^ static_cast<std::uint64_t>(x + (std::int64_t{1} << 43));
}

std::vector<int> bfs_local(int n, const std::vector<std::pair<int, int>>& edges, const std::vector<int>& sources) {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> d(n, -1);
    std::deque<int> q;
    for (int s : sources) {
        d[s] = 0;
        q.push_back(s);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : adj[v])
            if (d[w] < 0) {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
    }
    return d;
}

}  // namespace

// ---- slot shapes -----------------------------------------------------------

SlotShape SlotShape::from(const TruncatedQuadrangulation& s) {
    const auto& m = s.map;
    auto f = slot_frame(s);
    SlotShape sh;
    const int c = static_cast<int>(f.children.size());
    sh.children = c;
    std::vector<int> loc(m.vertex_count(), -1);
    int apex = m.origin(f.x);
    loc[apex] = 0;
    std::vector<int> low;
    if (c == 0) {
        low.push_back(m.target(f.x));
    } else {
        for (int h : f.children) low.push_back(m.origin(h));
        low.push_back(m.target(f.children.back()));
    }
    if (m.target(f.x) != low.front() || m.target(f.y) != low.back())
        throw std::invalid_argument("slot sides do not reach the lower corners");
    for (int i = 0; i <= c; ++i) {
        if (loc[low[i]] >= 0) throw std::invalid_argument("slot boundary is not simple");
        loc[low[i]] = 1 + i;
    }
    int next = c + 2;
    for (int v = 0; v < m.vertex_count(); ++v)
        if (loc[v] < 0) loc[v] = next++;
    sh.vertices = next;

    std::vector<char> skip(m.edge_count(), 0);
    skip[edge_of(m.root())] = 1;
    for (int h : f.children) skip[edge_of(h)] = 1;
    for (int e = 0; e < m.edge_count(); ++e) {
        if (skip[e]) continue;
        if (e == edge_of(f.x)) sh.x_edge = static_cast<int>(sh.edges.size());
        sh.edges.emplace_back(loc[m.origin(2 * e)], loc[m.origin(2 * e + 1)]);
    }

    auto da = bfs_local(sh.vertices, sh.edges, {0});
    std::vector<int> lows;
    for (int i = 1; i <= c + 1; ++i) lows.push_back(i);
    auto dl = bfs_local(sh.vertices, sh.edges, lows);
    sh.parity.resize(sh.vertices);
    sh.offset.resize(sh.vertices);
    for (int v = 0; v < sh.vertices; ++v) {
        if (da[v] < 0) throw std::invalid_argument("slot is disconnected");
        sh.parity[v] = static_cast<char>(da[v] % 2);
        sh.offset[v] = 1 - std::min(dl[v], da[v] + 1);
    }
    for (auto [a, b] : sh.edges)
        if (sh.parity[a] == sh.parity[b]) throw std::invalid_argument("slot is not bipartite");

    const int ext = m.face_of(twin(m.root())), rf = m.face_of(m.root());
    std::vector<char> special(m.face_count(), 0);
    special[ext] = special[rf] = 1;
    for (int h : f.children) {
        int t = m.face_of(h);
        if (m.face_degree(t) != 3) throw std::invalid_argument("child without its triangle");
        special[t] = 1;
        int z = loc[m.origin(m.face_next(m.face_next(h)))];
        if (sh.parity[z] != 0) throw std::invalid_argument("child triangle apex at the wrong parity");
        sh.child_apex.push_back(z);
    }
    for (int fc = 0; fc < m.face_count(); ++fc) {
        if (special[fc]) continue;
        auto ds = m.face(fc);
        if (ds.size() != 4) throw std::invalid_argument("inner slot face of degree " + std::to_string(ds.size()));
        int q[4];
        for (int i = 0; i < 4; ++i) q[i] = loc[m.origin(ds[i])];
        auto put = [&](int a, int b) {
            if (a == b) return;
            (sh.parity[a] == 0 ? sh.diag_even : sh.diag_odd).emplace_back(a, b);
        };
        put(q[0], q[2]);
        put(q[1], q[3]);
    }
    sh.good = is_good_slot(s);
    return sh;
}

// ---- slot pool -------------------------------------------------------------

void SlotPool::add(TruncatedQuadrangulation s) {
    shapes_.push_back(SlotShape::from(s));
    by_perimeter_[s.perimeter].push_back(static_cast<int>(slots_.size()));
    slots_.push_back(std::move(s));
}

SlotPool SlotPool::harvest(const HarvestOptions& opt, Rng& rng) {
    if (opt.quadrangulations < 1 || opt.n < 1 || opt.radius < 1) throw std::invalid_argument("bad harvest options");
    SlotPool pool;
    int used = 0;
    for (int i = 0; i < opt.quadrangulations; ++i) {
        auto pq = sample_pointed_quadrangulation(opt.n, rng);
        const int target = *pq.map.marked();
        auto lab = root_distances(pq.map);
        const int r = std::min<int>(opt.radius, static_cast<int>(lab[target]) - 1);
        if (r < 1) continue;
        auto forest = skeleton_decompose(as_cylinder(truncated_hull(pq.map, target, r)));
        for (auto& level : forest.slots)
            for (auto& s : level) pool.add(std::move(s));
        ++used;
    }
    std::ostringstream os;
    os << "hulls of radius <= " << opt.radius << " in " << used << " quadrangulations with n = " << opt.n;
    pool.provenance = os.str();
    return pool;
}

std::size_t SlotPool::count(int perimeter) const {
    auto it = by_perimeter_.find(perimeter);
    return it == by_perimeter_.end() ? 0 : it->second.size();
}

int SlotPool::max_perimeter() const { return by_perimeter_.empty() ? 0 : by_perimeter_.rbegin()->first; }

std::optional<int> SlotPool::draw(int perimeter, Rng& rng) const {
    auto it = by_perimeter_.find(perimeter);
    if (it == by_perimeter_.end()) return std::nullopt;
    const auto& v = it->second;
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

double SlotPool::good_fraction() const {
    auto it = by_perimeter_.find(2);
    if (it == by_perimeter_.end()) return 0.0;
    double g = 0;
    for (int i : it->second) g += shapes_[i].good;
    return g / static_cast<double>(it->second.size());
}

std::string SlotPool::to_text() const {
    std::ostringstream os;
    os << "SLOTPOOL 1\nprovenance " << provenance << '\n';
    for (const auto& [p, ids] : by_perimeter_) {
        os << "perimeter " << p << " count " << ids.size() << '\n';
        for (int i : ids) {
            write_pmap(os, slots_[i].map);
            os << '\n';
        }
    }
    return os.str();
}

SlotPool SlotPool::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "SLOTPOOL 1") throw FormatError("missing SLOTPOOL 1 header");
    SlotPool pool;
    if (!std::getline(is, line) || line.rfind("provenance", 0) != 0) throw FormatError("missing provenance line");
    pool.provenance = line.size() > 11 ? line.substr(11) : "";
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string k1, k2;
        int p = 0;
        long long n = 0;
        if (!(ls >> k1 >> p >> k2 >> n) || k1 != "perimeter" || k2 != "count" || p < 1 || n < 0)
            throw FormatError("expected 'perimeter <p> count <m>'");
        for (long long i = 0; i < n; ++i) {
            auto doc = read_pmap(is);
            TruncatedQuadrangulation s{std::move(doc.map), 0};
            s.perimeter = s.map.face_degree(s.external_face());
            if (s.perimeter != p) throw FormatError("slot perimeter does not match its group");
            pool.add(std::move(s));
        }
    }
    return pool;
}

void SlotPool::save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << to_text();
    if (!os) throw std::runtime_error("write failed: " + path);
}

SlotPool SlotPool::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return from_text(ss.str());
}

// ---- lazy half-plane ---------------------------------------------------------

Lhpq::Lhpq(std::uint64_t seed, LhpqOptions opt) : seed_(seed), opt_(std::move(opt)) {
    if (opt_.source == SlotSource::Harvested && !opt_.pool)
        throw std::invalid_argument("harvested slots need a pool");
    if (!opt_.lattice_graph && !opt_.tutte_graph) throw std::invalid_argument("no graph requested");
}

Lhpq::Level& Lhpq::level(int k) {
    if (k < 0) throw std::out_of_range("negative line index");
    while (static_cast<int>(levels_.size()) <= k) {
        int j = static_cast<int>(levels_.size());
        levels_.push_back(Level{{0}, {0}, make_rng(seed_, 1, j, 0), make_rng(seed_, 1, j, 1)});
    }
    return levels_[k];
}

void Lhpq::extend_pos(Level& L, int k, std::size_t n) {
    const std::vector<int>* fixed =
        k < static_cast<int>(opt_.fixed_offspring.size()) ? &opt_.fixed_offspring[k] : nullptr;
    while (L.cum_pos.size() < n) {
        std::size_t x = L.cum_pos.size() - 1;
        std::int64_t c = fixed && x < fixed->size() ? (*fixed)[x] : theta_sampler()(L.pos);
        L.cum_pos.push_back(L.cum_pos.back() + c);
    }
}

void Lhpq::extend_neg(Level& L, int, std::size_t n) {
    while (L.cum_neg.size() < n) L.cum_neg.push_back(L.cum_neg.back() + theta_sampler()(L.neg));
}

std::int64_t Lhpq::offspring(int k, std::int64_t x) {
    auto& L = level(k);
    if (x >= 0) {
        extend_pos(L, k, static_cast<std::size_t>(x) + 2);
        return L.cum_pos[x + 1] - L.cum_pos[x];
    }
    auto i = static_cast<std::size_t>(-x);
    extend_neg(L, k, i + 1);
    return L.cum_neg[i] - L.cum_neg[i - 1];
}

std::int64_t Lhpq::first_child(int k, std::int64_t x) {
    auto& L = level(k);
    if (x >= 0) {
        extend_pos(L, k, static_cast<std::size_t>(x) + 1);
        return L.cum_pos[x];
    }
    auto i = static_cast<std::size_t>(-x);
    extend_neg(L, k, i + 1);
    return -L.cum_neg[i];
}

std::int64_t Lhpq::parent(int k, std::int64_t y) {
    auto& L = level(k);
    if (y >= 0) {
        while (L.cum_pos.back() <= y) extend_pos(L, k, L.cum_pos.size() + 1);
        return (std::upper_bound(L.cum_pos.begin(), L.cum_pos.end(), y) - L.cum_pos.begin()) - 1;
    }
    while (L.cum_neg.back() < -y) extend_neg(L, k, L.cum_neg.size() + 1);
    return -(std::lower_bound(L.cum_neg.begin(), L.cum_neg.end(), -y) - L.cum_neg.begin());
}

std::int64_t Lhpq::descend(int k, std::int64_t x, int steps) {
    for (int i = 0; i < steps; ++i) x = first_child(k + i, x);
    return x;
}

bool Lhpq::reaches(int k, std::int64_t x, int h) { return descend(k, x + 1, h) > descend(k, x, h); }

int Lhpq::new_vertex(int k, std::int64_t x, int depth) {
    int v = vertex_count();
    level_.push_back(k);
    pos_.push_back(x);
    depth_.push_back(depth);
    done_.push_back(0);
    lat_head_.push_back(-1);
    tut_head_.push_back(-1);
    return v;
}

int Lhpq::vertex(int k, std::int64_t x) {
    auto [it, fresh] = lattice_.try_emplace(key(k, x), -1);
    if (fresh) it->second = new_vertex(k, x, k);
    return it->second;
}

std::optional<int> Lhpq::find_vertex(int k, std::int64_t x) const {
    auto it = lattice_.find(key(k, x));
    if (it == lattice_.end()) return std::nullopt;
    return it->second;
}

void Lhpq::add_edge(std::vector<Half>& arena, std::vector<int>& head, int a, int b, double w) {
    int i = static_cast<int>(arena.size());
    arena.push_back({b, head[a], w});
    head[a] = i;
    arena.push_back({a, head[b], w});
    head[b] = i + 1;
}

int Lhpq::shape_index(int k, std::int64_t x) {
    auto [it, fresh] = shape_of_.try_emplace(key(k, x), 0);
    if (!fresh) return it->second;
    const auto c = offspring(k, x);
    int id;
    std::optional<int> drawn;
    if (opt_.source == SlotSource::Harvested) {
        auto rng = make_rng(seed_, 2, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(x));
        drawn = opt_.pool->draw(static_cast<int>(c + 1), rng);
        if (!drawn) {
            if (!opt_.fan_fallback)
                throw SlotPoolExhausted("no pooled slot of perimeter " + std::to_string(c + 1));
            ++fallbacks_;
        }
    }
    if (drawn) {
        id = *drawn;
    } else {
        if (!fans_.count(static_cast<int>(c)))
            fans_.emplace(static_cast<int>(c), SlotShape::from(fan_slot(static_cast<int>(c))));
        id = -1 - static_cast<int>(c);
    }
    it->second = id;
    return id;
}

const SlotShape& Lhpq::slot_shape(int k, std::int64_t x) {
    return shape_by_id(shape_index(k, x));
}

const SlotShape& Lhpq::shape_by_id(int id) const {
    return id >= 0 ? opt_.pool->shapes()[id] : fans_.at(-1 - id);
}

bool Lhpq::good(int k, std::int64_t x) { return offspring(k, x) == 1 && slot_shape(k, x).good; }

bool Lhpq::slot_built(int k, std::int64_t x) const { return slots_.count(key(k, x)) != 0; }

std::vector<int> Lhpq::slot_vertices(int k, std::int64_t x) {
    build_slot(k, x);
    const auto& rec = slots_.at(key(k, x));
    const SlotShape& sh = shape_by_id(rec.shape);
    const auto S = first_child(k, x);
    std::vector<int> g(sh.vertices);
    g[0] = vertex(k, x);
    for (int i = 0; i <= sh.children; ++i) g[1 + i] = vertex(k + 1, S + i);
    for (int j = sh.children + 2; j < sh.vertices; ++j) g[j] = rec.base + (j - sh.children - 2);
    return g;
}

void Lhpq::build_slot(int k, std::int64_t x) {
    if (slot_built(k, x)) return;
    const int id = shape_index(k, x);
    const SlotShape& sh = shape_by_id(id);
    const int c = sh.children;
    const auto S = first_child(k, x);
    std::vector<int> g(sh.vertices);
    g[0] = vertex(k, x);
    for (int i = 0; i <= c; ++i) g[1 + i] = vertex(k + 1, S + i);
    const int base = vertex_count();
    for (int j = c + 2; j < sh.vertices; ++j) {
        g[j] = new_vertex(-1, x, k + sh.offset[j]);
        done_[g[j]] = 1;
    }
    slots_.emplace(key(k, x), SlotRec{id, base});

    auto rng = make_rng(seed_, 3, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(x));
    auto weight = [&] { return opt_.weights.is_unit() ? 1.0 : opt_.weights.draw(rng); };
    if (opt_.lattice_graph)
        for (auto [a, b] : sh.edges) add_edge(lat_, lat_head_, g[a], g[b], weight());
    if (k == 0 && opt_.top_edges) {
        int right = vertex(0, x + 1);
        if (opt_.lattice_graph) add_edge(lat_, lat_head_, g[0], right, weight());
        if (opt_.tutte_graph) add_edge(tut_, tut_head_, g[0], right, weight());
    }
    if (opt_.tutte_graph) {
        for (auto [a, b] : (k % 2 == 0 ? sh.diag_even : sh.diag_odd)) add_edge(tut_, tut_head_, g[a], g[b], weight());
        for (int i = 0; i < c; ++i) {
            if ((k + 1) % 2 == 0) {
                add_edge(tut_, tut_head_, g[1 + i], g[2 + i], weight());
            } else {
                int bottom = vertex(k + 2, first_child(k + 1, S + i + 1));
                add_edge(tut_, tut_head_, g[sh.child_apex[i]], bottom, weight());
            }
        }
    }
}

std::vector<std::pair<int, std::int64_t>> Lhpq::slots_around(int k, std::int64_t x) {
    std::vector<std::pair<int, std::int64_t>> out{{k, x}};
    if (k == 0 && opt_.top_edges) out.emplace_back(0, x - 1);
    if (k >= 1) {
        auto a = parent(k - 1, x - 1), b = parent(k - 1, x);
        for (auto p = a; p <= b; ++p) out.emplace_back(k - 1, p);
        if (opt_.tutte_graph && k >= 2 && a <= b - 1) {
            auto lo = parent(k - 2, a), hi = parent(k - 2, b - 1);
            for (auto p = lo; p <= hi; ++p) out.emplace_back(k - 2, p);
        }
    }
    return out;
}

void Lhpq::complete(int v) {
    if (done_[v]) return;
    const int k = level_[v];
    const auto x = pos_[v];
    for (auto [kk, xx] : slots_around(k, x)) build_slot(kk, xx);
    done_[v] = 1;
}

Lhpq::Search Lhpq::search(int source, int target_line, int target_vertex, Graph g) {
    if (g == Graph::Lattice && !opt_.lattice_graph) throw std::invalid_argument("lattice graph not kept");
    if (g == Graph::Tutte && !opt_.tutte_graph) throw std::invalid_argument("tutte graph not kept");
    const double scale = g == Graph::Tutte ? 0.5 : 1.0;
    auto h = [&](int v) {
        return target_line < 0 ? 0.0 : scale * std::max(0, target_line - depth_[v]);
    };
    std::vector<double> dist;
    auto at = [&](int v) -> double& {
        if (static_cast<int>(dist.size()) <= v) dist.resize(std::max<std::size_t>(2 * dist.size(), v + 1),
                                                            std::numeric_limits<double>::infinity());
        return dist[v];
    };
    using Item = std::tuple<double, double, int>;  // f, -g, v
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    Search out;
    at(source) = 0.0;
    pq.emplace(h(source), -0.0, source);
    while (!pq.empty()) {
        auto [f, ng, v] = pq.top();
        pq.pop();
        double gv = -ng;
        if (gv > at(v)) continue;
        if ((target_line >= 0 && level_[v] == target_line) || v == target_vertex) {
            out.distance = gv;
            out.hit = v;
            return out;
        }
        complete(v);
        ++out.settled;
        if (level_[v] >= 0) out.lateral = std::max<std::int64_t>(out.lateral, std::abs(pos_[v]));
        for_each_neighbour(v, g, [&](int w, double wt) {
            double nd = gv + wt;
            if (nd < at(w)) {
                at(w) = nd;
                pq.emplace(nd + h(w), -nd, w);
            }
        });
    }
    throw std::logic_error("search exhausted an infinite map");
}

Lhpq::Search Lhpq::distance_to_line(int source, int D, Graph g) {
    if (D < 0) throw std::invalid_argument("negative line");
    return search(source, D, -1, g);
}

Lhpq::Search Lhpq::distance_between(int source, int target, Graph g) { return search(source, -1, target, g); }

// ---- windows -----------------------------------------------------------------

LhpqWindow build_window(int W, int D, const LhpqOptions& opt, Rng& rng) {
    if (W < 1 || D < 1) throw std::invalid_argument("window needs W, D >= 1");
    LhpqOptions o = opt;
    o.lattice_graph = true;
    LhpqWindow w{Lhpq(rng(), std::move(o)), W, D, 0, {}, -1};
    auto& m = w.map;
    for (int k = 0; k < D; ++k)
        for (std::int64_t x = -W; x < W; ++x) m.build_slot(k, x);
    w.root = m.root();
    const int V = m.vertex_count();
    w.complete.assign(V, 1);
    std::vector<int> open;
    for (int v = 0; v < V; ++v) {
        int k = m.line(v);
        if (k < 0) continue;
        if (k >= D) {
            w.complete[v] = 0;
            continue;
        }
        for (auto [kk, xx] : m.slots_around(k, m.position(v)))
            if (!m.slot_built(kk, xx)) {
                w.complete[v] = 0;
                open.push_back(v);
                break;
            }
    }
    // BFS from the root over the built edges
    std::vector<int> d(V, -1);
    std::deque<int> q{w.root};
    d[w.root] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        m.for_each_neighbour(v, Lhpq::Graph::Lattice, [&](int u, double) {
            if (d[u] < 0) {
                d[u] = d[v] + 1;
                q.push_back(u);
            }
        });
    }
    int nearest = std::numeric_limits<int>::max();
    for (int v : open)
        if (d[v] >= 0) nearest = std::min(nearest, d[v]);
    w.margin = std::min(D, nearest == std::numeric_limits<int>::max() ? D : nearest - 1);
    if (w.margin < 1) throw WindowTooSmall("validity margin is empty; widen the window");
    return w;
}

// ---- blocks ------------------------------------------------------------------

std::vector<std::int64_t> cut_indices(Lhpq& m, int j, int jp, int count, std::int64_t limit) {
    if (!(0 >= j && j > jp)) throw std::invalid_argument("need 0 >= j > j'");
    const int k0 = -j, h = j - jp;
    std::vector<std::int64_t> xi;
    for (std::int64_t x = 0; x < limit && static_cast<int>(xi.size()) < count; ++x)
        if (m.reaches(k0, x, h)) xi.push_back(x);
    return xi;
}

BlockDecomposition block_decompose(LhpqWindow& w, int j, int jp, int max_blocks) {
    if (!(0 >= j && j > jp && jp >= -w.depth)) throw std::invalid_argument("need 0 >= j > j' >= -D");
    auto& m = w.map;
    const int k0 = -j, k1 = -jp, h = k1 - k0;
    BlockDecomposition bd;
    bd.top = j;
    bd.bottom = jp;
    auto xi = cut_indices(m, j, jp, max_blocks, w.half_width);
    if (xi.empty()) throw NoFullHeightTree("no tree reaches height " + std::to_string(h) + " inside the window");
    bd.xi.push_back(-1);
    bd.xi.insert(bd.xi.end(), xi.begin(), xi.end());
    for (std::size_t n = 1; n < bd.xi.size(); ++n) {
        Block b;
        b.left_top = bd.xi[n - 1] + 1;
        b.right_top = bd.xi[n] + 1;
        std::vector<std::int64_t> L(h + 1), R(h + 1);
        L[0] = b.left_top;
        R[0] = b.right_top;
        for (int t = 0; t < h; ++t) {
            L[t + 1] = m.first_child(k0 + t, L[t]);
            R[t + 1] = m.first_child(k0 + t, R[t]);
        }
        for (int t = 0; t <= h; ++t) {
            b.left.push_back(m.vertex(k0 + t, L[t]));
            b.right.push_back(m.vertex(k0 + t, R[t]));
        }
        for (int t = 0; t < h; ++t) {
            for (auto x = L[t]; x <= R[t]; ++x) {
                auto g = m.slot_vertices(k0 + t, x);
                const auto& sh = m.slot_shape(k0 + t, x);
                if (x == R[t]) {
                    auto [a, c] = sh.edges[sh.x_edge];
                    b.edges.emplace_back(g[a], g[c]);
                } else {
                    for (auto [a, c] : sh.edges) b.edges.emplace_back(g[a], g[c]);
                }
            }
        }
        for (auto x = L[0]; x < R[0]; ++x) b.edges.emplace_back(m.vertex(k0, x), m.vertex(k0, x + 1));
        for (auto x = L[h]; x < R[h]; ++x) b.edges.emplace_back(m.vertex(k1, x), m.vertex(k1, x + 1));

        std::unordered_map<int, int> loc;
        auto id = [&](int v) { return loc.try_emplace(v, static_cast<int>(loc.size())).first->second; };
        std::vector<std::pair<int, int>> le;
        for (auto [a, c] : b.edges) le.emplace_back(id(a), id(c));
        std::vector<int> src;
        for (int v : b.left) src.push_back(id(v));
        auto d = bfs_local(static_cast<int>(loc.size()), le, src);
        b.thickness = std::numeric_limits<int>::max();
        for (int v : b.right) b.thickness = std::min(b.thickness, d[id(v)]);
        bd.blocks.push_back(std::move(b));
    }
    return bd;
}

// ---- downward paths ------------------------------------------------------------

namespace {

template <typename Visit>
void walk_down(Lhpq& m, int levels, bool right, Visit&& visit) {
    if (levels < 0 || levels % 2) throw std::invalid_argument("downward path needs an even depth");
    std::int64_t x = 0;
    for (int k = 0; k < levels; k += 2) {
        const int dir = right ? 1 : -1;
        std::int64_t y = x + dir;
        while (!m.good(k, y)) y += dir;
        const std::int64_t next = m.first_child(k + 1, m.first_child(k, y) + 1);
        visit(k, x, y, next);
        x = next;
    }
}

}  // namespace

std::vector<int> lhpq_downward_increments(Lhpq& m, int levels, bool right) {
    std::vector<int> inc;
    walk_down(m, levels, right, [&](int, std::int64_t x, std::int64_t y, std::int64_t) {
        inc.push_back(static_cast<int>(std::abs(x - y)) + 1);
    });
    return inc;
}

std::vector<int> lhpq_downward_path(Lhpq& m, int levels, bool right) {
    std::vector<int> path{m.vertex(0, 0)};
    walk_down(m, levels, right, [&](int k, std::int64_t x, std::int64_t y, std::int64_t next) {
        const std::int64_t dir = y > x ? 1 : -1;
        for (auto z = x + dir;; z += dir) {
            path.push_back(m.vertex(k, z));
            if (z == y) break;
        }
        path.push_back(m.vertex(k + 2, next));
    });
    return path;
}

// ---- constants -------------------------------------------------------------------

namespace {

ConstantEstimate estimate(int D, int reps, const WeightSpec& w, std::uint64_t seed, LhpqOptions o, bool tutte) {
    if (reps < 1) throw std::invalid_argument("reps must be positive");
    o.weights = w;
    o.top_edges = tutte;
    o.lattice_graph = !tutte;
    o.tutte_graph = tutte;
    ConstantEstimate est;
    est.depth = D;
    est.reps = reps;
    for (int i = 0; i < reps; ++i) {
        Lhpq m(derive_seed(seed, static_cast<std::uint64_t>(i)), o);
        auto s = m.distance_to_line(m.root(), D, tutte ? Lhpq::Graph::Tutte : Lhpq::Graph::Lattice);
        est.samples.push_back(s.distance / D);
        est.margin = std::max(est.margin, s.lateral);
        est.fan_fallbacks += m.fan_fallbacks();
    }
    est.estimate = mean(est.samples);
    auto rng = make_rng(seed, 0xb007);
    auto ci = bootstrap_mean_ci(est.samples, 1000, 0.95, rng);
    est.ci_lo = ci.lo;
    est.ci_hi = ci.hi;
    return est;
}

}  // namespace

ConstantEstimate estimate_cp(int D, int reps, const WeightSpec& w, std::uint64_t seed, const LhpqOptions& base) {
    if (D < 10) throw std::invalid_argument("estimate_cp needs D >= 10");
    return estimate(D, reps, w, seed, base, false);
}

ConstantEstimate estimate_cT(int D, int reps, const WeightSpec& w, std::uint64_t seed, const LhpqOptions& base) {
    if (D < 2 || D % 2) throw std::invalid_argument("estimate_cT needs an even depth >= 2");
    return estimate(D, reps, w, seed, base, true);
}

}  // namespace mapfpp
