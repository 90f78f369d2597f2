#include "mapfpp/skeleton.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mapfpp/canonical.hpp"
#include "mapfpp/errors.hpp"
#include "mapfpp/pmap_io.hpp"

namespace mapfpp {

// ---- truncated quadrangulations ---------------------------------------------

void TruncatedQuadrangulation::validate() const {
    auto fail = [](const std::string& why) { throw std::invalid_argument("truncated quadrangulation: " + why); };
    const int ext = external_face();
    if (map.face_degree(ext) != perimeter) fail("perimeter does not match the external face");
    std::vector<int> vs;
    std::vector<char> used(map.face_count(), 0);
    used[ext] = 1;
    for (int h : map.face(ext)) {
        vs.push_back(map.origin(h));
        int f = map.face_of(twin(h));
        if (used[f] || map.face_degree(f) != 3) fail("boundary edge without its own triangle");
        used[f] = 1;
    }
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) fail("boundary is not simple");
    for (int f = 0; f < map.face_count(); ++f)
        if (!used[f] && map.face_degree(f) != 4) fail("inner face of degree " + std::to_string(map.face_degree(f)));
}

TruncatedQuadrangulation fan_slot(int c) {
    if (c < 0) throw std::invalid_argument("negative child count");
    std::vector<int> phi;
    if (c == 0) {
        // loop 0/1, pendant edge 2 (apex -> base) / 3
        phi = {3, 1, 0, 2};
    } else {
        const int H = 2 * (2 * c + 2);
        phi.assign(H, -1);
        auto sp = [](int i) { return 2 + 2 * i; };
        auto ch = [c](int i) { return 2 * (c + 2 + i); };
        for (int i = 0; i < c; ++i) {
            phi[sp(i)] = ch(i);
            phi[ch(i)] = twin(sp(i + 1));
            phi[twin(sp(i + 1))] = sp(i);
        }
        phi[0] = twin(sp(0));
        phi[twin(sp(0))] = sp(c);
        phi[sp(c)] = 0;
        phi[1] = twin(ch(c - 1));
        for (int i = c - 1; i >= 1; --i) phi[twin(ch(i))] = twin(ch(i - 1));
        phi[twin(ch(0))] = 1;
    }
    return {RotationMap::from_face_permutation(phi, 0), c + 1};
}

SlotFrame slot_frame(const TruncatedQuadrangulation& s) {
    const auto& m = s.map;
    const int r = m.root();
    SlotFrame f;
    int t = m.face_next(r);
    f.x = twin(t);
    f.y = m.face_next(t);
    if (m.face_next(f.y) != r) throw std::invalid_argument("slot root face is not a triangle");
    std::vector<int> ext;
    for (int d = m.face_next(twin(r)); d != twin(r); d = m.face_next(d)) ext.push_back(d);
    for (auto it = ext.rbegin(); it != ext.rend(); ++it) f.children.push_back(twin(*it));
    return f;
}

bool is_good_slot(const TruncatedQuadrangulation& s) {
    static const std::vector<int> code = canonical_code(fan_slot(1).map, false);
    return s.perimeter == 2 && s.map.half_edge_count() == static_cast<int>(fan_slot(1).map.half_edge_count()) &&
           canonical_code(s.map, false) == code;
}

// ---- forests ---------------------------------------------------------------

int SkeletonForest::generation_size(int j) const {
    if (j == 0) return offspring.empty() ? 0 : static_cast<int>(offspring[0].size());
    const auto& g = offspring.at(j - 1);
    return std::accumulate(g.begin(), g.end(), 0);
}

std::vector<std::vector<int>> SkeletonForest::tree_index() const {
    std::vector<std::vector<int>> idx(height + 1);
    idx[0].resize(top_size());
    std::iota(idx[0].begin(), idx[0].end(), 0);
    for (int j = 0; j < height; ++j)
        for (std::size_t i = 0; i < offspring[j].size(); ++i)
            idx[j + 1].insert(idx[j + 1].end(), offspring[j][i], idx[j][i]);
    return idx;
}

std::vector<PlaneTree> SkeletonForest::trees() const {
    // first child index of every vertex
    std::vector<std::vector<int>> first(height);
    for (int j = 0; j < height; ++j) {
        first[j].resize(offspring[j].size());
        int acc = 0;
        for (std::size_t i = 0; i < offspring[j].size(); ++i) {
            first[j][i] = acc;
            acc += offspring[j][i];
        }
    }
    std::vector<PlaneTree> out;
    std::string word;
    std::function<void(int, int)> emit = [&](int j, int i) {
        if (j == height) return;
        for (int t = 0; t < offspring[j][i]; ++t) {
            word.push_back('(');
            emit(j + 1, first[j][i] + t);
            word.push_back(')');
        }
    };
    for (int i = 0; i < top_size(); ++i) {
        word.clear();
        emit(0, i);
        out.push_back(PlaneTree::from_dyck(word));
    }
    return out;
}

void SkeletonForest::validate() const {
    if (height < 1) throw std::invalid_argument("forest height must be positive");
    if (static_cast<int>(offspring.size()) != height || static_cast<int>(slots.size()) != height)
        throw std::invalid_argument("forest generations do not match its height");
    if (top_size() < 1) throw std::invalid_argument("forest has no tree");
    for (int j = 0; j < height; ++j) {
        if (j > 0 && static_cast<int>(offspring[j].size()) != generation_size(j))
            throw std::invalid_argument("generation sizes inconsistent");
        if (slots[j].size() != offspring[j].size()) throw PerimeterMismatch("slot count differs from generation size");
        for (std::size_t i = 0; i < offspring[j].size(); ++i) {
            if (offspring[j][i] < 0) throw std::invalid_argument("negative offspring");
            if (slots[j][i].perimeter != offspring[j][i] + 1 ||
                slots[j][i].map.face_degree(slots[j][i].external_face()) != offspring[j][i] + 1)
                throw PerimeterMismatch("slot at generation " + std::to_string(j) + " index " + std::to_string(i) +
                                        " has perimeter " + std::to_string(slots[j][i].perimeter) + ", needs " +
                                        std::to_string(offspring[j][i] + 1));
        }
    }
    if (bottom_size() < 1) throw std::invalid_argument("forest does not reach full height");
    if (marked < 0 || marked >= bottom_size()) throw std::invalid_argument("marked vertex out of range");
    if (tree_index()[height][marked] != 0) throw std::invalid_argument("marked vertex must lie in the first tree");
}

std::string SkeletonForest::to_text() const {
    std::ostringstream os;
    os << "SKELETON 1\nheight " << height << "\nmarked " << marked << "\ntrees " << top_size() << '\n';
    for (const auto& t : trees()) os << "tree " << t.to_dyck() << '\n';
    for (int j = 0; j < height; ++j)
        for (std::size_t i = 0; i < slots[j].size(); ++i) {
            const auto& s = slots[j][i];
            if (s.perimeter == 1 && s.map.edge_count() == 2) {
                os << "slot " << j << ' ' << i << " atom\n";
            } else {
                os << "slot " << j << ' ' << i << '\n';
                write_pmap(os, s.map);
                os << '\n';
            }
        }
    return os.str();
}

SkeletonForest SkeletonForest::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line, key;
    auto expect = [&](const char* name) {
        if (!std::getline(is, line)) throw FormatError(std::string("missing ") + name);
        std::istringstream ls(line);
        long long v;
        if (!(ls >> key >> v) || key != name) throw FormatError(std::string("expected ") + name);
        return v;
    };
    if (!std::getline(is, line) || line != "SKELETON 1") throw FormatError("missing SKELETON 1 header");
    SkeletonForest f;
    f.height = static_cast<int>(expect("height"));
    f.marked = static_cast<int>(expect("marked"));
    const auto q = expect("trees");
    if (f.height < 1 || q < 1) throw FormatError("bad forest dimensions");
    f.offspring.assign(f.height, {});
    f.slots.assign(f.height, {});
    for (long long t = 0; t < q; ++t) {
        if (!std::getline(is, line) || line.rfind("tree", 0) != 0) throw FormatError("expected tree line");
        auto tree = PlaneTree::from_dyck(line.substr(4));
        if (tree.height() > f.height) throw FormatError("tree taller than the forest");
        for (int j = 0; j < f.height; ++j)
            for (int v = 0; v < tree.vertex_count(); ++v)
                if (tree.depth(v) == j) f.offspring[j].push_back(tree.child_count(v));
    }
    for (int j = 0; j < f.height; ++j) f.slots[j].resize(f.offspring[j].size());
    std::vector<std::vector<char>> have(f.height);
    for (int j = 0; j < f.height; ++j) have[j].assign(f.offspring[j].size(), 0);
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int j = -1, i = -1;
        std::string tag;
        if (!(ls >> key >> j >> i) || key != "slot") throw FormatError("expected slot line");
        if (j < 0 || j >= f.height || i < 0 || i >= static_cast<int>(f.slots[j].size()))
            throw FormatError("slot index out of range");
        if (ls >> tag) {
            if (tag != "atom") throw FormatError("unknown slot tag " + tag);
            f.slots[j][i] = fan_slot(0);
        } else {
            auto doc = read_pmap(is);
            auto& s = f.slots[j][i];
            s.map = std::move(doc.map);
            s.perimeter = s.map.face_degree(s.external_face());
        }
        have[j][i] = 1;
    }
    for (int j = 0; j < f.height; ++j)
        for (char h : have[j])
            if (!h) throw FormatError("missing slot");
    f.validate();
    return f;
}

SkeletonForest forest_with_fans(int height, std::vector<std::vector<int>> offspring, int marked) {
    SkeletonForest f;
    f.height = height;
    f.offspring = std::move(offspring);
    f.marked = marked;
    f.slots.resize(f.offspring.size());
    for (std::size_t j = 0; j < f.offspring.size(); ++j)
        for (int c : f.offspring[j]) f.slots[j].push_back(fan_slot(c));
    f.validate();
    return f;
}

// ---- decomposition ---------------------------------------------------------

namespace {

// Slot content bounded by x, the children and twin(y), closed by a new
// root edge over the apex.
TruncatedQuadrangulation extract_slot(const RotationMap& A, int x, int y, const std::vector<int>& children,
                                      const std::vector<int>& faces, std::vector<int>& local) {
    std::vector<int> touched;
    int next = 2;
    auto loc = [&](int d) {
        if (local[d] < 0) {
            int e = d & ~1;
            local[e] = next;
            local[e + 1] = next + 1;
            next += 2;
            touched.push_back(e);
        }
        return local[d];
    };
    std::vector<std::pair<int, int>> arrows;
    for (int f : faces)
        for (int d : A.face(f)) arrows.emplace_back(loc(d), loc(A.face_next(d)));
    arrows.emplace_back(0, loc(twin(x)));
    arrows.emplace_back(loc(twin(x)), loc(y));
    arrows.emplace_back(loc(y), 0);
    if (children.empty()) {
        arrows.emplace_back(1, 1);
    } else {
        arrows.emplace_back(1, loc(twin(children.back())));
        for (std::size_t i = children.size() - 1; i >= 1; --i)
            arrows.emplace_back(loc(twin(children[i])), loc(twin(children[i - 1])));
        arrows.emplace_back(loc(twin(children.front())), 1);
    }
    std::vector<int> phi(next, -1);
    for (auto [a, b] : arrows) {
        if (phi[a] >= 0) throw std::logic_error("slot half-edge used twice");
        phi[a] = b;
    }
    for (int e : touched) local[e] = local[e + 1] = -1;
    if (std::find(phi.begin(), phi.end(), -1) != phi.end()) throw std::logic_error("slot is not closed");
    return {RotationMap::from_face_permutation(phi, 0), static_cast<int>(children.size()) + 1};
}

}  // namespace

Skeleton skeleton_analyze(const CylinderQuad& c) {
    c.validate();
    const int R = c.height;
    const auto& m = c.map;
    const int H = m.half_edge_count();

    std::vector<std::vector<int>> raw(R + 1);
    raw[R] = c.top;
    raw[0] = c.bottom;
    std::vector<std::pair<int, int>> corners;
    for (int k = 1; k < R; ++k) {
        auto cyc = diagonal_cycle(m, c.level, c.top.front(), k);
        for (auto cr : cyc.corners) {
            raw[k].push_back(H + 2 * static_cast<int>(corners.size()));
            corners.push_back(cr);
        }
    }
    Skeleton s;
    s.cylinder = c;
    s.augmented = add_chords(m, corners, m.root());
    const auto& A = s.augmented;
    const int V = A.vertex_count(), H2 = A.half_edge_count(), F = A.face_count();

    s.vertex_level.assign(V, -1);
    s.out_dart.assign(V, -1);
    s.position.assign(H2, -1);
    std::vector<int> level_of(H2, -1), raw_pos(H2, -1);
    for (int k = 0; k <= R; ++k)
        for (std::size_t i = 0; i < raw[k].size(); ++i) {
            int d = raw[k][i], v = A.origin(d);
            if (s.vertex_level[v] >= 0) throw std::logic_error("vertex on two cycles");
            s.vertex_level[v] = k;
            s.out_dart[v] = d;
            level_of[d] = k;
            raw_pos[d] = static_cast<int>(i);
        }

    // downward triangles
    std::vector<char> fixed(F, 0);
    fixed[A.face_of(c.top.front())] = 1;
    fixed[A.face_of(twin(c.bottom.front()))] = 1;
    std::vector<std::vector<int>> third_raw(R + 1);
    for (int k = 1; k <= R; ++k)
        for (int d : raw[k]) {
            int f = A.face_of(twin(d));
            int s1 = A.face_next(twin(d));
            int w = A.target(s1);
            if (A.face_degree(f) != 3 || s.vertex_level[w] != k - 1)
                throw std::logic_error("cycle edge without a downward triangle");
            fixed[f] = 1;
            third_raw[k].push_back(w);
        }

    // slot regions
    std::vector<int> comp(F, -1);
    std::vector<std::vector<int>> comp_faces;
    for (int f0 = 0; f0 < F; ++f0) {
        if (fixed[f0] || comp[f0] >= 0) continue;
        int id = static_cast<int>(comp_faces.size());
        comp_faces.emplace_back();
        std::vector<int> stack{f0};
        comp[f0] = id;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            comp_faces[id].push_back(f);
            for (int h : A.face(f)) {
                int g = A.face_of(twin(h));
                if (!fixed[g] && comp[g] < 0) {
                    comp[g] = id;
                    stack.push_back(g);
                }
            }
        }
    }

    std::vector<std::vector<std::vector<int>>> kids(R + 1);
    std::vector<std::vector<TruncatedQuadrangulation>> slot_raw(R + 1);
    std::vector<int> parent(H2, -1);
    std::vector<int> local(H2, -1);
    for (int k = 1; k <= R; ++k) {
        const int n = static_cast<int>(raw[k].size());
        kids[k].resize(n);
        slot_raw[k].resize(n);
        for (int i = 0; i < n; ++i) {
            int e = raw[k][i], prev = raw[k][(i + n - 1) % n];
            int x = twin(A.face_prev(twin(prev)));
            int y = A.face_next(twin(e));
            auto& ch = kids[k][i];
            const std::vector<int>* faces = nullptr;
            static const std::vector<int> none;
            if (x == y) {
                faces = &none;
            } else {
                int region = comp[A.face_of(x)];
                if (region < 0 || comp[A.face_of(twin(y))] != region) throw std::logic_error("slot sides disagree");
                faces = &comp_faces[region];
                int d = x, guard = 0;
                while (true) {
                    int g = A.face_next(d);
                    while (comp[A.face_of(twin(g))] == region) g = A.face_next(twin(g));
                    d = g;
                    if (d == twin(y)) break;
                    if (level_of[d] != k - 1) throw std::logic_error("slot boundary leaves the lower cycle");
                    ch.push_back(d);
                    parent[d] = e;
                    if (++guard > H2) throw std::logic_error("slot boundary walk does not close");
                }
            }
            slot_raw[k][i] = extract_slot(A, x, y, ch, *faces, local);
        }
    }

    // forest order: start with the tree above the root edge
    int top = c.bottom.front();
    for (int k = 0; k < R; ++k) top = parent[top];
    if (top < 0) throw std::logic_error("root edge has no ancestor on the top cycle");
    s.cycle.assign(R + 1, {});
    s.first_child.assign(R + 1, {});
    s.third.assign(R + 1, {});
    s.cycle[R] = raw[R];
    std::rotate(s.cycle[R].begin(), s.cycle[R].begin() + raw_pos[top], s.cycle[R].end());
    auto& fo = s.forest;
    fo.height = R;
    fo.offspring.assign(R, {});
    fo.slots.assign(R, {});
    for (int k = R; k >= 1; --k) {
        for (int d : s.cycle[k]) {
            int i = raw_pos[d];
            s.first_child[k].push_back(static_cast<int>(s.cycle[k - 1].size()));
            s.cycle[k - 1].insert(s.cycle[k - 1].end(), kids[k][i].begin(), kids[k][i].end());
            s.third[k].push_back(third_raw[k][i]);
            fo.offspring[R - k].push_back(static_cast<int>(kids[k][i].size()));
            fo.slots[R - k].push_back(std::move(slot_raw[k][i]));
        }
        if (s.cycle[k - 1].size() != raw[k - 1].size()) throw std::logic_error("genealogy misses cycle edges");
    }
    for (int k = 0; k <= R; ++k)
        for (std::size_t i = 0; i < s.cycle[k].size(); ++i) s.position[s.cycle[k][i]] = static_cast<int>(i);
    fo.marked = s.position[c.bottom.front()];
    return s;
}

SkeletonForest skeleton_decompose(const CylinderQuad& c) { return skeleton_analyze(c).forest; }

CylinderQuad skeleton_rebuild(const SkeletonForest& f) {
    f.validate();
    const int R = f.height;
    std::vector<int> phi;
    auto alloc = [&] {
        int d = static_cast<int>(phi.size());
        phi.resize(d + 2, -1);
        return d;
    };
    auto set = [&](int a, int b) {
        if (phi[a] >= 0) throw std::logic_error("half-edge glued twice");
        phi[a] = b;
    };
    std::vector<std::vector<int>> cyc(R + 1), s1(R), s2(R);
    std::vector<std::vector<SlotFrame>> frame(R);
    for (int j = 0; j <= R; ++j)
        for (int i = 0; i < f.generation_size(j); ++i) cyc[j].push_back(alloc());
    for (int j = 0; j < R; ++j) {
        const int n = static_cast<int>(cyc[j].size());
        for (int i = 0; i < n; ++i) {
            s2[j].push_back(alloc());
            frame[j].push_back(slot_frame(f.slots[j][i]));
            if (static_cast<int>(frame[j][i].children.size()) != f.offspring[j][i])
                throw PerimeterMismatch("slot boundary does not match its offspring count");
        }
        for (int i = 0; i < n; ++i) s1[j].push_back(frame[j][i].atom() ? twin(s2[j][(i + n - 1) % n]) : alloc());
    }
    const int q = static_cast<int>(cyc[0].size()), p = static_cast<int>(cyc[R].size());
    for (int i = 0; i < q; ++i) set(cyc[0][i], cyc[0][(i + 1) % q]);
    for (int i = 0; i < p; ++i) set(twin(cyc[R][(i + 1) % p]), twin(cyc[R][i]));
    for (int j = 0; j < R; ++j)
        for (std::size_t i = 0; i < cyc[j].size(); ++i) {
            set(twin(cyc[j][i]), s1[j][i]);
            set(s1[j][i], s2[j][i]);
            set(s2[j][i], twin(cyc[j][i]));
        }
    for (int j = 0; j < R; ++j) {
        const int n = static_cast<int>(cyc[j].size());
        int first = 0;
        for (int i = 0; i < n; ++i) {
            const auto& fr = frame[j][i];
            const auto& S = f.slots[j][i].map;
            const int c = f.offspring[j][i];
            if (!fr.atom()) {
                std::vector<int> lmap(S.half_edge_count(), -1);
                std::vector<char> region(S.half_edge_count(), 1);
                for (int d : S.face(S.face_of(S.root()))) region[d] = 0;
                for (int d : S.face(f.slots[j][i].external_face())) region[d] = 0;
                lmap[fr.x] = twin(s2[j][(i + n - 1) % n]);
                lmap[twin(fr.y)] = twin(s1[j][i]);
                for (int t = 0; t < c; ++t) lmap[fr.children[t]] = cyc[j + 1][first + t];
                for (int d = 0; d < S.half_edge_count(); ++d) {
                    if (!region[d] || lmap[d] >= 0) continue;
                    if (!region[twin(d)]) throw std::invalid_argument("slot boundary is malformed");
                    int a = alloc();
                    lmap[d & ~1] = a;
                    lmap[d | 1] = a + 1;
                }
                for (int d = 0; d < S.half_edge_count(); ++d)
                    if (region[d]) set(lmap[d], lmap[S.face_next(d)]);
            }
            first += c;
        }
    }
    if (std::find(phi.begin(), phi.end(), -1) != phi.end()) throw std::logic_error("rebuilt map is not closed");
    const int root = cyc[R][f.marked];
    auto A = RotationMap::from_face_permutation(phi, root);
    std::vector<char> drop(A.edge_count(), 0);
    for (int j = 1; j < R; ++j)
        for (int d : cyc[j]) drop[d >> 1] = 1;
    auto sub = remove_edges(A, drop, root);
    int tf = sub.map.face_of(sub.dart_to_new[cyc[0][0]]);
    int bf = sub.map.face_of(sub.dart_to_new[twin(cyc[R][0])]);
    return CylinderQuad::from_faces(std::move(sub.map), tf, bf);
}

// ---- paths -----------------------------------------------------------------

bool Skeleton::good(int k, int i) const { return children(k, i) == 1 && is_good_slot(slot(k, i)); }

int Skeleton::leftmost_step(int v) const {
    int k = vertex_level.at(v);
    if (k < 1) throw std::invalid_argument("vertex is not above the bottom cycle");
    const auto& cy = cycle[k];
    const int n = static_cast<int>(cy.size());
    int prev = cy[(position[out_dart[v]] + n - 1) % n];
    return twin(augmented.face_prev(twin(prev)));
}

std::vector<int> leftmost_geodesic(const Skeleton& s, int v) {
    const auto& A = s.augmented;
    int k = s.vertex_level.at(v);
    if (k < 0) throw std::invalid_argument("vertex is not on a cycle");
    std::vector<int> path{v};
    while (k > 0) {
        const int e = s.out_dart[v];
        int last = -1;
        for (int h = e;;) {
            if (s.vertex_level[A.target(h)] == k - 1) last = h;
            h = A.next_cw(h);
            if (h == e) break;
        }
        if (last < 0) throw std::logic_error("no edge down to the next cycle");
        v = A.target(last);
        path.push_back(v);
        --k;
    }
    return path;
}

std::optional<std::vector<int>> downward_path(const Skeleton& s, int v, int target, bool right) {
    const int R = s.height();
    if (R % 2 != 0) throw std::invalid_argument("downward paths need an even height");
    if (target < 0 || target > R || target % 2 != 0) throw std::invalid_argument("target level must be even");
    if (s.vertex_level.at(v) != R) throw std::invalid_argument("downward paths start on the top cycle");
    std::vector<int> path{v};
    int k = R;
    while (k > target) {
        const auto& cy = s.cycle[k];
        const int n = static_cast<int>(cy.size());
        const int i0 = s.position[s.out_dart[v]];
        int found = -1;
        for (int step = 1; step <= n; ++step) {
            int i = right ? (i0 + step) % n : (i0 - step % n + n) % n;
            path.push_back(s.augmented.origin(cy[i]));
            if (s.good(k, i)) {
                found = i;
                break;
            }
        }
        if (found < 0) return std::nullopt;
        int child = s.first_child[k][found];
        v = s.third[k - 1][child];
        path.push_back(v);
        k -= 2;
    }
    return path;
}

}  // namespace mapfpp
