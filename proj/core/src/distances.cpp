#include "mapfpp/distances.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

#include "mapfpp/errors.hpp"

namespace mapfpp {

WeightAssignment WeightAssignment::unit(int edge_count) {
    return WeightAssignment{std::vector<double>(edge_count, 1.0), 1.0};
}

void WeightAssignment::validate(int edge_count) const {
    if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw WeightOutOfRange("kappa must be a finite real >= 1");
    if (static_cast<int>(weight.size()) != edge_count)
        throw WeightOutOfRange("expected " + std::to_string(edge_count) + " weights, got " +
                               std::to_string(weight.size()));
    for (std::size_t e = 0; e < weight.size(); ++e)
        if (!(weight[e] >= 1.0 && weight[e] <= kappa))
            throw WeightOutOfRange("weight of edge " + std::to_string(e) + " outside [1, kappa]");
}

namespace {

double parse_real(const std::string& s, const std::string& spec) {
    try {
        std::size_t used = 0;
        double x = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad number '" + s + "' in weight spec '" + spec + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

}  // namespace

WeightSpec WeightSpec::parse(const std::string& text) {
    auto parts = split(text, ':');
    WeightSpec w;
    if (parts.size() == 1 && parts[0] == "unit") return w;
    if (parts.size() == 3 && parts[0] == "uniform") {
        w.kind = Kind::Uniform;
        w.lo = parse_real(parts[1], text);
        w.hi = parse_real(parts[2], text);
        if (!(w.lo >= 1.0 && w.hi >= w.lo && std::isfinite(w.hi)))
            throw ConfigError("uniform weights need 1 <= lo <= hi: '" + text + "'");
        return w;
    }
    if (parts.size() == 4 && parts[0] == "twopoint") {
        w.kind = Kind::TwoPoint;
        w.lo = parse_real(parts[1], text);
        w.hi = parse_real(parts[2], text);
        w.p = parse_real(parts[3], text);
        if (!(w.lo >= 1.0 && w.hi >= w.lo && std::isfinite(w.hi)))
            throw ConfigError("twopoint weights need 1 <= a <= b: '" + text + "'");
        if (!(w.p >= 0.0 && w.p <= 1.0)) throw ConfigError("twopoint probability outside [0,1]: '" + text + "'");
        return w;
    }
    throw ConfigError("unknown weight spec '" + text + "'");
}

std::string WeightSpec::to_string() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
        case Kind::Unit: os << "unit"; break;
        case Kind::Uniform: os << "uniform:" << lo << ':' << hi; break;
        case Kind::TwoPoint: os << "twopoint:" << lo << ':' << hi << ':' << p; break;
    }
    return os.str();
}

double WeightSpec::draw(Rng& rng) const {
    switch (kind) {
        case Kind::Unit: return 1.0;
        case Kind::Uniform: return std::min(hi, lo + (hi - lo) * uniform01(rng));
        case Kind::TwoPoint: return uniform01(rng) < p ? lo : hi;
    }
    return 1.0;
}

WeightAssignment WeightSpec::sample(int edge_count, Rng& rng) const {
    WeightAssignment w;
    w.kappa = std::max(1.0, hi);
    w.weight.resize(edge_count);
    for (auto& x : w.weight) x = draw(rng);
    return w;
}

Adjacency::Adjacency(const RotationMap& m) {
    const int V = m.vertex_count();
    start.resize(V + 1);
    nbr.resize(m.half_edge_count());
    edge.resize(m.half_edge_count());
    int pos = 0;
    for (int v = 0; v < V; ++v) {
        start[v] = pos;
        for (int h : m.rotation(v)) {
            nbr[pos] = m.target(h);
            edge[pos] = h >> 1;
            ++pos;
        }
    }
    start[V] = pos;
}

void bfs(const Adjacency& g, std::span<const int> sources, std::vector<int>& dist, std::vector<int>& queue) {
    if (sources.empty()) throw EmptySourceSet("graph distance needs at least one source");
    const int V = g.vertex_count();
    dist.assign(V, -1);
    queue.resize(V);
    int head = 0, tail = 0;
    for (int s : sources) {
        if (s < 0 || s >= V) throw std::out_of_range("source vertex out of range");
        if (dist[s] < 0) {
            dist[s] = 0;
            queue[tail++] = s;
        }
    }
    while (head < tail) {
        int v = queue[head++];
        int dv = dist[v] + 1;
        for (int i = g.start[v]; i < g.start[v + 1]; ++i) {
            int w = g.nbr[i];
            if (dist[w] < 0) {
                dist[w] = dv;
                queue[tail++] = w;
            }
        }
    }
}

void dijkstra(const Adjacency& g, std::span<const double> edge_weight, std::span<const int> sources,
              std::vector<double>& dist) {
    if (sources.empty()) throw EmptySourceSet("fpp distance needs at least one source");
    const int V = g.vertex_count();
    dist.assign(V, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (int s : sources) {
        if (s < 0 || s >= V) throw std::out_of_range("source vertex out of range");
        if (dist[s] != 0.0) {
            dist[s] = 0.0;
            pq.emplace(0.0, s);
        }
    }
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (int i = g.start[v]; i < g.start[v + 1]; ++i) {
            int w = g.nbr[i];
            double nd = d + edge_weight[g.edge[i]];
            if (nd < dist[w]) {
                dist[w] = nd;
                pq.emplace(nd, w);
            }
        }
    }
}

std::vector<std::int64_t> graph_distance(const RotationMap& m, std::span<const int> sources) {
    Adjacency g(m);
    std::vector<int> d, q;
    bfs(g, sources, d, q);
    return {d.begin(), d.end()};
}

std::vector<double> fpp_distance(const RotationMap& m, const WeightAssignment& w, std::span<const int> sources) {
    w.validate(m.edge_count());
    Adjacency g(m);
    std::vector<double> d;
    dijkstra(g, w.weight, sources, d);
    return d;
}

}  // namespace mapfpp
