#include "mapfpp/cvs.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "mapfpp/canonical.hpp"
#include "mapfpp/distances.hpp"
#include "mapfpp/errors.hpp"

namespace mapfpp {

PointedQuadrangulation cvs_build(const LabeledPlaneTree& t, bool eps) {
    const int n = t.tree.edge_count();
    if (n < 1) throw std::invalid_argument("CVS needs a tree with at least one edge");
    t.validate();
    const int C = 2 * n;  // corners
    const auto contour = t.tree.contour();
    const std::int64_t zmin = t.min_label();
    std::int64_t zmax = zmin;
    std::vector<int> zc(C);
    for (int i = 0; i < C; ++i) {
        zmax = std::max(zmax, t.label[contour[i]]);
        zc[i] = static_cast<int>(t.label[contour[i]] - zmin);
    }

    // successor corner: next corner cyclically with label one less, -1 for the extra vertex
    std::vector<int> succ(C, -1);
    {
        std::vector<int> last(static_cast<std::size_t>(zmax - zmin) + 1, -1);
        for (int pass = 0; pass < 2; ++pass)
            for (int i = C - 1; i >= 0; --i) {
                if (pass == 1 && zc[i] > 0) succ[i] = last[zc[i] - 1];
                last[zc[i]] = i;
            }
    }

    // incoming arcs per corner, nearest source (backwards) first
    std::vector<int> in_start(C + 1, 0), in_list(C);
    for (int j = 0; j < C; ++j)
        if (succ[j] >= 0) ++in_start[succ[j] + 1];
    for (int i = 0; i < C; ++i) in_start[i + 1] += in_start[i];
    {
        std::vector<int> fill(in_start.begin(), in_start.end() - 1);
        for (int j = 0; j < C; ++j)
            if (succ[j] >= 0) in_list[fill[succ[j]]++] = j;
        for (int i = 0; i < C; ++i) {
            auto b = in_list.begin() + in_start[i], e = in_list.begin() + in_start[i + 1];
            auto mid = std::lower_bound(b, e, i);
            std::reverse(b, mid);
            std::reverse(mid, e);
        }
    }

    const int V = n + 2, sink = n + 1;
    std::vector<int> next(2 * C), origin(2 * C);
    std::vector<int> first(V, -1), last(V, -1);
    auto link = [&](int v, int h) {
        origin[h] = v;
        if (first[v] < 0)
            first[v] = h;
        else
            next[last[v]] = h;
        last[v] = h;
    };
    for (int i = 0; i < C; ++i) {
        const int v = contour[i];
        for (int k = in_start[i]; k < in_start[i + 1]; ++k) link(v, 2 * in_list[k] + 1);
        link(v, 2 * i);
    }
    for (int i = C - 1; i >= 0; --i)
        if (succ[i] < 0) link(sink, 2 * i + 1);
    for (int v = 0; v < V; ++v) {
        if (first[v] < 0) throw std::logic_error("CVS left a vertex without arcs");
        next[last[v]] = first[v];
    }

    PointedQuadrangulation q;
    q.map = RotationMap::from_arrays(std::move(next), std::move(origin), V, eps ? 0 : 1, sink);
    if (q.map.face_count() != n) throw std::logic_error("CVS produced " + std::to_string(q.map.face_count()) + " faces");
    for (int f = 0; f < n; ++f)
        if (q.map.face_degree(f) != 4) throw std::logic_error("CVS produced a face of degree != 4");
    q.label = t.label;
    q.label.push_back(zmin - 1);
    const std::int64_t zr = q.label[q.map.root_vertex()];
    q.white.resize(V);
    for (int v = 0; v < V; ++v) q.white[v] = ((q.label[v] - zr) % 2 == 0);
    return q;
}

PointedQuadrangulation sample_pointed_quadrangulation(int n, Rng& rng) {
    auto t = assign_labels(sample_uniform_tree(n, rng), rng);
    bool eps = (rng() & 1) != 0;
    return cvs_build(t, eps);
}

namespace {

void dyck_all(int open, int close, std::string& cur, std::vector<std::string>& out) {
    if (open == 0 && close == 0) {
        out.push_back(cur);
        return;
    }
    if (open > 0) {
        cur.push_back('(');
        dyck_all(open - 1, close + 1, cur, out);
        cur.pop_back();
    }
    if (close > 0) {
        cur.push_back(')');
        dyck_all(open, close - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

CvsCensus cvs_exhaustive(int n) {
    if (n < 1 || n > 4) throw std::invalid_argument("exhaustive CVS census supports 1 <= n <= 4");
    std::vector<std::string> words;
    std::string cur;
    dyck_all(n, 0, cur, words);
    int pow3 = 1;
    for (int i = 0; i < n; ++i) pow3 *= 3;

    CvsCensus out;
    std::set<std::vector<int>> pointed, rooted;
    for (const auto& w : words) {
        LabeledPlaneTree lt{PlaneTree::from_dyck(w), std::vector<std::int64_t>(n + 1, 0)};
        for (int code = 0; code < pow3; ++code) {
            int c = code;
            for (int v = 1; v <= n; ++v) {
                lt.label[v] = lt.label[lt.tree.parent(v)] + (c % 3) - 1;
                c /= 3;
            }
            for (int eps = 0; eps < 2; ++eps) {
                auto q = cvs_build(lt, eps == 1);
                pointed.insert(canonical_code(q.map, true));
                rooted.insert(canonical_code(q.map, false));
                out.pointed.push_back(std::move(q));
            }
        }
    }
    out.distinct_pointed = pointed.size();
    out.distinct_rooted = rooted.size();
    return out;
}

void check_quadrangulation(const RotationMap& m) {
    for (int f = 0; f < m.face_count(); ++f)
        if (m.face_degree(f) != 4) throw NotQuadrangulation("face " + std::to_string(f) + " has degree " +
                                                            std::to_string(m.face_degree(f)));
    white_coloring(m);
}

std::vector<char> white_coloring(const RotationMap& m) {
    Adjacency g(m);
    std::vector<int> d, q;
    int src = m.root_vertex();
    bfs(g, std::span<const int>(&src, 1), d, q);
    for (int h = 0; h < m.half_edge_count(); ++h)
        if ((d[m.origin(h)] - d[m.target(h)]) % 2 == 0) throw NotBipartite("map is not bipartite");
    std::vector<char> w(m.vertex_count());
    for (int v = 0; v < m.vertex_count(); ++v) w[v] = d[v] % 2 == 0;
    return w;
}

}  // namespace mapfpp
