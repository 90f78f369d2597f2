#include "mapfpp/map_ops.hpp"

#include <stdexcept>

namespace mapfpp {

SubMap remove_edges(const RotationMap& m, const std::vector<char>& remove_edge, int root) {
    const int H = m.half_edge_count();
    const int V = m.vertex_count();
    if (static_cast<int>(remove_edge.size()) != m.edge_count()) throw std::invalid_argument("edge mask size mismatch");
    if (root < 0) root = m.root();

    SubMap out;
    out.dart_to_new.assign(H, -1);
    for (int h = 0; h < H; h += 2) {
        if (remove_edge[h >> 1]) continue;
        int e = static_cast<int>(out.dart_from_new.size()) / 2;
        out.dart_to_new[h] = 2 * e;
        out.dart_to_new[h + 1] = 2 * e + 1;
        out.dart_from_new.push_back(h);
        out.dart_from_new.push_back(h + 1);
    }
    if (out.dart_from_new.empty()) throw std::invalid_argument("submap would have no edges");
    if (out.dart_to_new[root] < 0) throw std::invalid_argument("root edge removed");

    out.vertex_to_new.assign(V, -1);
    for (int v = 0; v < V; ++v) {
        bool alive = false;
        for (int h : m.rotation(v))
            if (out.dart_to_new[h] >= 0) {
                alive = true;
                break;
            }
        if (alive) {
            out.vertex_to_new[v] = static_cast<int>(out.vertex_from_new.size());
            out.vertex_from_new.push_back(v);
        }
    }

    const int H2 = static_cast<int>(out.dart_from_new.size());
    std::vector<int> next(H2), origin(H2);
    for (int v : out.vertex_from_new) {
        auto rot = m.rotation(v);
        int first = -1, prev = -1;
        for (int h : rot) {
            int n = out.dart_to_new[h];
            if (n < 0) continue;
            origin[n] = out.vertex_to_new[v];
            if (prev >= 0) next[prev] = n;
            if (first < 0) first = n;
            prev = n;
        }
        next[prev] = first;
    }
    std::optional<int> marked;
    if (m.marked() && out.vertex_to_new[*m.marked()] >= 0) marked = out.vertex_to_new[*m.marked()];
    out.map = RotationMap::from_arrays(std::move(next), std::move(origin),
                                       static_cast<int>(out.vertex_from_new.size()), out.dart_to_new[root], marked);
    return out;
}

SubMap submap_from_faces(const RotationMap& m, const std::vector<char>& keep_face, int root) {
    if (static_cast<int>(keep_face.size()) != m.face_count()) throw std::invalid_argument("face mask size mismatch");
    std::vector<char> drop(m.edge_count(), 0);
    for (int e = 0; e < m.edge_count(); ++e)
        drop[e] = !keep_face[m.face_of(2 * e)] && !keep_face[m.face_of(2 * e + 1)];
    return remove_edges(m, drop, root);
}

RotationMap add_chords(const RotationMap& m, const std::vector<std::pair<int, int>>& corners, int root) {
    const int H = m.half_edge_count();
    const int H2 = H + 2 * static_cast<int>(corners.size());
    std::vector<int> next(H2), prev(H2), origin(H2);
    for (int h = 0; h < H; ++h) {
        next[h] = m.next_cw(h);
        prev[h] = m.prev_cw(h);
        origin[h] = m.origin(h);
    }
    auto insert_before = [&](int a, int g) {
        int p = prev[g];
        next[p] = a;
        prev[a] = p;
        next[a] = g;
        prev[g] = a;
        origin[a] = origin[g];
    };
    for (std::size_t i = 0; i < corners.size(); ++i) {
        int a = H + 2 * static_cast<int>(i);
        insert_before(a, corners[i].first);
        insert_before(a + 1, corners[i].second);
    }
    return RotationMap::from_arrays(std::move(next), std::move(origin), m.vertex_count(), root < 0 ? m.root() : root,
                                    m.marked());
}

}  // namespace mapfpp
