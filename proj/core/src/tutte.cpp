#include "mapfpp/tutte.hpp"

#include <stdexcept>
#include <string>

#include "mapfpp/cvs.hpp"
#include "mapfpp/errors.hpp"

namespace mapfpp {

TutteImage tutte_general(const RotationMap& q, const std::vector<char>& white, TutteRoot conv) {
    const int H = q.half_edge_count();
    const int F = q.face_count();
    if (static_cast<int>(white.size()) != q.vertex_count()) throw std::invalid_argument("colouring size mismatch");

    // diag_at[g]: image half-edge sitting in the corner before g, -1 if none
    std::vector<int> diag_at(H, -1);
    TutteImage out;
    std::vector<int> diag_black;  // per image half-edge, diagonals only
    int ne = 0;
    for (int f = 0; f < F; ++f) {
        if (q.face_degree(f) != 4) continue;
        auto c = q.face(f);
        bool w0 = white[q.origin(c[0])], w1 = white[q.origin(c[1])];
        if (w0 == w1 || white[q.origin(c[2])] != w0 || white[q.origin(c[3])] != w1) continue;
        int a = w0 ? 0 : 1;
        diag_at[c[a]] = 2 * ne;
        diag_at[c[a + 2]] = 2 * ne + 1;
        diag_black.push_back(q.origin(c[(a + 3) % 4]));
        diag_black.push_back(q.origin(c[a + 1]));
        out.source_face.push_back(f);
        out.source_edge.push_back(-1);
        ++ne;
    }
    std::vector<int> kept_at(H, -1);
    for (int h = 0; h < H; h += 2) {
        if (white[q.origin(h)] && white[q.origin(h + 1)]) {
            kept_at[h] = 2 * ne;
            kept_at[h + 1] = 2 * ne + 1;
            out.source_face.push_back(-1);
            out.source_edge.push_back(h >> 1);
            diag_black.push_back(-1);
            diag_black.push_back(-1);
            ++ne;
        }
    }
    if (ne == 0) throw std::invalid_argument("image map would have no edges");

    std::vector<int> next(2 * ne, -1), origin(2 * ne, -1);
    out.q_to_vertex.assign(q.vertex_count(), -1);
    for (int w = 0; w < q.vertex_count(); ++w) {
        if (!white[w]) continue;
        int first = -1, last = -1;
        auto push = [&](int d) {
            if (first < 0)
                first = d;
            else
                next[last] = d;
            last = d;
        };
        for (int g : q.rotation(w)) {
            if (diag_at[g] >= 0) push(diag_at[g]);
            if (kept_at[g] >= 0) push(kept_at[g]);
        }
        if (first < 0) continue;
        next[last] = first;
        int id = static_cast<int>(out.vertex_to_q.size());
        out.q_to_vertex[w] = id;
        out.vertex_to_q.push_back(w);
        for (int d = first;;) {
            origin[d] = id;
            d = next[d];
            if (d == first) break;
        }
    }

    const int r = q.root();
    int root = -1;
    if (kept_at[r] >= 0) {
        root = kept_at[r];
    } else {
        int right = diag_at[q.next_cw(r)], left = diag_at[r];
        if (conv == TutteRoot::RightFace)
            root = right >= 0 ? right : left;
        else
            root = left >= 0 ? left : right;
    }
    if (root < 0) throw std::invalid_argument("no image edge next to the root edge");

    out.map = RotationMap::from_arrays(std::move(next), std::move(origin), static_cast<int>(out.vertex_to_q.size()),
                                       root);
    out.left_black = std::move(diag_black);
    return out;
}

TutteImage tutte_forward(const RotationMap& q, TutteRoot conv) {
    for (int f = 0; f < q.face_count(); ++f)
        if (q.face_degree(f) != 4) throw NotQuadrangulation("face " + std::to_string(f) + " has degree " +
                                                            std::to_string(q.face_degree(f)));
    return tutte_general(q, white_coloring(q), conv);
}

RotationMap tutte_inverse(const RotationMap& m, TutteRoot conv) {
    const int H = m.half_edge_count();
    const int V = m.vertex_count();
    // image edge per corner of m: half-edge 2g at origin(g), 2g+1 at the face vertex
    std::vector<int> next(2 * H), origin(2 * H);
    for (int g = 0; g < H; ++g) {
        next[2 * g] = 2 * m.next_cw(g);
        origin[2 * g] = m.origin(g);
    }
    for (int f = 0; f < m.face_count(); ++f) {
        auto c = m.face(f);
        const int d = static_cast<int>(c.size());
        for (int i = 0; i < d; ++i) {
            next[2 * c[i] + 1] = 2 * c[(i + d - 1) % d] + 1;
            origin[2 * c[i] + 1] = V + f;
        }
    }
    const int root = conv == TutteRoot::RightFace ? 2 * m.root() : 2 * m.next_cw(m.root());
    return RotationMap::from_arrays(std::move(next), std::move(origin), V + m.face_count(), root);
}

TutteImage tutte_truncated(const RotationMap& q, const std::vector<std::int64_t>& level, int radius, TutteRoot conv) {
    if (radius % 2 != 0) throw OddRadius("truncated Tutte image needs an even radius, got " + std::to_string(radius));
    if (static_cast<int>(level.size()) != q.vertex_count()) throw std::invalid_argument("level size mismatch");
    std::vector<char> white(q.vertex_count());
    for (int v = 0; v < q.vertex_count(); ++v) white[v] = (level[v] % 2 == 0);
    return tutte_general(q, white, conv);
}

}  // namespace mapfpp
