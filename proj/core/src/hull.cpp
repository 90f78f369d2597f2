#include "mapfpp/hull.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "mapfpp/distances.hpp"
#include "mapfpp/errors.hpp"

namespace mapfpp {

namespace {

// faces of sub.map that contain no dart of a kept source face
int find_outer_face(const RotationMap& m, const SubMap& sub, const std::vector<char>& keep) {
    std::vector<char> inner(sub.map.face_count(), 0);
    for (int h = 0; h < m.half_edge_count(); ++h)
        if (keep[m.face_of(h)] && sub.dart_to_new[h] >= 0) inner[sub.map.face_of(sub.dart_to_new[h])] = 1;
    int outer = -1;
    for (int f = 0; f < sub.map.face_count(); ++f) {
        if (inner[f]) continue;
        if (outer >= 0) return -1;
        outer = f;
    }
    return outer;
}

Region make_region(const RotationMap& q, std::vector<char> keep) {
    Region out;
    out.sub = submap_from_faces(q, keep);
    out.outer_face = find_outer_face(q, out.sub, keep);
    out.face_in = std::move(keep);
    return out;
}

std::vector<char> ball_faces(const RotationMap& q, const Labels& lab, std::int64_t k) {
    std::vector<char> keep(q.face_count(), 0);
    for (int f = 0; f < q.face_count(); ++f)
        for (int h : q.face(f))
            if (lab[q.origin(h)] <= k - 1) {
                keep[f] = 1;
                break;
            }
    return keep;
}

}  // namespace

Labels root_distances(const RotationMap& q) {
    int src = q.root_vertex();
    return graph_distance(q, std::span<const int>(&src, 1));
}

Region ball(const RotationMap& q, double r) {
    if (!(r >= 1)) throw std::invalid_argument("ball radius must be at least 1");
    auto lab = root_distances(q);
    return make_region(q, ball_faces(q, lab, static_cast<std::int64_t>(std::floor(r))));
}

Region hull(const RotationMap& q, int target, int r) {
    auto lab = root_distances(q);
    if (target < 0 || target >= q.vertex_count()) throw std::out_of_range("target vertex out of range");
    if (r < 1 || r > lab[target] - 2)
        throw RadiusTooLarge("hull radius " + std::to_string(r) + " needs 1 <= r <= " + std::to_string(lab[target] - 2));
    auto keep = ball_faces(q, lab, r);
    // the complement component holding the target is the only one removed
    std::vector<char> seen(q.face_count(), 0);
    std::deque<int> queue;
    int f0 = q.face_of(q.rotation(target)[0]);
    seen[f0] = 1;
    queue.push_back(f0);
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop_front();
        for (int h : q.face(f)) {
            int g = q.face_of(twin(h));
            if (!keep[g] && !seen[g]) {
                seen[g] = 1;
                queue.push_back(g);
            }
        }
    }
    for (int f = 0; f < q.face_count(); ++f) keep[f] = !seen[f];
    return make_region(q, std::move(keep));
}

DiagonalCycle diagonal_cycle(const RotationMap& m, const Labels& level, int far_dart, int r) {
    const int F = m.face_count();
    std::vector<int> split(F, -1);
    std::vector<std::int64_t> fmin(F);
    for (int f = 0; f < F; ++f) {
        auto c = m.face(f);
        std::int64_t lo = level[m.origin(c[0])];
        for (int h : c) lo = std::min(lo, level[m.origin(h)]);
        fmin[f] = lo;
        if (c.size() != 4 || lo != r - 1) continue;
        for (int a = 0; a < 4; ++a)
            if (level[m.origin(c[a])] == r - 1 && level[m.origin(c[(a + 1) % 4])] == r &&
                level[m.origin(c[(a + 2) % 4])] == r + 1 && level[m.origin(c[(a + 3) % 4])] == r)
                split[f] = a;
    }
    // pieces: face f (whole face or the lower triangle), F + f (upper triangle)
    auto piece_of = [&](int h) {
        int f = m.face_of(h);
        if (split[f] < 0) return f;
        auto c = m.face(f);
        int i = static_cast<int>(std::find(c.begin(), c.end(), h) - c.begin());
        int d = (i - split[f] + 4) % 4;
        return d == 1 || d == 2 ? F + f : f;
    };
    auto upper = [&](int p) { return p >= F || (split[p] < 0 && fmin[p] >= r); };

    int start = piece_of(far_dart);
    if (!upper(start)) throw NoCycle("far side does not lie above level " + std::to_string(r));
    std::vector<char> seen(2 * F, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    DiagonalCycle out;
    out.level = r;
    out.far.assign(F, 0);
    std::vector<int> found;
    while (!stack.empty()) {
        int p = stack.back();
        stack.pop_back();
        auto visit = [&](int h) {
            int p2 = piece_of(twin(h));
            if (!seen[p2] && upper(p2)) {
                seen[p2] = 1;
                stack.push_back(p2);
            }
        };
        if (p >= F) {
            int f = p - F;
            found.push_back(f);
            auto c = m.face(f);
            visit(c[(split[f] + 1) % 4]);
            visit(c[(split[f] + 2) % 4]);
        } else {
            out.far[p] = 1;
            for (int h : m.face(p)) visit(h);
        }
    }
    if (found.empty()) throw NoCycle("no diagonal bounds the far side at level " + std::to_string(r));

    std::vector<int> by_tail(m.vertex_count(), -1);
    for (std::size_t i = 0; i < found.size(); ++i) {
        auto c = m.face(found[i]);
        int tail = m.origin(c[(split[found[i]] + 3) % 4]);
        if (by_tail[tail] >= 0) throw std::logic_error("diagonal boundary is not a simple cycle");
        by_tail[tail] = static_cast<int>(i);
    }
    int i = 0;
    for (std::size_t step = 0; step < found.size(); ++step) {
        int f = found[i];
        auto c = m.face(f);
        int a = split[f];
        out.faces.push_back(f);
        out.corners.emplace_back(c[(a + 3) % 4], c[(a + 1) % 4]);
        out.vertices.push_back(m.origin(c[(a + 3) % 4]));
        i = by_tail[m.origin(c[(a + 1) % 4])];
        if (i < 0) throw std::logic_error("diagonal boundary is not closed");
    }
    if (i != 0) throw std::logic_error("diagonal boundary is not a single cycle");
    return out;
}

DiagonalCycle boundary_cycle(const RotationMap& q, int target, int r) {
    auto lab = root_distances(q);
    if (target < 0 || target >= q.vertex_count()) throw std::out_of_range("target vertex out of range");
    if (r <= 0 || r >= lab[target])
        throw NoCycle("level " + std::to_string(r) + " needs 0 < r < " + std::to_string(lab[target]));
    return diagonal_cycle(q, lab, q.rotation(target)[0], r);
}

TruncatedHull truncated_hull(const RotationMap& q, int target, int r) {
    auto lab = root_distances(q);
    if (target < 0 || target >= q.vertex_count()) throw std::out_of_range("target vertex out of range");
    if (r <= 0 || r >= lab[target])
        throw NoCycle("level " + std::to_string(r) + " needs 0 < r < " + std::to_string(lab[target]));
    auto cyc = diagonal_cycle(q, lab, q.rotation(target)[0], r);
    const int H = q.half_edge_count();
    auto m2 = add_chords(q, cyc.corners);

    std::vector<char> keep(m2.face_count(), 1);
    for (int f = 0; f < m2.face_count(); ++f) {
        auto c = m2.face(f);
        auto chord = std::find_if(c.begin(), c.end(), [&](int h) { return h >= H; });
        keep[f] = chord != c.end() ? (*chord - H) % 2 == 1 : !cyc.far[q.face_of(c[0])];
    }
    auto sub = submap_from_faces(m2, keep, q.root());

    TruncatedHull out;
    out.radius = r;
    out.vertex_from_q = sub.vertex_from_new;
    out.level.resize(sub.map.vertex_count());
    for (int v = 0; v < sub.map.vertex_count(); ++v) out.level[v] = lab[sub.vertex_from_new[v]];
    int t0 = sub.dart_to_new[H];
    for (int h = t0;;) {
        out.top.push_back(h);
        h = sub.map.face_next(h);
        if (h == t0) break;
    }
    if (out.top.size() != cyc.faces.size()) throw std::logic_error("truncated hull boundary is not the cycle");
    out.map = std::move(sub.map);
    return out;
}

void CylinderQuad::validate() const {
    auto fail = [](const std::string& why) { throw NotCylinder(why); };
    if (top.empty() || bottom.empty()) fail("empty boundary");
    const int tf = top_face(), bf = bottom_face();
    if (tf == bf) fail("top and bottom faces coincide");
    if (height < 1) fail("height must be positive");
    std::vector<char> used(map.face_count(), 0);
    used[tf] = used[bf] = 1;
    auto simple = [&](const std::vector<int>& cyc) {
        std::vector<int> vs;
        for (int h : cyc) vs.push_back(map.origin(h));
        std::sort(vs.begin(), vs.end());
        return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
    };
    if (!simple(top) || !simple(bottom)) fail("boundary cycle is not simple");
    if (static_cast<int>(top.size()) != map.face_degree(tf) || static_cast<int>(bottom.size()) != map.face_degree(bf))
        fail("cycles do not match the boundary faces");
    for (int h : top) {
        if (map.face_of(h) != tf) fail("top cycle leaves the top face");
        int f = map.face_of(twin(h));
        if (map.face_degree(f) != 3 || used[f]) fail("top edge without its own triangle");
        used[f] = 1;
        if (level[map.origin(h)] != height) fail("top vertex not at full height");
    }
    for (int h : bottom) {
        if (map.face_of(twin(h)) != bf) fail("bottom cycle leaves the bottom face");
        int f = map.face_of(h);
        if (map.face_degree(f) != 3 || used[f]) fail("bottom edge without its own triangle");
        used[f] = 1;
        if (level[map.origin(h)] != 0) fail("bottom vertex not at level 0");
    }
    for (int f = 0; f < map.face_count(); ++f)
        if (!used[f] && map.face_degree(f) != 4) fail("inner face of degree " + std::to_string(map.face_degree(f)));
    if (std::find(bottom.begin(), bottom.end(), map.root()) == bottom.end()) fail("root not on the bottom cycle");
}

CylinderQuad CylinderQuad::from_faces(RotationMap m, int top_face, int bottom_face) {
    CylinderQuad c;
    for (int h : m.face(top_face)) c.top.push_back(h);
    auto bf = m.face(bottom_face);
    for (auto it = bf.rbegin(); it != bf.rend(); ++it) c.bottom.push_back(twin(*it));
    auto at = std::find(c.bottom.begin(), c.bottom.end(), m.root());
    if (at != c.bottom.end()) std::rotate(c.bottom.begin(), at, c.bottom.end());
    std::vector<int> src;
    for (int h : c.bottom) src.push_back(m.origin(h));
    c.level = graph_distance(m, src);
    c.height = static_cast<int>(c.level[m.origin(c.top.front())]);
    c.map = std::move(m);
    c.validate();
    return c;
}

CylinderQuad as_cylinder(const TruncatedHull& h) {
    const auto& m = h.map;
    const int H = m.half_edge_count();
    const int e = m.root();
    const int rho = m.origin(e), x = m.target(e);
    if (h.level[rho] != 0 || h.level[x] != 1) throw std::invalid_argument("hull root must leave the root vertex");
    std::vector<int> next(m.next_cw_array()), origin(m.origins());
    next.resize(H + 4);
    origin.resize(H + 4);
    const int e2 = H, l1 = H + 2, l2 = H + 3;
    // at rho: e, l1, l2, e2, then the old successor of e
    int after = next[e];
    next[e] = l1;
    next[l1] = l2;
    next[l2] = e2;
    next[e2] = after;
    origin[e2] = origin[l1] = origin[l2] = rho;
    // at x: twin(e2) just before twin(e)
    int p = m.prev_cw(twin(e));
    next[p] = e2 + 1;
    next[e2 + 1] = twin(e);
    origin[e2 + 1] = x;
    auto map = RotationMap::from_arrays(std::move(next), std::move(origin), m.vertex_count(), l1);
    int tf = map.face_of(h.top.front());
    int bf = map.face_of(l2);
    auto c = CylinderQuad::from_faces(std::move(map), tf, bf);
    if (c.height != h.radius) throw std::logic_error("cylinder height differs from the hull radius");
    return c;
}

}  // namespace mapfpp
