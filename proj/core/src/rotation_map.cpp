#include "mapfpp/rotation_map.hpp"

#include <algorithm>
#include <string>

#include "mapfpp/errors.hpp"

namespace mapfpp {

namespace {

void check_permutation(const std::vector<int>& p, const char* what) {
    const int n = static_cast<int>(p.size());
    if (n == 0) throw std::invalid_argument("map needs at least one edge");
    if (n % 2 != 0) throw TwinFixedPoint("odd number of half-edges: " + std::to_string(n - 1) + " has no twin");
    std::vector<char> seen(n, 0);
    for (int x : p) {
        if (x < 0 || x >= n) throw std::invalid_argument(std::string(what) + ": entry out of range");
        if (seen[x]) throw DuplicateHalfEdge(std::string(what) + ": half-edge " + std::to_string(x) + " repeated");
        seen[x] = 1;
    }
}

}  // namespace

RotationMap RotationMap::from_rotations(const std::vector<std::vector<int>>& rotations, int root,
                                        std::optional<int> marked) {
    std::size_t total = 0;
    for (const auto& r : rotations) total += r.size();
    if (rotations.empty() || total == 0) throw std::invalid_argument("map needs at least one edge");
    const int H = static_cast<int>(total);

    int max_id = 0;
    for (const auto& r : rotations)
        for (int h : r) {
            if (h < 0) throw std::invalid_argument("negative half-edge id");
            max_id = std::max(max_id, h);
        }
    std::vector<char> seen(static_cast<std::size_t>(max_id) + 1, 0);
    for (const auto& r : rotations)
        for (int h : r) {
            if (seen[h]) throw DuplicateHalfEdge("half-edge " + std::to_string(h) + " appears twice");
            seen[h] = 1;
        }
    for (int h = 0; h <= max_id; ++h)
        if (seen[h] && ((h ^ 1) > max_id || !seen[h ^ 1]))
            throw TwinFixedPoint("half-edge " + std::to_string(h) + " has no twin");
    if (max_id + 1 != H) throw std::invalid_argument("half-edge ids are not 0..2E-1");

    RotationMap m;
    m.next_.assign(H, -1);
    std::vector<int> origin(H, -1);
    for (std::size_t v = 0; v < rotations.size(); ++v) {
        const auto& r = rotations[v];
        if (r.empty()) throw Disconnected("vertex " + std::to_string(v) + " is isolated");
        for (std::size_t i = 0; i < r.size(); ++i) {
            m.next_[r[i]] = r[(i + 1) % r.size()];
            origin[r[i]] = static_cast<int>(v);
        }
    }
    m.assemble(std::move(origin), static_cast<int>(rotations.size()));
    // keep the caller's starting half-edge in each rotation
    for (std::size_t v = 0; v < rotations.size(); ++v) {
        int pos = m.vstart_[v];
        for (int h : rotations[v]) m.vrot_[pos++] = h;
    }
    m.set_root_marked(root, marked);
    return m;
}

RotationMap RotationMap::from_next_cw(std::vector<int> next_cw, int root, std::optional<int> marked_dart) {
    check_permutation(next_cw, "rotation");
    const int H = static_cast<int>(next_cw.size());
    RotationMap m;
    m.next_ = std::move(next_cw);
    std::vector<int> origin(H, -1);
    int V = 0;
    for (int h = 0; h < H; ++h) {
        if (origin[h] >= 0) continue;
        int g = h;
        do {
            origin[g] = V;
            g = m.next_[g];
        } while (g != h);
        ++V;
    }
    m.assemble(std::move(origin), V);
    std::optional<int> marked;
    if (marked_dart) {
        if (*marked_dart < 0 || *marked_dart >= H) throw std::invalid_argument("marked half-edge out of range");
        marked = m.origin_[*marked_dart];
    }
    m.set_root_marked(root, marked);
    return m;
}

RotationMap RotationMap::from_arrays(std::vector<int> next_cw, std::vector<int> origin, int V, int root,
                                     std::optional<int> marked) {
    check_permutation(next_cw, "rotation");
    if (origin.size() != next_cw.size()) throw std::invalid_argument("origin array size mismatch");
    for (int o : origin)
        if (o < 0 || o >= V) throw std::invalid_argument("origin out of range");
    RotationMap m;
    m.next_ = std::move(next_cw);
    m.assemble(std::move(origin), V);
    m.set_root_marked(root, marked);
    return m;
}

RotationMap RotationMap::from_face_permutation(const std::vector<int>& phi, int root,
                                               std::optional<int> marked_dart) {
    check_permutation(phi, "face permutation");
    std::vector<int> next(phi.size());
    for (std::size_t g = 0; g < phi.size(); ++g) next[g] = phi[g ^ 1];
    return from_next_cw(std::move(next), root, marked_dart);
}

void RotationMap::assemble(std::vector<int> origin, int V) {
    const int H = static_cast<int>(next_.size());
    origin_ = std::move(origin);
    prev_.assign(H, -1);
    for (int h = 0; h < H; ++h) prev_[next_[h]] = h;

    vstart_.assign(V + 1, 0);
    for (int h = 0; h < H; ++h) ++vstart_[origin_[h] + 1];
    for (int v = 0; v < V; ++v) {
        if (vstart_[v + 1] == 0) throw Disconnected("vertex " + std::to_string(v) + " is isolated");
        vstart_[v + 1] += vstart_[v];
    }
    vrot_.assign(H, -1);
    std::vector<char> done(V, 0);
    for (int h = 0; h < H; ++h) {
        int v = origin_[h];
        if (done[v]) continue;
        done[v] = 1;
        int pos = vstart_[v];
        int g = h;
        do {
            if (origin_[g] != v) throw std::invalid_argument("rotation orbit crosses vertices");
            vrot_[pos++] = g;
            g = next_[g];
        } while (g != h && pos <= vstart_[v + 1]);
        if (pos != vstart_[v + 1] || g != h) throw std::invalid_argument("rotation of a vertex is not a single cycle");
    }

    // connectivity over vertices
    {
        std::vector<char> vis(V, 0);
        std::vector<int> stack{0};
        vis[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int i = vstart_[v]; i < vstart_[v + 1]; ++i) {
                int w = origin_[vrot_[i] ^ 1];
                if (!vis[w]) {
                    vis[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != V) throw Disconnected("map is disconnected");
    }

    face_.assign(H, -1);
    fstart_.assign(1, 0);
    fdarts_.clear();
    fdarts_.reserve(H);
    int F = 0;
    for (int h = 0; h < H; ++h) {
        if (face_[h] >= 0) continue;
        int g = h;
        do {
            face_[g] = F;
            fdarts_.push_back(g);
            g = next_[g ^ 1];
        } while (g != h);
        fstart_.push_back(static_cast<int>(fdarts_.size()));
        ++F;
    }
    if (V - H / 2 + F != 2)
        throw NonPlanar("Euler characteristic " + std::to_string(V - H / 2 + F) + " != 2");
}

void RotationMap::set_root_marked(int root, std::optional<int> marked) {
    if (root < 0 || root >= half_edge_count()) throw std::invalid_argument("root half-edge out of range");
    if (marked && (*marked < 0 || *marked >= vertex_count()))
        throw std::invalid_argument("marked vertex out of range");
    root_ = root;
    marked_ = marked;
}

std::vector<std::vector<int>> RotationMap::face_cycles() const {
    std::vector<std::vector<int>> out(face_count());
    for (int f = 0; f < face_count(); ++f) {
        auto s = face(f);
        out[f].assign(s.begin(), s.end());
    }
    return out;
}

std::vector<std::vector<int>> RotationMap::rotations() const {
    std::vector<std::vector<int>> out(vertex_count());
    for (int v = 0; v < vertex_count(); ++v) {
        auto s = rotation(v);
        out[v].assign(s.begin(), s.end());
    }
    return out;
}

RotationMap RotationMap::with_root(int h) const {
    RotationMap m = *this;
    m.set_root_marked(h, marked_);
    return m;
}

RotationMap RotationMap::with_marked(std::optional<int> v) const {
    RotationMap m = *this;
    m.set_root_marked(root_, v);
    return m;
}

}  // namespace mapfpp
