#pragma once

#include <optional>
#include <span>
#include <vector>

namespace mapfpp {

inline constexpr int twin(int h) { return h ^ 1; }
inline constexpr int edge_of(int h) { return h >> 1; }

// Rooted planar map stored as a rotation system.
// Half-edge h and twin(h) = h^1 form edge h/2. next_cw(h) is the next
// outgoing half-edge clockwise around origin(h). face_of(h) is the face on
// the left of h, traversed by face_next(h) = next_cw(twin(h)).
class RotationMap {
public:
    RotationMap() = default;

    // rotations[v] lists the half-edges leaving v in clockwise order
    static RotationMap from_rotations(const std::vector<std::vector<int>>& rotations, int root,
                                      std::optional<int> marked = std::nullopt);

    // phi[h] = next half-edge along the face left of h. Vertices are numbered
    // by first appearance when scanning half-edges 0,1,2,...
    // marked_dart: any half-edge leaving the marked vertex.
    static RotationMap from_face_permutation(const std::vector<int>& phi, int root,
                                             std::optional<int> marked_dart = std::nullopt);

    // next_cw as a permutation; vertices numbered as in from_face_permutation
    static RotationMap from_next_cw(std::vector<int> next_cw, int root,
                                    std::optional<int> marked_dart = std::nullopt);

    // explicit arrays; origin[h] in [0, V), each vertex one next_cw cycle
    static RotationMap from_arrays(std::vector<int> next_cw, std::vector<int> origin, int vertex_count, int root,
                                   std::optional<int> marked = std::nullopt);

    int vertex_count() const { return static_cast<int>(vstart_.size()) - 1; }
    int half_edge_count() const { return static_cast<int>(origin_.size()); }
    int edge_count() const { return half_edge_count() / 2; }
    int face_count() const { return static_cast<int>(fstart_.size()) - 1; }

    int origin(int h) const { return origin_[h]; }
    int target(int h) const { return origin_[h ^ 1]; }
    int next_cw(int h) const { return next_[h]; }
    int prev_cw(int h) const { return prev_[h]; }
    int face_next(int h) const { return next_[h ^ 1]; }
    int face_prev(int h) const { return prev_[h] ^ 1; }
    int face_of(int h) const { return face_[h]; }

    int degree(int v) const { return vstart_[v + 1] - vstart_[v]; }
    std::span<const int> rotation(int v) const {
        return {vrot_.data() + vstart_[v], static_cast<std::size_t>(degree(v))};
    }
    int face_degree(int f) const { return fstart_[f + 1] - fstart_[f]; }
    std::span<const int> face(int f) const {
        return {fdarts_.data() + fstart_[f], static_cast<std::size_t>(face_degree(f))};
    }
    std::vector<std::vector<int>> face_cycles() const;
    std::vector<std::vector<int>> rotations() const;

    int root() const { return root_; }
    int root_vertex() const { return origin_[root_]; }
    std::optional<int> marked() const { return marked_; }

    RotationMap with_root(int h) const;
    RotationMap with_marked(std::optional<int> v) const;

    // next_cw as a flat array
    const std::vector<int>& next_cw_array() const { return next_; }
    const std::vector<int>& origins() const { return origin_; }

private:
    void assemble(std::vector<int> origin, int vertex_count);
    void set_root_marked(int root, std::optional<int> marked);

    std::vector<int> origin_, next_, prev_;
    std::vector<int> vstart_, vrot_;
    std::vector<int> face_, fstart_, fdarts_;
    int root_ = -1;
    std::optional<int> marked_;
};

}  // namespace mapfpp
