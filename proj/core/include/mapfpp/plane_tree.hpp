#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mapfpp/rng.hpp"

namespace mapfpp {

// Rooted plane tree. Vertex 0 is the root and vertices are numbered in
// depth-first preorder, so children of v are > v.
class PlaneTree {
public:
    PlaneTree();  // single root

    // children[v] in left-to-right order, any numbering; root given
    static PlaneTree from_children(const std::vector<std::vector<int>>& children, int root = 0);
    // "(" = step to a new child, ")" = step back; the root is implicit
    static PlaneTree from_dyck(std::string_view word);
    std::string to_dyck() const;

    int vertex_count() const { return static_cast<int>(parent_.size()); }
    int edge_count() const { return vertex_count() - 1; }
    int parent(int v) const { return parent_[v]; }
    int first_child(int v) const { return first_child_[v]; }
    int next_sibling(int v) const { return next_sibling_[v]; }
    int depth(int v) const { return depth_[v]; }
    int child_count(int v) const { return child_count_[v]; }
    std::vector<int> children(int v) const;
    int height() const;
    // ancestor of v at depth h (h <= depth(v))
    int ancestor(int v, int h) const;
    // number of vertices in the subtree of v
    int subtree_size(int v) const { return subtree_size_[v]; }

    // contour vertex sequence, length 2n+1, starting and ending at the root
    std::vector<int> contour() const;

    bool operator==(const PlaneTree& o) const { return parent_ == o.parent_ && first_child_ == o.first_child_ &&
                                                       next_sibling_ == o.next_sibling_; }

private:
    void finish();

    std::vector<int> parent_, first_child_, next_sibling_, depth_, child_count_, subtree_size_;
};

struct LabeledPlaneTree {
    PlaneTree tree;
    std::vector<std::int64_t> label;  // Z per vertex, Z_root = 0

    // throws std::invalid_argument on a label jump > 1 or nonzero root label
    void validate() const;
    std::int64_t min_label() const;
    std::string to_text() const;  // dyck word line + label line
    static LabeledPlaneTree from_text(std::string_view text);
};

PlaneTree sample_uniform_tree(int n, Rng& rng);
LabeledPlaneTree assign_labels(const PlaneTree& t, Rng& rng);

struct ContourSnake {
    std::vector<int> vertex;          // contour vertices
    std::vector<int> height;          // C_k
    std::vector<std::int64_t> head;   // Y_k
    // W_k: labels along the ancestral line of the k-th contour vertex, root first
    std::vector<std::int64_t> path(const LabeledPlaneTree& t, int k) const;
};

ContourSnake contour_snake(const LabeledPlaneTree& t);
// rebuild the shape from a contour height sequence
PlaneTree tree_from_contour(const std::vector<int>& height);

struct PrunedTree {
    PlaneTree tree;
    std::optional<std::vector<std::int64_t>> label;
    std::vector<int> old_to_new;  // -1 for removed vertices
    int point = 0;                // [v]_h in the new numbering
    std::int64_t removed = 0;     // Theta
};

// removes all strict descendants of the depth-h ancestor of v
PrunedTree prune(const PlaneTree& t, int v, int h);
PrunedTree prune(const LabeledPlaneTree& t, int v, int h);

}  // namespace mapfpp
