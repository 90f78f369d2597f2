#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mapfpp/hull.hpp"
#include "mapfpp/plane_tree.hpp"
#include "mapfpp/rotation_map.hpp"

namespace mapfpp {

// Map whose root half-edge has the external face on its right. The external
// face is simple, inner faces along it are distinct triangles, all other
// inner faces have degree 4.
struct TruncatedQuadrangulation {
    RotationMap map;
    int perimeter = 0;

    int external_face() const { return map.face_of(twin(map.root())); }
    // throws std::invalid_argument
    void validate() const;
};

// Slot filling with one vertex joined to every vertex of a path of
// `children` edges; children = 0 gives the one-inner-face atom.
TruncatedQuadrangulation fan_slot(int children);

// How a slot is glued: x leaves the apex down the left side, y down the
// right side, children are the lower boundary edges left to right (with the
// slot on their left). For the atom x == y.
struct SlotFrame {
    int x = -1, y = -1;
    std::vector<int> children;
    bool atom() const { return x == y; }
};
SlotFrame slot_frame(const TruncatedQuadrangulation& s);

// perimeter-2 slot made of a single triangle
bool is_good_slot(const TruncatedQuadrangulation& s);

// Generation 0 is the top cycle, generation `height` the bottom cycle.
struct SkeletonForest {
    int height = 0;
    std::vector<std::vector<int>> offspring;  // generations 0 .. height-1
    std::vector<std::vector<TruncatedQuadrangulation>> slots;
    int marked = 0;  // index in generation `height` of the root edge

    int generation_size(int j) const;
    int top_size() const { return generation_size(0); }
    int bottom_size() const { return generation_size(height); }
    // trees of the forest, one per top vertex
    std::vector<PlaneTree> trees() const;
    // first tree holding generation-j vertex i
    std::vector<std::vector<int>> tree_index() const;
    // throws PerimeterMismatch
    void validate() const;

    std::string to_text() const;
    static SkeletonForest from_text(const std::string& text);
};

// forest with the fan filling in every slot
SkeletonForest forest_with_fans(int height, std::vector<std::vector<int>> offspring, int marked = 0);

// Cylinder plus every intermediate cycle, with the genealogy.
struct Skeleton {
    CylinderQuad cylinder;
    RotationMap augmented;                 // cylinder darts keep their ids
    std::vector<std::vector<int>> cycle;   // cycle[k]: half-edges of level k, forest order
    std::vector<std::vector<int>> first_child;  // index into cycle[k-1], k >= 1
    std::vector<std::vector<int>> third;   // third vertex of the triangle below cycle[k][i], k >= 1
    std::vector<int> vertex_level;         // cycle level of each vertex, -1 off the cycles
    std::vector<int> out_dart;             // cycle half-edge leaving each cycle vertex
    std::vector<int> position;             // index of a cycle half-edge within its cycle
    SkeletonForest forest;

    int height() const { return cylinder.height; }
    int children(int k, int i) const { return forest.offspring[cylinder.height - k][i]; }
    const TruncatedQuadrangulation& slot(int k, int i) const { return forest.slots[cylinder.height - k][i]; }
    bool good(int k, int i) const;
    // first step of the left-most geodesic, read off the slot geometry
    int leftmost_step(int v) const;
};

Skeleton skeleton_analyze(const CylinderQuad& c);
SkeletonForest skeleton_decompose(const CylinderQuad& c);
CylinderQuad skeleton_rebuild(const SkeletonForest& f);

// vertices from v (on a cycle of level k >= 1) down to the bottom cycle,
// found by scanning the rotation at each vertex clockwise
std::vector<int> leftmost_geodesic(const Skeleton& s, int v);

// Path in the image of the even-level colouring from top vertex v down to
// the even level `target`. Absent when some even level on the way has no
// good vertex. The right variant steps clockwise.
std::optional<std::vector<int>> downward_path(const Skeleton& s, int v, int target, bool right = false);

}  // namespace mapfpp
