#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mapfpp/map_ops.hpp"
#include "mapfpp/rotation_map.hpp"

namespace mapfpp {

using Labels = std::vector<std::int64_t>;

// graph distance from the root vertex
Labels root_distances(const RotationMap& q);

struct Region {
    SubMap sub;
    std::vector<char> face_in;  // per face of the source map
    int outer_face = -1;        // face of sub.map standing for the removed part (-1: none or several)
};

// faces incident to a vertex at distance <= floor(r) - 1 from the root vertex
Region ball(const RotationMap& q, double r);
// ball plus the face components of its complement that avoid `target`;
// throws RadiusTooLarge unless 1 <= r <= d(root, target) - 2
Region hull(const RotationMap& q, int target, int r);

// Cycle of diagonals at level r, drawn in faces labelled r-1, r, r+1, r.
// Diagonal i runs from the corner before corners[i].first to the corner
// before corners[i].second; the far side is on its left.
struct DiagonalCycle {
    int level = 0;
    std::vector<int> faces;
    std::vector<std::pair<int, int>> corners;
    std::vector<int> vertices;  // tail of each diagonal
    std::vector<char> far;      // per face: whole face on the far side
};

// far_dart: a half-edge whose left side is on the far side (the marked
// vertex or the top face). Throws NoCycle when nothing qualifies.
DiagonalCycle diagonal_cycle(const RotationMap& m, const Labels& level, int far_dart, int r);
// labels are distances from the root vertex; needs 0 < r < d(root, target)
DiagonalCycle boundary_cycle(const RotationMap& q, int target, int r);

struct TruncatedHull {
    RotationMap map;                 // root of q; far side collapsed to one face
    Labels level;                    // distance to the root vertex
    std::vector<int> top;            // boundary half-edges, outer face on the left, in face order
    std::vector<int> vertex_from_q;  // hull vertex -> source vertex
    int radius = 0;
};

TruncatedHull truncated_hull(const RotationMap& q, int target, int r);

// Quadrangulation of the cylinder. Cycles hold half-edges with the top
// side on their left, in order. The root lies on the bottom cycle.
struct CylinderQuad {
    RotationMap map;
    int height = 0;
    Labels level;  // distance to the bottom cycle
    std::vector<int> top, bottom;

    int top_face() const { return map.face_of(top.front()); }
    int bottom_face() const { return map.face_of(twin(bottom.front())); }
    // throws NotCylinder
    void validate() const;
    // levels and cycles from the two boundary faces; root must border the bottom face
    static CylinderQuad from_faces(RotationMap m, int top_face, int bottom_face);
};

// splits the root edge and puts a loop inside the new face
CylinderQuad as_cylinder(const TruncatedHull& h);

}  // namespace mapfpp
