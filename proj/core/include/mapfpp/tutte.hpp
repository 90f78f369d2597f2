#pragma once

#include <cstdint>
#include <vector>

#include "mapfpp/rotation_map.hpp"

namespace mapfpp {

// which face next to the quadrangulation root edge carries the image root
enum class TutteRoot { RightFace, LeftFace };

struct TutteImage {
    RotationMap map;
    std::vector<int> vertex_to_q;   // image vertex -> white source vertex
    std::vector<int> q_to_vertex;   // source vertex -> image vertex, -1 if absent
    std::vector<int> source_face;   // image edge -> source face (diagonals), -1 for kept edges
    std::vector<int> source_edge;   // image edge -> source edge (kept edges), -1 for diagonals
    std::vector<int> left_black;    // image half-edge -> black source vertex on its left, -1 if none
};

// requires all faces of degree 4 and a bipartite map; root vertex is white
TutteImage tutte_forward(const RotationMap& q, TutteRoot conv = TutteRoot::RightFace);
RotationMap tutte_inverse(const RotationMap& m, TutteRoot conv = TutteRoot::RightFace);

// Diagonals in every face of degree 4 with alternating colours, plus every
// edge joining two white vertices.
TutteImage tutte_general(const RotationMap& q, const std::vector<char>& white, TutteRoot conv = TutteRoot::RightFace);

// truncated hulls and cylinders: white = even level; throws OddRadius
TutteImage tutte_truncated(const RotationMap& q, const std::vector<std::int64_t>& level, int radius,
                           TutteRoot conv = TutteRoot::RightFace);

}  // namespace mapfpp
