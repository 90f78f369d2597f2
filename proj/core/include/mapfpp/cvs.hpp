#pragma once

#include <cstdint>
#include <vector>

#include "mapfpp/plane_tree.hpp"
#include "mapfpp/rng.hpp"
#include "mapfpp/rotation_map.hpp"

namespace mapfpp {

// Rooted quadrangulation with a marked vertex. label[v] - label[marked]
// is the graph distance to the marked vertex.
struct PointedQuadrangulation {
    RotationMap map;
    std::vector<std::int64_t> label;
    std::vector<char> white;  // even distance from the root vertex
};

// Tree vertices keep their ids 0..n and the extra vertex gets id n+1.
// Edge k is the arc drawn from contour corner k (half-edge 2k at that corner).
PointedQuadrangulation cvs_build(const LabeledPlaneTree& t, bool eps);

PointedQuadrangulation sample_pointed_quadrangulation(int n, Rng& rng);

struct CvsCensus {
    std::vector<PointedQuadrangulation> pointed;
    std::size_t distinct_pointed = 0;
    std::size_t distinct_rooted = 0;  // forgetting the marked vertex
};

// all (tree, labels, eps) inputs with n <= 4 edges
CvsCensus cvs_exhaustive(int n);

// throws NotQuadrangulation / NotBipartite
void check_quadrangulation(const RotationMap& m);
std::vector<char> white_coloring(const RotationMap& m);

}  // namespace mapfpp
