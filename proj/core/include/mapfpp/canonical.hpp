#pragma once

#include <vector>

#include "mapfpp/rotation_map.hpp"

namespace mapfpp {

struct CanonicalLabeling {
    std::vector<int> code;
    std::vector<int> vertex_order;    // canonical index -> vertex
    std::vector<int> dart_label;      // half-edge -> canonical index
};

// Breadth-first relabeling from the root half-edge. Two rooted maps are
// isomorphic (orientation preserving, root preserving) iff their codes match.
CanonicalLabeling canonical_labeling(const RotationMap& m, bool include_marked = true);
std::vector<int> canonical_code(const RotationMap& m, bool include_marked = true);

}  // namespace mapfpp
