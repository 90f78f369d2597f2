#pragma once

#include <utility>
#include <vector>

#include "mapfpp/rotation_map.hpp"

namespace mapfpp {

struct SubMap {
    RotationMap map;
    std::vector<int> dart_to_new;      // -1 when dropped
    std::vector<int> vertex_to_new;    // -1 when dropped
    std::vector<int> dart_from_new;
    std::vector<int> vertex_from_new;
};

// Deletes the flagged edges and any vertex left isolated. Surviving edges
// and vertices keep their relative order. root is an old half-edge id
// (default: the current root) and must survive.
SubMap remove_edges(const RotationMap& m, const std::vector<char>& remove_edge, int root = -1);

// Keeps the flagged faces; everything else collapses into outer faces.
SubMap submap_from_faces(const RotationMap& m, const std::vector<char>& keep_face, int root = -1);

// Chord i gets half-edges H+2i (inserted just before first, clockwise at
// origin(first)) and H+2i+1 (just before second). Chords are inserted in order.
RotationMap add_chords(const RotationMap& m, const std::vector<std::pair<int, int>>& corners, int root = -1);

}  // namespace mapfpp
