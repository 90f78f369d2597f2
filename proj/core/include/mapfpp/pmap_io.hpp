#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mapfpp/rotation_map.hpp"

namespace mapfpp {

struct PmapDocument {
    RotationMap map;
    std::optional<std::vector<double>> weights;         // per edge
    std::optional<std::vector<std::int64_t>> labels;    // per vertex
};

void write_pmap(std::ostream& os, const RotationMap& m, const std::vector<double>* weights = nullptr,
                const std::vector<std::int64_t>* labels = nullptr);
std::string to_pmap(const RotationMap& m, const std::vector<double>* weights = nullptr,
                    const std::vector<std::int64_t>* labels = nullptr);

// reads one document; stops after the last section line (blank line or EOF)
PmapDocument read_pmap(std::istream& is);
PmapDocument parse_pmap(const std::string& text);

}  // namespace mapfpp
