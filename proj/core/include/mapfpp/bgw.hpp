#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mapfpp/plane_tree.hpp"
#include "mapfpp/rng.hpp"

namespace mapfpp {

// Inverse-CDF sampler over a pmf table, with an optional tail sampler for
// the mass beyond the table.
class OffspringSampler {
public:
    using Tail = std::function<std::int64_t(Rng&)>;

    explicit OffspringSampler(std::vector<double> pmf, double tolerance = 1e-9);
    OffspringSampler(std::vector<double> pmf, Tail tail, double tolerance = 1e-9);

    std::int64_t operator()(Rng& rng) const;
    double table_mass() const { return cdf_.empty() ? 0.0 : cdf_.back(); }
    double probability(std::int64_t k) const;

private:
    std::vector<double> cdf_;
    Tail tail_;
};

struct ForestSample {
    std::vector<PlaneTree> trees;
    std::optional<int> truncation;
};

ForestSample sample_bgw_forest(const OffspringSampler& law, int q, std::optional<int> max_gen, Rng& rng,
                               std::int64_t vertex_cap = 50'000'000);

// sizes of generations 0..r (or until extinction) of a process started from `start` individuals
std::vector<std::int64_t> bgw_generation_sizes(const OffspringSampler& law, int r, Rng& rng, std::int64_t start = 1);

}  // namespace mapfpp
