#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mapfpp/distances.hpp"
#include "mapfpp/rng.hpp"

namespace mapfpp {

// One (n, rep) row of a scaling experiment. `deviation` is the sup over the
// sampled pairs only, so it bounds the sup over all pairs from below.
struct ScalingRow {
    std::int64_t n = 0;
    int pairs = 0;
    double c_hat = 1.0;             // LAD slope through the origin
    double deviation = 0.0;         // max |d' - c_hat d| n^{-1/4}
    double median_deviation = 0.0;  // median of the same
    double median_ratio = 1.0;      // median d'/d over pairs with d > 0
    double root_marked = 0.0;       // |d' - c_hat d| n^{-1/4} for (root, marked)
};

// Pairs come in groups sharing a source: ceil(pairs / 50) uniform sources,
// uniform targets. Throws std::logic_error if a pair breaks the sandwich.
ScalingRow fpp_scaling_statistic(int n, int pair_count, const WeightSpec& w, Rng& rng);

// White pairs of Q and its image M. d = d_Q, d' = d_M, c_hat fitted the same
// way. Throws std::logic_error if d_M < ceil(d_Q / 2) on some pair.
ScalingRow tutte_isometry_statistic(int n, int pair_count, Rng& rng);

enum class CensusSource { Hull, Lhpq };

struct CensusOptions {
    CensusSource source = CensusSource::Hull;
    double n_per_r4 = 500.0;        // hull source: n = n_per_r4 * r^4 ...
    std::int64_t max_n = 2'000'000; // ... capped here
    double perimeter_per_r2 = 1.0;  // half-plane source: starts on a top segment of this many r^2 edges
};

// Distinct left-most geodesics left after floor(gamma r) steps down from
// every vertex of the top cycle at radius r, one count per rep.
std::vector<int> coalescence_census(int r, double gamma, int reps, Rng& rng, const CensusOptions& opt = {});

struct FaceDegreeReport {
    std::vector<int> max_degree;  // per rep, over inner faces of the image
    double q50 = 0.0, q90 = 0.0, q95 = 0.0;
    std::int64_t faces_checked = 0;
    std::int64_t n = 0;
};

// Image of the truncated hull of radius 2r (r >= 1). Every inner face degree
// is checked against the degree of the black vertex it surrounds; throws
// std::logic_error on a mismatch. n = 0 picks min(500 (2r)^4, max_n).
FaceDegreeReport max_face_degree_statistic(int r, int reps, Rng& rng, std::int64_t n = 0,
                                           std::int64_t max_n = 200'000);

struct ExperimentConfig {
    std::string experiment;  // fpp_scaling | tutte_isometry | coalescence | max_face_degree | estimate_cp | estimate_ct
    std::vector<std::int64_t> sizes;  // n, or r, or D
    int reps = 1;
    int pairs = 1000;
    WeightSpec weights;
    std::uint64_t seed = 0;
    std::string output;  // prefix; .csv and .json are appended
    double gamma = 0.25;
    CensusOptions census;
    std::int64_t n = 0;  // max_face_degree sample size, 0 for the default rule

    // throws ConfigError
    static ExperimentConfig from_json(const std::string& text);
    void validate() const;
};

struct ExperimentOutput {
    std::string csv;
    std::string json;
};

// pure function of the config
ExperimentOutput run_experiment(const ExperimentConfig& cfg);
// writes <output>.csv and <output>.json through temporary files
ExperimentOutput run(const ExperimentConfig& cfg);

// write-temp-then-rename
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace mapfpp
