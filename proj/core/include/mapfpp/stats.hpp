#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mapfpp/rng.hpp"

namespace mapfpp {

double mean(std::span<const double> xs);
// linear interpolation between order statistics, q in [0, 1]
double quantile(std::vector<double> xs, double q);
inline double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

struct Interval {
    double lo = 0.0, hi = 0.0;
};

// percentile interval for the mean
Interval bootstrap_mean_ci(std::span<const double> xs, int resamples, double level, Rng& rng);

// slope c minimising sum |y - c x| (weighted median of y/x with weights |x|)
double lad_slope(std::span<const double> x, std::span<const double> y);

// P(sup |B| > lambda) for the Brownian bridge
double kolmogorov_survival(double lambda);

struct KsResult {
    double statistic = 0.0;  // sup |F_n - F|
    double p_value = 1.0;    // asymptotic, conservative for discrete laws
};

// against P(G = k) = (1-p)^k p, k >= 0
KsResult ks_geometric(std::span<const std::int64_t> samples, double p);

}  // namespace mapfpp
