#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mapfpp/bgw.hpp"

namespace mapfpp {

// critical offspring law with generating function
//   g(y) = 1 - 8 / ((sqrt((9-y)/(1-y)) + 2)^2 - 1)
struct ThetaLaw {
    std::vector<double> pmf;  // theta(0..k_max)
    double tail_mass = 0.0;   // 1 - sum(pmf)
    double mean() const;
    int k_max() const { return static_cast<int>(pmf.size()) - 1; }
    // table plus an analytic k^{-5/2} tail beyond k_max
    OffspringSampler sampler() const;
};

inline constexpr int kDefaultThetaTable = 1'000'000;
// theta(k) ~ kThetaTailConstant * k^{-5/2}
extern const double kThetaTailConstant;

ThetaLaw theta_pmf(int k_max = kDefaultThetaTable);

double g_theta(double y);
// r-fold iterate, closed form; throws std::domain_error for y >= 1
double g_iterate(int r, double y);
// probability that the process started from one individual dies out before generation r
double pi_r(int r);
// K_r up to a factor independent of r
double k_r_shape(int r);
// P(H_r = p) / P(H_s = p)
double hr_ratio(int r, int s, int p);
// the same ratio as an exact fraction (numerator, denominator); throws std::overflow_error
std::pair<std::int64_t, std::int64_t> hr_ratio_exact(int r, int s, int p);
double phi(int r, int p);
double kappa_asym(int p);

}  // namespace mapfpp
