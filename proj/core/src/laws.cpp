#include "mapfpp/laws.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mapfpp {

const double kThetaTailConstant = 3.0 * std::numbers::sqrt2 / (4.0 * std::sqrt(std::numbers::pi));

double ThetaLaw::mean() const {
    long double m = 0;
    for (std::size_t k = 1; k < pmf.size(); ++k) m += static_cast<long double>(k) * pmf[k];
    return static_cast<double>(m);
}

OffspringSampler ThetaLaw::sampler() const {
    const double start = static_cast<double>(pmf.size()) - 0.5;
    auto tail = [start](Rng& rng) -> std::int64_t {
        double u = 1.0 - uniform01(rng);  // (0, 1]
        double x = start * std::pow(u, -2.0 / 3.0);
        return static_cast<std::int64_t>(std::min(x + 0.5, 1e15));
    };
    return OffspringSampler(pmf, tail, 1e-9);
}

ThetaLaw theta_pmf(int k_max) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    // f(y) = (1-y)^{3/2} (9-y)^{1/2} = sum f_k y^k satisfies
    // 9(k+1) f_{k+1} = (10k - 14) f_k - (k - 3) f_{k-1}
    // and g(y) = 3 - y/2 + (f(y) - 3) / (2y).
    std::vector<long double> f(static_cast<std::size_t>(k_max) + 2);
    f[0] = 3.0L;
    long double prev = 0.0L;
    for (int k = 0; k + 1 < static_cast<int>(f.size()); ++k) {
        f[k + 1] = ((10.0L * k - 14.0L) * f[k] - (k - 3.0L) * prev) / (9.0L * (k + 1));
        prev = f[k];
    }
    ThetaLaw law;
    law.pmf.resize(k_max + 1);
    law.pmf[0] = static_cast<double>(3.0L + f[1] / 2);
    law.pmf[1] = static_cast<double>(f[2] / 2 - 0.5L);
    for (int k = 2; k <= k_max; ++k) law.pmf[k] = static_cast<double>(f[k + 1] / 2);
    long double total = 0;
    for (double p : law.pmf) total += p;
    law.tail_mass = static_cast<double>(std::max(0.0L, 1.0L - total));
    return law;
}

double g_theta(double y) { return g_iterate(1, y); }

double g_iterate(int r, double y) {
    if (!(y < 1.0)) throw std::domain_error("generating function needs y < 1");
    if (r < 0) throw std::invalid_argument("iterate count must be >= 0");
    if (r == 0) return y;
    const double s = std::sqrt((9.0 - y) / (1.0 - y)) + 2.0 * r;
    return 1.0 - 8.0 / (s * s - 1.0);
}

double pi_r(int r) {
    if (r < 0) throw std::invalid_argument("radius must be >= 0");
    const double a = 3.0 + 2.0 * r;
    return 1.0 - 8.0 / (a * a - 1.0);
}

double k_r_shape(int r) {
    const double a = 3.0 + 2.0 * r;
    const double b = a * a - 1.0;
    return a / (b * b);
}

double hr_ratio(int r, int s, int p) {
    if (r < 1 || s < 1 || p < 1) throw std::invalid_argument("hr_ratio needs r, s, p >= 1");
    return k_r_shape(r) / k_r_shape(s) * std::pow(pi_r(r) / pi_r(s), p);
}

std::pair<std::int64_t, std::int64_t> hr_ratio_exact(int r, int s, int p) {
    using boost::multiprecision::cpp_rational;
    if (r < 1 || s < 1 || p < 1) throw std::invalid_argument("hr_ratio needs r, s, p >= 1");
    auto k = [](int x) -> cpp_rational {
        cpp_rational a = 3 + 2 * x;
        cpp_rational b = a * a - 1;
        return a / (b * b);
    };
    auto pi = [](int x) -> cpp_rational {
        cpp_rational a = 3 + 2 * x;
        return 1 - cpp_rational(8) / (a * a - 1);
    };
    cpp_rational q = k(r) / k(s);
    cpp_rational ratio = pi(r) / pi(s);
    for (int i = 0; i < p; ++i) q *= ratio;
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    const boost::multiprecision::cpp_int lim = std::numeric_limits<std::int64_t>::max();
    if (abs(num) > lim || den > lim) throw std::overflow_error("exact ratio does not fit in 64 bits");
    return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

double phi(int r, int p) {
    if (r < 0 || p < 1) throw std::invalid_argument("phi needs r >= 0, p >= 1");
    const double a = 3.0 + 2.0 * r;
    const double b = a * a - 1.0;
    return 64.0 / 3.0 * p * a / (b * b) * std::pow(pi_r(r), p - 1);
}

double kappa_asym(int p) {
    if (p < 1) throw std::invalid_argument("kappa_asym needs p >= 1");
    return 64.0 * std::sqrt(3.0) / (std::numbers::pi * std::numbers::sqrt2) * std::sqrt(static_cast<double>(p)) *
           std::exp2(-static_cast<double>(p));
}

}  // namespace mapfpp
