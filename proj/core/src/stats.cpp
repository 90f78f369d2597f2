#include "mapfpp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/geometric.hpp>

namespace mapfpp {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean of an empty sample");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw std::invalid_argument("quantile of an empty sample");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile level outside [0, 1]");
    std::sort(xs.begin(), xs.end());
    double pos = q * static_cast<double>(xs.size() - 1);
    auto i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= xs.size()) return xs.back();
    double t = pos - static_cast<double>(i);
    return xs[i] * (1.0 - t) + xs[i + 1] * t;
}

Interval bootstrap_mean_ci(std::span<const double> xs, int resamples, double level, Rng& rng) {
    if (xs.empty()) throw std::invalid_argument("bootstrap of an empty sample");
    if (resamples < 1 || level <= 0.0 || level >= 1.0) throw std::invalid_argument("bad bootstrap parameters");
    std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
    std::vector<double> means(resamples);
    for (auto& m : means) {
        double s = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) s += xs[pick(rng)];
        m = s / static_cast<double>(xs.size());
    }
    double a = (1.0 - level) / 2.0;
    return {quantile(means, a), quantile(means, 1.0 - a)};
}

double lad_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("lad_slope: size mismatch");
    std::vector<std::pair<double, double>> rw;
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) continue;
        rw.emplace_back(y[i] / x[i], std::abs(x[i]));
        total += std::abs(x[i]);
    }
    if (rw.empty()) throw std::invalid_argument("lad_slope: all abscissae are zero");
    std::sort(rw.begin(), rw.end());
    double acc = 0.0;
    for (auto [r, w] : rw) {
        acc += w;
        if (acc >= total / 2.0) return r;
    }
    return rw.back().first;
}

double kolmogorov_survival(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 0.2) return 1.0;
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        s += (k % 2 ? 2.0 : -2.0) * term;
        if (term < 1e-16) break;
    }
    return std::clamp(s, 0.0, 1.0);
}

KsResult ks_geometric(std::span<const std::int64_t> samples, double p) {
    if (samples.empty()) throw std::invalid_argument("ks test of an empty sample");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("geometric parameter outside (0, 1]");
    std::vector<std::int64_t> xs(samples.begin(), samples.end());
    std::sort(xs.begin(), xs.end());
    if (xs.front() < 0) throw std::invalid_argument("negative geometric sample");
    const double n = static_cast<double>(xs.size());
    boost::math::geometric_distribution<double> law(p);
    double d = 0.0;
    // the empirical cdf jumps only at sample values; compare just below and at each
    std::size_t i = 0;
    while (i < xs.size()) {
        std::int64_t k = xs[i];
        double below = static_cast<double>(i) / n;
        double f_below = k == 0 ? 0.0 : boost::math::cdf(law, static_cast<double>(k - 1));
        d = std::max(d, std::abs(below - f_below));
        while (i < xs.size() && xs[i] == k) ++i;
        double at = static_cast<double>(i) / n;
        d = std::max(d, std::abs(at - boost::math::cdf(law, static_cast<double>(k))));
    }
    return {d, kolmogorov_survival(std::sqrt(n) * d)};
}

}  // namespace mapfpp
