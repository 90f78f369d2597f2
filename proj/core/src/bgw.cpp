#include "mapfpp/bgw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mapfpp/errors.hpp"

namespace mapfpp {

namespace {

std::vector<double> cumulative(const std::vector<double>& pmf) {
    if (pmf.empty()) throw InvalidPMF("empty pmf");
    std::vector<double> cdf(pmf.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        if (!(pmf[k] >= 0.0) || !std::isfinite(pmf[k])) throw InvalidPMF("pmf entry " + std::to_string(k) + " is negative or not finite");
        acc += pmf[k];
        cdf[k] = acc;
    }
    return cdf;
}

}  // namespace

OffspringSampler::OffspringSampler(std::vector<double> pmf, double tolerance) : cdf_(cumulative(pmf)) {
    if (std::abs(cdf_.back() - 1.0) > tolerance)
        throw InvalidPMF("pmf sums to " + std::to_string(cdf_.back()) + ", not 1");
    for (auto& c : cdf_) c /= cdf_.back();
}

OffspringSampler::OffspringSampler(std::vector<double> pmf, Tail tail, double tolerance)
    : cdf_(cumulative(pmf)), tail_(std::move(tail)) {
    if (cdf_.back() > 1.0 + tolerance) throw InvalidPMF("pmf table mass exceeds 1");
    if (!tail_ && std::abs(cdf_.back() - 1.0) > tolerance) throw InvalidPMF("pmf sums to less than 1 and no tail given");
}

std::int64_t OffspringSampler::operator()(Rng& rng) const {
    const double u = uniform01(rng);
    if (u < cdf_[0]) return 0;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it != cdf_.end()) return it - cdf_.begin();
    if (tail_) return tail_(rng);
    return static_cast<std::int64_t>(cdf_.size()) - 1;
}

double OffspringSampler::probability(std::int64_t k) const {
    if (k < 0 || k >= static_cast<std::int64_t>(cdf_.size())) return 0.0;
    return k == 0 ? cdf_[0] : cdf_[k] - cdf_[k - 1];
}

ForestSample sample_bgw_forest(const OffspringSampler& law, int q, std::optional<int> max_gen, Rng& rng,
                               std::int64_t vertex_cap) {
    if (q < 1) throw std::invalid_argument("forest needs at least one tree");
    ForestSample out;
    out.truncation = max_gen;
    out.trees.reserve(q);
    for (int i = 0; i < q; ++i) {
        std::vector<std::vector<int>> children(1);
        std::vector<int> gen{0};
        for (int g = 0; !gen.empty() && (!max_gen || g < *max_gen); ++g) {
            std::vector<int> next;
            for (int v : gen) {
                std::int64_t k = law(rng);
                if (static_cast<std::int64_t>(children.size()) + k > vertex_cap)
                    throw std::runtime_error("BGW tree exceeds the vertex cap");
                for (std::int64_t j = 0; j < k; ++j) {
                    int c = static_cast<int>(children.size());
                    children.emplace_back();
                    children[v].push_back(c);
                    next.push_back(c);
                }
            }
            gen.swap(next);
        }
        out.trees.push_back(PlaneTree::from_children(children, 0));
    }
    return out;
}

std::vector<std::int64_t> bgw_generation_sizes(const OffspringSampler& law, int r, Rng& rng, std::int64_t start) {
    std::vector<std::int64_t> y{start};
    for (int g = 0; g < r && y.back() > 0; ++g) {
        std::int64_t s = 0;
        for (std::int64_t i = 0; i < y.back(); ++i) s += law(rng);
        y.push_back(s);
    }
    return y;
}

}  // namespace mapfpp
