#include "mapfpp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mapfpp/cvs.hpp"
#include "mapfpp/errors.hpp"
#include "mapfpp/hull.hpp"
#include "mapfpp/lhpq.hpp"
#include "mapfpp/skeleton.hpp"
#include "mapfpp/stats.hpp"
#include "mapfpp/tutte.hpp"

namespace mapfpp {

namespace {

constexpr int kTargetsPerSource = 50;

int uniform_index(Rng& rng, std::size_t size) {
    return static_cast<int>(std::uniform_int_distribution<std::size_t>(0, size - 1)(rng));
}

struct PairSample {
    std::vector<double> d, dp;  // reference and compared distance per pair
};

ScalingRow summarize(std::int64_t n, const PairSample& s, double c_hat, double root_d, double root_dp) {
    const double scale = std::pow(static_cast<double>(n), -0.25);
    ScalingRow row;
    row.n = n;
    row.pairs = static_cast<int>(s.d.size());
    row.c_hat = c_hat;
    std::vector<double> dev, ratio;
    for (std::size_t i = 0; i < s.d.size(); ++i) {
        dev.push_back(std::abs(s.dp[i] - c_hat * s.d[i]) * scale);
        if (s.d[i] > 0) ratio.push_back(s.dp[i] / s.d[i]);
    }
    row.deviation = dev.empty() ? 0.0 : *std::max_element(dev.begin(), dev.end());
    row.median_deviation = dev.empty() ? 0.0 : median(dev);
    row.median_ratio = ratio.empty() ? 1.0 : median(ratio);
    row.root_marked = std::abs(root_dp - c_hat * root_d) * scale;
    return row;
}

double fit(const PairSample& s, double lo, double hi) {
    bool any = std::any_of(s.d.begin(), s.d.end(), [](double x) { return x > 0; });
    if (!any) return lo;
    return std::clamp(lad_slope(s.d, s.dp), lo, hi);
}

}  // namespace

ScalingRow fpp_scaling_statistic(int n, int pair_count, const WeightSpec& w, Rng& rng) {
    if (n < 1 || pair_count < 1) throw std::invalid_argument("fpp_scaling_statistic needs n >= 1 and pairs >= 1");
    auto pq = sample_pointed_quadrangulation(n, rng);
    const auto& q = pq.map;
    auto weights = w.sample(q.edge_count(), rng);
    Adjacency g(q);
    const int V = g.vertex_count();
    const double kappa = w.kappa();

    PairSample s;
    std::vector<int> dist, queue;
    std::vector<double> fdist;
    auto measure = [&](int src, const std::vector<int>& targets) {
        int srcs[1] = {src};
        bfs(g, srcs, dist, queue);
        dijkstra(g, weights.weight, srcs, fdist);
        for (int t : targets) {
            double a = dist[t], b = fdist[t];
            if (b < a - 1e-9 || b > kappa * a + 1e-9)
                throw std::logic_error("first-passage distance outside [d, kappa d]");
            s.d.push_back(a);
            s.dp.push_back(b);
        }
    };
    int left = pair_count;
    while (left > 0) {
        int batch = std::min(left, kTargetsPerSource);
        int src = uniform_index(rng, V);
        std::vector<int> targets(batch);
        for (int& t : targets) t = uniform_index(rng, V);
        measure(src, targets);
        left -= batch;
    }
    PairSample sampled = s;
    measure(q.root_vertex(), {*q.marked()});
    double root_d = s.d.back(), root_dp = s.dp.back();

    double c_hat = w.is_unit() ? 1.0 : fit(sampled, 1.0, kappa);
    return summarize(n, sampled, c_hat, root_d, root_dp);
}

ScalingRow tutte_isometry_statistic(int n, int pair_count, Rng& rng) {
    if (n < 1 || pair_count < 1) throw std::invalid_argument("tutte_isometry_statistic needs n >= 1 and pairs >= 1");
    auto pq = sample_pointed_quadrangulation(n, rng);
    const auto& q = pq.map;
    auto img = tutte_forward(q);
    Adjacency gq(q), gm(img.map);
    std::vector<int> whites;
    for (int v = 0; v < q.vertex_count(); ++v)
        if (img.q_to_vertex[v] >= 0) whites.push_back(v);

    PairSample s;
    std::vector<int> dq, dm, queue;
    auto measure = [&](int src, const std::vector<int>& targets) {
        int a[1] = {src}, b[1] = {img.q_to_vertex[src]};
        bfs(gq, a, dq, queue);
        bfs(gm, b, dm, queue);
        for (int t : targets) {
            int x = dq[t], y = dm[img.q_to_vertex[t]];
            if (2 * y < x) throw std::logic_error("image distance below half the quadrangulation distance");
            s.d.push_back(x);
            s.dp.push_back(y);
        }
    };
    int left = pair_count;
    while (left > 0) {
        int batch = std::min(left, kTargetsPerSource);
        int src = whites[uniform_index(rng, whites.size())];
        std::vector<int> targets(batch);
        for (int& t : targets) t = whites[uniform_index(rng, whites.size())];
        measure(src, targets);
        left -= batch;
    }
    PairSample sampled = s;

    // a black marked vertex is replaced by its neighbour nearest to the root
    int target = *q.marked();
    if (img.q_to_vertex[target] < 0) {
        auto dr = root_distances(q);
        int best = -1;
        for (int h : q.rotation(target)) {
            int u = q.target(h);
            if (best < 0 || dr[u] < dr[best]) best = u;
        }
        target = best;
    }
    measure(q.root_vertex(), {target});
    double root_d = s.d.back(), root_dp = s.dp.back();

    double c_hat = fit(sampled, 0.5, 2.0);
    return summarize(n, sampled, c_hat, root_d, root_dp);
}

std::vector<int> coalescence_census(int r, double gamma, int reps, Rng& rng, const CensusOptions& opt) {
    if (!(gamma > 0.0 && gamma < 0.5)) throw std::invalid_argument("gamma must lie in (0, 1/2)");
    if (r < 1 || reps < 0) throw std::invalid_argument("coalescence_census needs r >= 1");
    const int h = static_cast<int>(std::floor(gamma * r));
    std::vector<int> out;
    out.reserve(reps);
    if (opt.source == CensusSource::Lhpq) {
        const auto P = static_cast<std::int64_t>(std::llround(opt.perimeter_per_r2 * r * r));
        for (int i = 0; i < reps; ++i) {
            Lhpq m(rng(), {});
            std::set<std::int64_t> ends;
            for (std::int64_t x = 0; x <= P; ++x) ends.insert(m.descend(0, x, h));
            out.push_back(static_cast<int>(ends.size()));
        }
        return out;
    }
    const double nr = opt.n_per_r4 * std::pow(static_cast<double>(r), 4);
    const int n = static_cast<int>(std::min<double>(nr, static_cast<double>(opt.max_n)));
    while (static_cast<int>(out.size()) < reps) {
        auto pq = sample_pointed_quadrangulation(std::max(n, 1), rng);
        int target = *pq.map.marked();
        if (root_distances(pq.map)[target] < r + 2) continue;
        auto s = skeleton_analyze(as_cylinder(truncated_hull(pq.map, target, r)));
        std::set<int> ends;
        for (int d : s.cycle[s.height()]) {
            auto path = leftmost_geodesic(s, s.augmented.origin(d));
            ends.insert(path[h]);
        }
        out.push_back(static_cast<int>(ends.size()));
    }
    return out;
}

FaceDegreeReport max_face_degree_statistic(int r, int reps, Rng& rng, std::int64_t n, std::int64_t max_n) {
    if (r < 1 || reps < 1) throw std::invalid_argument("max_face_degree_statistic needs r >= 1 and reps >= 1");
    const int R = 2 * r;
    FaceDegreeReport rep;
    rep.n = n > 0 ? n : std::min<std::int64_t>(max_n, static_cast<std::int64_t>(500.0 * std::pow(R, 4.0)));
    while (static_cast<int>(rep.max_degree.size()) < reps) {
        auto pq = sample_pointed_quadrangulation(static_cast<int>(rep.n), rng);
        int target = *pq.map.marked();
        if (root_distances(pq.map)[target] < R + 2) continue;
        auto th = truncated_hull(pq.map, target, R);
        auto img = tutte_truncated(th.map, th.level, R);
        const auto& m = img.map;
        int best = 0;
        for (int f = 0; f < m.face_count(); ++f) {
            auto ds = m.face(f);
            int b = img.left_black[ds[0]];
            bool inner = b >= 0 && std::all_of(ds.begin(), ds.end(), [&](int d) { return img.left_black[d] == b; });
            if (!inner) continue;
            if (m.face_degree(f) != th.map.degree(b))
                throw std::logic_error("inner face degree differs from its black vertex degree");
            ++rep.faces_checked;
            best = std::max(best, m.face_degree(f));
        }
        rep.max_degree.push_back(best);
    }
    std::vector<double> xs(rep.max_degree.begin(), rep.max_degree.end());
    rep.q50 = quantile(xs, 0.5);
    rep.q90 = quantile(xs, 0.9);
    rep.q95 = quantile(xs, 0.95);
    return rep;
}

// ---- configs and reports ---------------------------------------------------

namespace {

const std::vector<std::string> kExperiments = {"fpp_scaling",           "tutte_isometry", "coalescence",
                                               "max_face_degree", "estimate_cp",    "estimate_ct"};

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string join(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
    return s + "\n";
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known = {"experiment", "sizes", "reps",   "pairs",      "weights",
                                                "seed",       "output", "gamma", "census", "n"};
    for (auto& [k, v] : j.items())
        if (!known.count(k)) throw ConfigError("unknown config key '" + k + "'");
    ExperimentConfig c;
    try {
        c.experiment = j.at("experiment").get<std::string>();
        c.sizes = j.at("sizes").get<std::vector<std::int64_t>>();
        c.reps = j.value("reps", 1);
        c.pairs = j.value("pairs", 1000);
        c.weights = WeightSpec::parse(j.value("weights", std::string("unit")));
        c.seed = j.value("seed", std::uint64_t{0});
        c.output = j.value("output", std::string());
        c.gamma = j.value("gamma", 0.25);
        c.n = j.value("n", std::int64_t{0});
        if (j.contains("census")) {
            const auto& cs = j["census"];
            std::string src = cs.value("source", std::string("hull"));
            if (src == "hull")
                c.census.source = CensusSource::Hull;
            else if (src == "lhpq")
                c.census.source = CensusSource::Lhpq;
            else
                throw ConfigError("census source must be hull or lhpq");
            c.census.n_per_r4 = cs.value("n_per_r4", c.census.n_per_r4);
            c.census.max_n = cs.value("max_n", c.census.max_n);
            c.census.perimeter_per_r2 = cs.value("perimeter_per_r2", c.census.perimeter_per_r2);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config field: ") + e.what());
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    c.validate();
    return c;
}

void ExperimentConfig::validate() const {
    if (std::find(kExperiments.begin(), kExperiments.end(), experiment) == kExperiments.end())
        throw ConfigError("unknown experiment '" + experiment + "'");
    if (sizes.empty()) throw ConfigError("sizes must not be empty");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] <= 0) throw ConfigError("sizes must be positive");
        if (i && sizes[i] <= sizes[i - 1]) throw ConfigError("sizes must be increasing");
    }
    if (reps < 1) throw ConfigError("reps must be >= 1");
    if (pairs < 1) throw ConfigError("pairs must be >= 1");
    if (weights.kappa() < 1.0) throw ConfigError("kappa must be >= 1");
    if (!(gamma > 0.0 && gamma < 0.5)) throw ConfigError("gamma must lie in (0, 1/2)");
    if (experiment == "estimate_ct")
        for (auto D : sizes)
            if (D % 2) throw ConfigError("estimate_ct needs even depths");
    if (experiment == "estimate_cp")
        for (auto D : sizes)
            if (D < 10) throw ConfigError("estimate_cp needs depths >= 10");
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    std::ostringstream csv;
    nlohmann::ordered_json summary;
    summary["experiment"] = cfg.experiment;
    summary["seed"] = cfg.seed;
    summary["weights"] = cfg.weights.to_string();
    summary["reps"] = cfg.reps;
    summary["trend_tolerances"] = "artifact convention; no convergence rate is available";
    auto& per = summary["per_size"] = nlohmann::ordered_json::array();

    const auto& e = cfg.experiment;
    if (e == "fpp_scaling" || e == "tutte_isometry") {
        summary["statistic"] = "sup over sampled pairs (lower bound for the sup over all pairs)";
        summary["pairs"] = cfg.pairs;
        csv << join({"n", "rep", "pairs", "c_hat", "deviation", "median_deviation", "median_ratio", "root_marked"});
        for (auto n : cfg.sizes) {
            std::vector<double> dev, ch, ratio, rm;
            for (int i = 0; i < cfg.reps; ++i) {
                auto rng = make_rng(cfg.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i));
                auto row = e == "fpp_scaling" ? fpp_scaling_statistic(static_cast<int>(n), cfg.pairs, cfg.weights, rng)
                                        : tutte_isometry_statistic(static_cast<int>(n), cfg.pairs, rng);
                csv << join({std::to_string(n), std::to_string(i), std::to_string(row.pairs), num(row.c_hat),
                             num(row.deviation), num(row.median_deviation), num(row.median_ratio),
                             num(row.root_marked)});
                dev.push_back(row.deviation);
                ch.push_back(row.c_hat);
                ratio.push_back(row.median_ratio);
                rm.push_back(row.root_marked);
            }
            per.push_back({{"n", n},
                           {"median_deviation", median(dev)},
                           {"median_c_hat", median(ch)},
                           {"median_ratio", median(ratio)},
                           {"median_root_marked", median(rm)}});
        }
    } else if (e == "coalescence") {
        summary["gamma"] = cfg.gamma;
        summary["source"] = cfg.census.source == CensusSource::Hull ? "hull" : "lhpq";
        csv << join({"r", "rep", "survivors"});
        for (auto r : cfg.sizes) {
            auto rng = make_rng(cfg.seed, static_cast<std::uint64_t>(r));
            auto counts = coalescence_census(static_cast<int>(r), cfg.gamma, cfg.reps, rng, cfg.census);
            std::vector<double> xs;
            for (int i = 0; i < cfg.reps; ++i) {
                csv << join({std::to_string(r), std::to_string(i), std::to_string(counts[i])});
                xs.push_back(counts[i]);
            }
            per.push_back({{"r", r}, {"median", median(xs)}, {"q90", quantile(xs, 0.9)},
                           {"max", *std::max_element(xs.begin(), xs.end())}});
        }
    } else if (e == "max_face_degree") {
        csv << join({"r", "rep", "n", "max_face_degree"});
        for (auto r : cfg.sizes) {
            auto rng = make_rng(cfg.seed, static_cast<std::uint64_t>(r));
            auto rep = max_face_degree_statistic(static_cast<int>(r), cfg.reps, rng, cfg.n);
            for (int i = 0; i < cfg.reps; ++i)
                csv << join({std::to_string(r), std::to_string(i), std::to_string(rep.n),
                             std::to_string(rep.max_degree[i])});
            per.push_back({{"r", r}, {"n", rep.n}, {"q50", rep.q50}, {"q90", rep.q90}, {"q95", rep.q95},
                           {"five_log_r", 5.0 * std::log(static_cast<double>(r))},
                           {"faces_checked", rep.faces_checked}});
        }
    } else {
        const bool tutte = e == "estimate_ct";
        csv << join({"depth", "rep", "ratio"});
        for (auto D : cfg.sizes) {
            auto est = tutte ? estimate_cT(static_cast<int>(D), cfg.reps, cfg.weights, cfg.seed)
                             : estimate_cp(static_cast<int>(D), cfg.reps, cfg.weights, cfg.seed);
            for (std::size_t i = 0; i < est.samples.size(); ++i)
                csv << join({std::to_string(D), std::to_string(i), num(est.samples[i])});
            per.push_back({{"depth", D}, {"estimate", est.estimate}, {"ci_lo", est.ci_lo}, {"ci_hi", est.ci_hi},
                           {"lateral_reach", est.margin}, {"fan_fallbacks", est.fan_fallbacks}});
        }
    }
    return {csv.str(), summary.dump(2) + "\n"};
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string());
        os << content;
        if (!os.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, p);
}

ExperimentOutput run(const ExperimentConfig& cfg) {
    if (cfg.output.empty()) throw ConfigError("output prefix is empty");
    auto out = run_experiment(cfg);
    write_file_atomic(cfg.output + ".csv", out.csv);
    write_file_atomic(cfg.output + ".json", out.json);
    return out;
}

}  // namespace mapfpp
