#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mapfpp/cvs.hpp"
#include "mapfpp/distances.hpp"
#include "mapfpp/errors.hpp"
#include "mapfpp/experiments.hpp"
#include "mapfpp/laws.hpp"
#include "mapfpp/stats.hpp"
#include "mapfpp/tutte.hpp"

using namespace mapfpp;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Scaling, UnitWeightsGiveExactlyOneAndNoDeviation) {
    Rng rng(1);
    auto row = fpp_scaling_statistic(300, 200, WeightSpec::parse("unit"), rng);
    EXPECT_EQ(row.c_hat, 1.0);
    EXPECT_EQ(row.deviation, 0.0);
    EXPECT_EQ(row.root_marked, 0.0);
    EXPECT_EQ(row.pairs, 200);
}

TEST(Scaling, FittedConstantInsideWeightRange) {
    Rng rng(2);
    for (const char* spec : {"uniform:1:3", "twopoint:1:2:0.5"}) {
        auto w = WeightSpec::parse(spec);
        auto row = fpp_scaling_statistic(400, 150, w, rng);
        EXPECT_GE(row.c_hat, 1.0);
        EXPECT_LE(row.c_hat, w.kappa());
        EXPECT_GE(row.deviation, 0.0);
        EXPECT_GE(row.deviation, row.median_deviation);
        EXPECT_GE(row.median_ratio, 1.0);
        EXPECT_LE(row.median_ratio, w.kappa());
    }
}

TEST(TutteIsometry, HalfBoundHoldsAndRatioIsSane) {
    Rng rng(3);
    for (int n : {100, 1000}) {
        auto row = tutte_isometry_statistic(n, 300, rng);
        EXPECT_GE(row.median_ratio, 0.5);
        EXPECT_LE(row.median_ratio, 1.5);
        EXPECT_GE(row.deviation, row.median_deviation);
    }
}

TEST(TutteIsometry, OneFaceQuadrangulationsByHand) {
    // the path a-b-c closed into one face: image is one link (root at an end,
    // d_Q = 2, d_M = 1) or one loop (root in the middle, single white vertex)
    auto census = cvs_exhaustive(1);
    int links = 0, loops = 0;
    for (const auto& pq : census.pointed) {
        auto img = tutte_forward(pq.map);
        ASSERT_EQ(img.map.edge_count(), 1);
        auto dq = graph_distance(pq.map, std::vector<int>{pq.map.root_vertex()});
        std::vector<int> whites;
        for (int v = 0; v < pq.map.vertex_count(); ++v)
            if (img.q_to_vertex[v] >= 0) whites.push_back(v);
        if (whites.size() == 2) {
            ++links;
            int other = whites[0] == pq.map.root_vertex() ? whites[1] : whites[0];
            EXPECT_EQ(dq[other], 2);
            auto dm = graph_distance(img.map, std::vector<int>{img.q_to_vertex[pq.map.root_vertex()]});
            EXPECT_EQ(dm[img.q_to_vertex[other]], 1);
        } else {
            ++loops;
            EXPECT_EQ(whites.size(), 1u);
            EXPECT_EQ(img.map.target(0), img.map.origin(0));
        }
    }
    EXPECT_GT(links, 0);
    EXPECT_GT(loops, 0);
}

TEST(Coalescence, CountsArePositiveAndMonotoneInDepth) {
    for (auto src : {CensusSource::Hull, CensusSource::Lhpq}) {
        CensusOptions o;
        o.source = src;
        o.max_n = 20000;
        Rng a(5), b(5);
        auto shallow = coalescence_census(8, 0.1, 6, a, o);
        auto deep = coalescence_census(8, 0.4, 6, b, o);
        ASSERT_EQ(shallow.size(), 6u);
        for (int i = 0; i < 6; ++i) {
            EXPECT_GE(deep[i], 1);
            EXPECT_LE(deep[i], shallow[i]);
        }
    }
}

TEST(Coalescence, HalfPlaneCountsMatchExtinctionAndStayBounded) {
    // ends differ across edge x exactly when x has offspring h levels down,
    // so the mean count is 1 + r^2 (1 - pi_h); the limit is 1 + 2 / gamma^2
    CensusOptions o;
    o.source = CensusSource::Lhpq;
    const double gamma = 0.25, limit = 1.0 + 2.0 / (gamma * gamma);
    for (int r : {8, 16, 32}) {
        Rng rng(6 + r);
        auto c = coalescence_census(r, gamma, 1000, rng, o);
        std::vector<double> xs(c.begin(), c.end());
        double m = mean(xs), sd = 0.0;
        for (double x : xs) sd += (x - m) * (x - m);
        sd = std::sqrt(sd / (xs.size() - 1));
        const int h = static_cast<int>(gamma * r);
        double expect = 1.0 + r * r * (1.0 - pi_r(h));
        EXPECT_NEAR(m, expect, 4.0 * sd / std::sqrt(1000.0)) << "r=" << r;
        EXPECT_LE(expect, limit);
        EXPECT_LE(quantile(xs, 0.9), 2.0 * limit) << "r=" << r;
    }
}

TEST(FaceDegree, InnerFacesMatchBlackDegrees) {
    Rng rng(7);
    auto rep = max_face_degree_statistic(2, 5, rng, 3000);
    EXPECT_EQ(rep.max_degree.size(), 5u);
    EXPECT_GT(rep.faces_checked, 0);
    for (int d : rep.max_degree) EXPECT_GE(d, 1);
    EXPECT_LE(rep.q50, rep.q95);
}

TEST(Run, SameSeedSameBytesAndOneRowPerSizeAndRep) {
    ExperimentConfig c;
    c.experiment = "fpp_scaling";
    c.sizes = {100, 200};
    c.reps = 2;
    c.pairs = 100;
    c.weights = WeightSpec::parse("uniform:1:2");
    c.seed = 99;
    auto dir = std::filesystem::temp_directory_path() / "mapfpp_run_test";
    std::filesystem::remove_all(dir);
    c.output = (dir / "a").string();
    auto first = run(c);
    c.output = (dir / "b").string();
    run(c);
    EXPECT_EQ(slurp((dir / "a.csv").string()), slurp((dir / "b.csv").string()));
    EXPECT_EQ(slurp((dir / "a.json").string()), slurp((dir / "b.json").string()));
    EXPECT_EQ(count_lines(first.csv), 1 + 4);
    EXPECT_FALSE(std::filesystem::exists(dir / "a.csv.tmp"));
    std::filesystem::remove_all(dir);
}

TEST(Run, ConfigValidation) {
    EXPECT_THROW(ExperimentConfig::from_json(R"({"experiment": "nope", "sizes": [10]})"), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json(R"({"experiment": "fpp_scaling", "sizes": [100, 50]})"), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json(R"({"experiment": "fpp_scaling", "sizes": [100], "colour": 1})"), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json(R"({"experiment": "fpp_scaling", "sizes": [100], "weights": "uniform:1:0.5"})"),
                 ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json("not json"), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_json(R"({"experiment": "estimate_ct", "sizes": [7]})"), ConfigError);
    auto c = ExperimentConfig::from_json(
        R"({"experiment": "coalescence", "sizes": [4, 8], "reps": 3, "gamma": 0.3, "census": {"source": "lhpq"}})");
    EXPECT_EQ(c.census.source, CensusSource::Lhpq);
    EXPECT_EQ(count_lines(run_experiment(c).csv), 1 + 6);
}

TEST(Run, ConstantEstimatesEmitOneRowPerReplicate) {
    ExperimentConfig c;
    c.experiment = "estimate_cp";
    c.sizes = {10, 20};
    c.reps = 3;
    c.seed = 4;
    auto out = run_experiment(c);
    EXPECT_EQ(count_lines(out.csv), 1 + 6);
    EXPECT_NE(out.csv.find("10,0,1\n"), std::string::npos);
}
