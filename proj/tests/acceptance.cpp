// One PASS/FAIL line per acceptance criterion. --quick shrinks sample counts
// for development; --only 3,7 runs a subset.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mapfpp/bgw.hpp"
#include "mapfpp/canonical.hpp"
#include "mapfpp/cvs.hpp"
#include "mapfpp/distances.hpp"
#include "mapfpp/experiments.hpp"
#include "mapfpp/hull.hpp"
#include "mapfpp/laws.hpp"
#include "mapfpp/lhpq.hpp"
#include "mapfpp/plane_tree.hpp"
#include "mapfpp/skeleton.hpp"
#include "mapfpp/stats.hpp"
#include "mapfpp/tutte.hpp"

using namespace mapfpp;

namespace {

bool quick = false;

struct Outcome {
    bool pass = true;
    std::string detail;
    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

int scaled(int full, int small) { return quick ? small : full; }

// ---- 1 -----------------------------------------------------------------------

Outcome bijections() {
    Outcome o;
    const long cat[] = {1, 1, 2, 5};
    for (int n = 1; n <= 3; ++n) {
        auto c = cvs_exhaustive(n);
        long pow3 = 1;
        for (int i = 0; i < n; ++i) pow3 *= 3;
        long pointed = 2 * pow3 * cat[n];
        o.check(static_cast<long>(c.pointed.size()) == pointed && static_cast<long>(c.distinct_pointed) == pointed,
                "pointed census n=" + std::to_string(n));
        o.check(static_cast<long>(c.distinct_rooted) == pointed / (n + 2), "rooted census n=" + std::to_string(n));
    }
    Rng rng(101);
    int tutte_ok = 0;
    const int T = scaled(500, 50);
    for (int i = 0; i < T; ++i) {
        int n = 1 + static_cast<int>(rng() % 200);
        auto q = sample_pointed_quadrangulation(n, rng).map.with_marked(std::nullopt);
        bool ok = true;
        for (auto conv : {TutteRoot::RightFace, TutteRoot::LeftFace}) {
            auto m = tutte_forward(q, conv);
            ok = ok && canonical_code(tutte_inverse(m.map, conv)) == canonical_code(q);
        }
        tutte_ok += ok;
    }
    o.check(tutte_ok == T, "tutte round trip " + std::to_string(tutte_ok) + "/" + std::to_string(T));
    int skel_ok = 0, skel = 0;
    const int S = scaled(500, 50);
    while (skel < S) {
        auto pq = sample_pointed_quadrangulation(2000, rng);
        int target = *pq.map.marked();
        int d = static_cast<int>(root_distances(pq.map)[target]);
        int top = std::min(8, d - 1);
        if (top < 1) continue;
        int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(top));
        auto c = as_cylinder(truncated_hull(pq.map, target, r));
        auto c2 = skeleton_rebuild(skeleton_decompose(c));
        skel_ok += canonical_code(c2.map) == canonical_code(c.map);
        ++skel;
    }
    o.check(skel_ok == S, "skeleton round trip " + std::to_string(skel_ok) + "/" + std::to_string(S));
    o.note("census n<=3, " + std::to_string(T) + " Tutte and " + std::to_string(S) + " skeleton round trips");
    return o;
}

// ---- 2 -----------------------------------------------------------------------

Outcome metric_identity() {
    Outcome o;
    Rng rng(102);
    long vertices = 0, bad = 0;
    for (int n : {100, 1000, 10000}) {
        for (int i = 0; i < scaled(50, 5); ++i) {
            auto pq = sample_pointed_quadrangulation(n, rng);
            int mk = *pq.map.marked();
            auto d = graph_distance(pq.map, std::vector<int>{mk});
            for (int v = 0; v < pq.map.vertex_count(); ++v) {
                ++vertices;
                bad += d[v] != pq.label[v] - pq.label[mk];
            }
        }
    }
    o.check(bad == 0, std::to_string(bad) + " vertices off");
    o.note(std::to_string(vertices) + " vertices checked");
    return o;
}

// ---- 3 -----------------------------------------------------------------------

Outcome closed_forms() {
    Outcome o;
    auto law = theta_pmf(1000);
    o.check(std::abs(law.pmf[0] - 2.0 / 3.0) < 1e-10, "theta(0)");
    o.check(std::abs(law.pmf[1] - 5.0 / 27.0) < 1e-10, "theta(1)");
    double worst = 0.0, y = 0.0;
    for (int r = 1; r <= 50; ++r) {
        y = g_theta(y);  // plain iteration of the generating function from 0
        worst = std::max({worst, std::abs(g_iterate(r, 0.0) - pi_r(r)), std::abs(y - pi_r(r))});
    }
    o.check(worst < 1e-12, fmt("iterate vs pi_r off by %.3g", worst));
    double shape = 0.0;
    for (int r = 1; r <= 20; ++r)
        for (int p = 1; p <= 30; ++p)
            shape = std::max(shape, std::abs(phi(r, p) / phi(r, 1) / (p * std::pow(pi_r(r), p - 1)) - 1.0));
    o.check(shape < 1e-12, fmt("phi shape off by %.3g", shape));
    auto q = hr_ratio_exact(1, 2, 1);
    o.check(q.first == 16 && q.second == 7, "hr_ratio(1,2,1) exact");
    o.note(fmt("theta(0)=%.12f theta(1)=%.12f max iterate error %.2g", law.pmf[0], law.pmf[1], worst));
    return o;
}

// ---- 4 -----------------------------------------------------------------------

Outcome extinction() {
    Outcome o;
    auto sampler = theta_pmf().sampler();
    Rng rng(104);
    const int N = scaled(100000, 20000);
    const int rs[] = {1, 2, 5, 10};
    std::map<int, int> dead;
    for (int i = 0; i < N; ++i) {
        auto z = bgw_generation_sizes(sampler, 10, rng);
        for (int r : rs)
            if (static_cast<int>(z.size()) <= r || z[r] == 0) ++dead[r];
    }
    for (int r : rs) {
        double p = pi_r(r), f = static_cast<double>(dead[r]) / N, se = std::sqrt(p * (1 - p) / N);
        o.check(std::abs(f - p) <= 3 * se, fmt("r=%g freq %.5f vs %.5f", r, f, p));
        o.note(fmt("r=%g %.2f SE", r, (f - p) / se));
    }
    return o;
}

// ---- 5 -----------------------------------------------------------------------

Outcome perimeter_ratio() {
    Outcome o;
    // one map per sample serves both radii; n follows the 500 r^4 rule for r = 5
    const int n = quick ? 40500 : 312500;
    const int N = scaled(10000, 1000);
    Rng rng(105);
    std::map<int, int> h3, h5;
    int drawn = 0;
    while (drawn < N) {
        auto pq = sample_pointed_quadrangulation(n, rng);
        int t = *pq.map.marked();
        auto lab = root_distances(pq.map);
        if (lab[t] < 7) continue;
        ++h3[static_cast<int>(diagonal_cycle(pq.map, lab, pq.map.rotation(t)[0], 3).vertices.size())];
        ++h5[static_cast<int>(diagonal_cycle(pq.map, lab, pq.map.rotation(t)[0], 5).vertices.size())];
        ++drawn;
    }
    int bins = 0;
    double worst = 0.0;
    for (auto [p, c3] : h3) {
        int c5 = h5.count(p) ? h5[p] : 0;
        if (c3 < 200 || c5 < 200) continue;
        ++bins;
        double emp = static_cast<double>(c3) / c5, th = hr_ratio(3, 5, p), rel = std::abs(emp / th - 1.0);
        worst = std::max(worst, rel);
        o.check(rel <= 0.15, fmt("p=%g ratio %.3f vs %.3f", p, emp, th));
    }
    o.check(bins > 0, "no bin with 200 counts at both radii");
    o.note(fmt("n=%g, %g hulls, %g bins, worst relative error %.3f", n, N, bins, worst));
    return o;
}

// ---- 6 -----------------------------------------------------------------------

Outcome structure() {
    Outcome o;
    Rng rng(106);
    long geodesics = 0, pairs = 0, bad_len = 0, bad_coal = 0;
    for (int it = 0; it < scaled(200, 30); ++it) {
        auto pq = sample_pointed_quadrangulation(2000, rng);
        int target = *pq.map.marked();
        int d = static_cast<int>(root_distances(pq.map)[target]);
        int top = std::min(8, d - 1);
        if (top < 1) continue;
        int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(top));
        auto c = as_cylinder(truncated_hull(pq.map, target, r));
        auto s = skeleton_analyze(c);
        const int R = s.height();
        for (int k = 1; k <= R; ++k)
            for (int dd : s.cycle[k]) {
                auto path = leftmost_geodesic(s, s.augmented.origin(dd));
                ++geodesics;
                bad_len += static_cast<int>(path.size()) != k + 1;
            }
        const int q = static_cast<int>(s.cycle[R].size());
        auto idx = s.forest.tree_index();
        std::vector<int> th(q, 0);
        for (int j = 0; j <= R; ++j)
            for (int t : idx[j]) th[t] = std::max(th[t], j);
        std::vector<std::vector<int>> paths;
        for (int dd : s.cycle[R]) paths.push_back(leftmost_geodesic(s, s.augmented.origin(dd)));
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                if (a == b) continue;
                int h1 = -1, h2 = -1;
                for (int t = a; t != b; t = (t + 1) % q) h1 = std::max(h1, th[t]);
                for (int t = b; t != a; t = (t + 1) % q) h2 = std::max(h2, th[t]);
                for (int j = 0; j < R; ++j) {
                    bool meet = paths[a][R - j] == paths[b][R - j];
                    bool low = h1 < R - j || h2 < R - j;
                    ++pairs;
                    bad_coal += meet != low;
                }
            }
    }
    o.check(bad_len == 0, std::to_string(bad_len) + " geodesics of the wrong length");
    o.check(bad_coal == 0, std::to_string(bad_coal) + " coalescence mismatches");

    int checked = 0, bad_hull = 0;
    const int P = scaled(200, 30);
    while (checked < P) {
        auto lt = assign_labels(sample_uniform_tree(400, rng), rng);
        bool eps = rng() & 1;
        int xi = static_cast<int>(rng() % static_cast<unsigned>(lt.tree.vertex_count()));
        int depth = lt.tree.depth(xi);
        if (depth < 2) continue;
        int h = 1 + static_cast<int>(rng() % static_cast<unsigned>(depth - 1));
        std::int64_t lo = 0;
        for (int i = 0; i <= h; ++i) lo = std::min(lo, lt.label[lt.tree.ancestor(xi, i)]);
        int r = static_cast<int>(-lo);
        if (r < 4) continue;
        auto q = cvs_build(lt, eps);
        auto pr = prune(lt, xi, h);
        auto q2 = cvs_build(LabeledPlaneTree{pr.tree, *pr.label}, eps);
        auto a = hull(q.map, *q.map.marked(), r - 3);
        auto b = hull(q2.map, *q2.map.marked(), r - 3);
        bad_hull += canonical_code(a.sub.map, false) != canonical_code(b.sub.map, false);
        ++checked;
    }
    o.check(bad_hull == 0, std::to_string(bad_hull) + " pruned-tree hulls differ");
    o.note(std::to_string(geodesics) + " geodesics, " + std::to_string(pairs) + " coalescence checks, " +
           std::to_string(checked) + " pruned hulls");
    return o;
}

// ---- 7 -----------------------------------------------------------------------

const SlotPool& big_pool() {
    static const SlotPool pool = [] {
        Rng rng(4242);
        return SlotPool::harvest(quick ? SlotPool::HarvestOptions{10, 20000, 8} : SlotPool::HarvestOptions{60, 200000, 16},
                                 rng);
    }();
    return pool;
}

Outcome unit_constants() {
    Outcome o;
    auto cp = estimate_cp(scaled(200, 50), scaled(20, 5), WeightSpec{}, 107);
    bool exact = std::all_of(cp.samples.begin(), cp.samples.end(), [](double x) { return x == 1.0; });
    o.check(exact && cp.estimate == 1.0, "c_p unit weights not exactly 1");

    LhpqOptions base;
    base.source = SlotSource::Harvested;
    base.pool = &big_pool();
    base.fan_fallback = true;
    std::vector<int> depths = quick ? std::vector<int>{10, 20, 40} : std::vector<int>{50, 100, 200};
    std::vector<int> reps = quick ? std::vector<int>{10, 10, 10} : std::vector<int>{40, 30, 20};
    std::vector<double> est;
    int fallbacks = 0;
    for (std::size_t i = 0; i < depths.size(); ++i) {
        auto e = estimate_cT(depths[i], reps[i], WeightSpec{}, 207, base);
        est.push_back(e.estimate);
        fallbacks += e.fan_fallbacks;
        o.note(fmt("D=%g c_T=%.4f [%.4f, %.4f]", depths[i], e.estimate, e.ci_lo, e.ci_hi));
    }
    o.check(est.back() >= 0.8 && est.back() <= 1.2, "c_T outside [0.8, 1.2] at the largest depth");
    bool monotone = std::abs(est[1] - 1) < std::abs(est[0] - 1) && std::abs(est[2] - 1) < std::abs(est[1] - 1);
    o.check(monotone, "|c_T - 1| not decreasing across depths");
    o.note("pool " + std::to_string(big_pool().size()) + " slots, " + std::to_string(fallbacks) + " fan fallbacks");
    return o;
}

// ---- 8 -----------------------------------------------------------------------

Outcome tutte_trend() {
    Outcome o;
    std::vector<double> gap;
    for (int n : {1000, quick ? 10000 : 100000}) {
        std::vector<double> med;
        for (int i = 0; i < 20; ++i) {
            auto rng = make_rng(108, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i));
            try {
                med.push_back(tutte_isometry_statistic(n, 1000, rng).median_ratio);
            } catch (const std::logic_error& e) {
                o.check(false, e.what());
                return o;
            }
        }
        double m = median(med);
        gap.push_back(std::abs(m - 1.0));
        o.note(fmt("n=%g median ratio %.4f", n, m));
    }
    o.check(gap[1] < gap[0], "|median - 1| did not shrink");
    o.note("half bound held on every pair");
    return o;
}

// ---- 9 -----------------------------------------------------------------------

Outcome downward_increments() {
    Outcome o;
    LhpqOptions opt;
    opt.source = SlotSource::Harvested;
    opt.pool = &big_pool();
    opt.fan_fallback = true;
    opt.tutte_graph = true;
    std::vector<std::int64_t> g;
    const int N = scaled(10000, 3000);
    for (std::uint64_t s = 0; static_cast<int>(g.size()) < N; ++s) {
        Lhpq m(derive_seed(109, s), opt);
        for (int inc : lhpq_downward_increments(m, 100)) g.push_back(inc - 2);
    }
    g.resize(N);
    double p = theta_pmf(10).pmf[1] * big_pool().good_fraction();
    auto ks = ks_geometric(g, p);
    o.check(ks.p_value > 0.01, fmt("KS p-value %.4f", ks.p_value));
    o.note(fmt("%g increments, p=%.4f, D=%.4f, p-value %.3f", N, p, ks.statistic, ks.p_value));
    return o;
}

// ---- 10 ----------------------------------------------------------------------

#ifndef MAPFPP_CLI_PATH
#define MAPFPP_CLI_PATH ""
#endif

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

Outcome cli_determinism() {
    Outcome o;
    const std::string cli = MAPFPP_CLI_PATH;
    if (cli.empty() || !std::filesystem::exists(cli)) {
        o.check(false, "command-line tool not built");
        return o;
    }
    auto dir = std::filesystem::temp_directory_path() / "mapfpp_acceptance_cli";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto d = dir.string();
    {
        std::ofstream cfg(dir / "cfg.json");
        cfg << R"({"experiment": "fpp_scaling", "sizes": [200, 400], "reps": 2, "pairs": 100,
                   "weights": "uniform:1:2", "seed": 5, "output": ")"
            << d << R"(/exp"})";
    }
    const std::vector<std::string> cmds = {
        "--seed 7 sample-quad --n 3000",
        "tutte --in " + d + "/q.pmap",
        "tutte --in " + d + "/q.pmap --convention left",
        "decompose --in " + d + "/big.pmap --radius 3",
        "--seed 7 distances --in " + d + "/q.pmap --weights twopoint:1:3:0.5 --pairs 20",
        "--seed 7 --format json distances --in " + d + "/q.pmap --weights uniform:1:2 --pairs 20",
        "--seed 7 estimate-cp --depth 20 --reps 4 --weights uniform:1:2",
        "--seed 7 --format json estimate-ct --depth 10 --reps 4",
        "verify-laws --which theta --upto 30",
        "verify-laws --which pi",
        "verify-laws --which hr-ratio",
        "--format json verify-laws --which phi --upto 5",
    };
    auto sh = [&](const std::string& args, const std::string& out) {
        return std::system((cli + " " + args + " > " + out + " 2>&1").c_str());
    };
    sh("--seed 7 sample-quad --n 3000 --out " + d + "/q.pmap", "/dev/null");
    // a map where radius 3 fits
    for (int s = 1; s < 50; ++s) {
        sh("--seed " + std::to_string(s) + " sample-quad --n 20000 --out " + d + "/big.pmap", "/dev/null");
        if (sh("decompose --in " + d + "/big.pmap --radius 3", "/dev/null") == 0) break;
    }
    int same = 0;
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        auto a = d + "/a" + std::to_string(i), b = d + "/b" + std::to_string(i);
        int ra = sh(cmds[i], a), rb = sh(cmds[i], b);
        bool ok = ra == 0 && rb == 0 && slurp(a) == slurp(b) && !slurp(a).empty();
        o.check(ok, "'" + cmds[i] + "'");
        same += ok;
    }
    int ra = sh("experiment run --config " + d + "/cfg.json", "/dev/null");
    auto c1 = slurp(dir / "exp.csv"), j1 = slurp(dir / "exp.json");
    int rb = sh("experiment run --config " + d + "/cfg.json", "/dev/null");
    bool ok = ra == 0 && rb == 0 && c1 == slurp(dir / "exp.csv") && j1 == slurp(dir / "exp.json") && !c1.empty();
    o.check(ok, "experiment run");
    same += ok;
    std::filesystem::remove_all(dir);
    o.note(std::to_string(same) + "/" + std::to_string(cmds.size() + 1) + " invocations byte-identical");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--quick") {
            quick = true;
        } else if (a == "--only" && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            std::string tok;
            while (std::getline(ss, tok, ',')) only.insert(std::stoi(tok));
        } else {
            std::fprintf(stderr, "usage: %s [--quick] [--only 1,2,...]\n", argv[0]);
            return 2;
        }
    }
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"bijection exactness", bijections},
        {"label metric identity", metric_identity},
        {"closed-form laws", closed_forms},
        {"extinction frequencies", extinction},
        {"hull perimeter ratio law", perimeter_ratio},
        {"structural geometry", structure},
        {"unit-weight constants", unit_constants},
        {"image distance trend", tutte_trend},
        {"downward path increments", downward_increments},
        {"command-line determinism", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::printf("%s %d %s (%.1fs)%s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), s,
                    quick ? " [quick]" : "", o.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
