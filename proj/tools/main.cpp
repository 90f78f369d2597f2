#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mapfpp/cvs.hpp"
#include "mapfpp/distances.hpp"
#include "mapfpp/errors.hpp"
#include "mapfpp/experiments.hpp"
#include "mapfpp/hull.hpp"
#include "mapfpp/laws.hpp"
#include "mapfpp/lhpq.hpp"
#include "mapfpp/pmap_io.hpp"
#include "mapfpp/skeleton.hpp"
#include "mapfpp/tutte.hpp"

using namespace mapfpp;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
    std::uint64_t seed = 0;
    std::string format = "csv";
};

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string read_all(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_file_atomic(out, text);
}

// rows of cells, rendered as CSV or as a JSON array of objects
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<json>> rows;

    std::string render(const std::string& format) const {
        if (format == "json") {
            json arr = json::array();
            for (const auto& r : rows) {
                json o;
                for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
                arr.push_back(o);
            }
            return arr.dump(2) + "\n";
        }
        std::string s;
        for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
        s += "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) s += ",";
                if (r[i].is_number_float())
                    s += num(r[i].get<double>());
                else if (r[i].is_string())
                    s += r[i].get<std::string>();
                else
                    s += r[i].dump();
            }
            s += "\n";
        }
        return s;
    }
};

int fail(const std::string& kind, const std::string& message, int code) {
    json e{{"error", kind}, {"message", message}};
    std::cerr << e.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random quadrangulations, Tutte's bijection and first-passage percolation"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "random seed")->capture_default_str();
    app.add_option("--format", g.format, "table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    // sample-quad
    int n = 0;
    std::string out, in;
    auto* sq = app.add_subcommand("sample-quad", "uniform rooted pointed quadrangulation with n faces, as PMAP");
    sq->add_option("--n", n, "faces")->required()->check(CLI::PositiveNumber);
    sq->add_option("--out", out, "output file (stdout if absent)");
    sq->add_option("--seed", g.seed, "random seed");

    // tutte
    std::string convention = "right";
    auto* tu = app.add_subcommand("tutte", "Tutte image of a quadrangulation, as PMAP");
    tu->add_option("--in", in, "input PMAP")->required();
    tu->add_option("--out", out, "output file");
    tu->add_option("--convention", convention, "face carrying the image root")
        ->check(CLI::IsMember({"right", "left"}));

    // decompose
    int radius = 0;
    auto* de = app.add_subcommand("decompose", "skeleton forest of the truncated hull");
    de->add_option("--in", in, "input PMAP with a marked vertex")->required();
    de->add_option("--radius", radius, "hull radius")->required()->check(CLI::PositiveNumber);
    de->add_option("--out", out, "output file");

    // distances
    std::string weights = "unit";
    int pairs = 100;
    auto* di = app.add_subcommand("distances", "graph and first-passage distances between uniform vertex pairs");
    di->add_option("--in", in, "input PMAP")->required();
    di->add_option("--weights", weights, "unit | uniform:1:K | twopoint:a:b:p");
    di->add_option("--pairs", pairs, "pair count")->check(CLI::PositiveNumber);
    di->add_option("--out", out, "output file");

    // estimate-cp / estimate-ct
    int depth = 0, reps = 10;
    auto* ecp = app.add_subcommand("estimate-cp", "time constant in the half-plane quadrangulation");
    auto* ect = app.add_subcommand("estimate-ct", "time constant in its Tutte image");
    for (auto* sc : {ecp, ect}) {
        sc->add_option("--depth", depth, "depth D")->required()->check(CLI::PositiveNumber);
        sc->add_option("--reps", reps, "replicates")->check(CLI::PositiveNumber);
        sc->add_option("--weights", weights, "unit | uniform:1:K | twopoint:a:b:p");
        sc->add_option("--out", out, "output file");
    }

    // verify-laws
    std::string which;
    int upto = 50;
    auto* vl = app.add_subcommand("verify-laws", "tables of the branching and perimeter laws");
    vl->add_option("--which", which, "law")->required()->check(CLI::IsMember({"theta", "pi", "hr-ratio", "phi"}));
    vl->add_option("--upto", upto, "largest k, r or p")->check(CLI::PositiveNumber);
    vl->add_option("--out", out, "output file");

    // experiment run
    std::string config;
    auto* ex = app.add_subcommand("experiment", "configured experiments");
    ex->require_subcommand(1);
    auto* exr = ex->add_subcommand("run", "run a JSON config; writes <output>.csv and <output>.json");
    exr->add_option("--config", config, "config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        auto rng = make_rng(g.seed);
        if (*sq) {
            auto pq = sample_pointed_quadrangulation(n, rng);
            emit(out, to_pmap(pq.map, nullptr, &pq.label));
        } else if (*tu) {
            auto doc = parse_pmap(read_all(in));
            auto img = tutte_forward(doc.map, convention == "right" ? TutteRoot::RightFace : TutteRoot::LeftFace);
            emit(out, to_pmap(img.map));
        } else if (*de) {
            auto doc = parse_pmap(read_all(in));
            if (!doc.map.marked()) throw std::invalid_argument("decompose needs a marked vertex");
            auto c = as_cylinder(truncated_hull(doc.map, *doc.map.marked(), radius));
            emit(out, skeleton_decompose(c).to_text());
        } else if (*di) {
            auto doc = parse_pmap(read_all(in));
            auto w = WeightSpec::parse(weights);
            auto wa = w.sample(doc.map.edge_count(), rng);
            Adjacency adj(doc.map);
            std::uniform_int_distribution<int> pick(0, adj.vertex_count() - 1);
            Table t{{"x", "y", "d_gr", "d_fpp"}, {}};
            std::vector<int> dist, queue;
            std::vector<double> fd;
            for (int i = 0; i < pairs; ++i) {
                int x = pick(rng), y = pick(rng);
                int src[1] = {x};
                bfs(adj, src, dist, queue);
                dijkstra(adj, wa.weight, src, fd);
                t.rows.push_back({x, y, dist[y], fd[y]});
            }
            emit(out, t.render(g.format));
        } else if (*ecp || *ect) {
            auto w = WeightSpec::parse(weights);
            auto est = *ecp ? estimate_cp(depth, reps, w, g.seed) : estimate_cT(depth, reps, w, g.seed);
            Table t{{"depth", "reps", "weights", "estimate", "ci_lo", "ci_hi", "lateral_reach", "fan_fallbacks"},
                    {{est.depth, est.reps, w.to_string(), est.estimate, est.ci_lo, est.ci_hi, est.margin,
                      est.fan_fallbacks}}};
            emit(out, t.render(g.format));
        } else if (*vl) {
            Table t;
            if (which == "theta") {
                auto law = theta_pmf();
                t.header = {"k", "theta"};
                for (int k = 0; k <= upto; ++k) t.rows.push_back({k, law.pmf[k]});
            } else if (which == "pi") {
                t.header = {"r", "pi_r", "g_iterate_at_0"};
                for (int r = 1; r <= upto; ++r) t.rows.push_back({r, pi_r(r), g_iterate(r, 0.0)});
            } else if (which == "hr-ratio") {
                t.header = {"r", "s", "p", "ratio", "exact"};
                for (int p = 1; p <= std::min(upto, 6); ++p) {
                    auto [a, b] = hr_ratio_exact(1, 2, p);
                    t.rows.push_back({1, 2, p, hr_ratio(1, 2, p), std::to_string(a) + "/" + std::to_string(b)});
                }
            } else {
                t.header = {"r", "p", "phi", "shape_ratio", "p_pi_pow"};
                for (int r : {1, 2, 5, 10})
                    for (int p = 1; p <= upto; ++p)
                        t.rows.push_back({r, p, phi(r, p), phi(r, p) / phi(r, 1), p * std::pow(pi_r(r), p - 1)});
            }
            emit(out, t.render(g.format));
        } else if (*exr) {
            auto cfg = ExperimentConfig::from_json(read_all(config));
            run(cfg);
        }
    } catch (const ConfigError& e) {
        return fail("config", e.what(), 2);
    } catch (const std::invalid_argument& e) {
        return fail("invalid_argument", e.what(), 2);
    } catch (const std::exception& e) {
        return fail("runtime", e.what(), 1);
    }
    return 0;
}
