#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mapfpp/rng.hpp"
#include "mapfpp/rotation_map.hpp"

namespace mapfpp {

struct WeightAssignment {
    std::vector<double> weight;  // indexed by edge id h/2
    double kappa = 1.0;

    static WeightAssignment unit(int edge_count);
    // throws WeightOutOfRange
    void validate(int edge_count) const;
};

// unit | uniform:1:K | twopoint:a:b:p  (value a with probability p, else b)
struct WeightSpec {
    enum class Kind { Unit, Uniform, TwoPoint };
    Kind kind = Kind::Unit;
    double lo = 1.0, hi = 1.0, p = 1.0;

    static WeightSpec parse(const std::string& text);
    std::string to_string() const;
    double kappa() const { return hi; }
    bool is_unit() const { return kind == Kind::Unit; }
    double draw(Rng& rng) const;
    WeightAssignment sample(int edge_count, Rng& rng) const;
};

// flat neighbour lists, one entry per half-edge
struct Adjacency {
    std::vector<int> start;  // size V+1
    std::vector<int> nbr;
    std::vector<int> edge;

    explicit Adjacency(const RotationMap& m);
    int vertex_count() const { return static_cast<int>(start.size()) - 1; }
};

std::vector<std::int64_t> graph_distance(const RotationMap& m, std::span<const int> sources);
std::vector<double> fpp_distance(const RotationMap& m, const WeightAssignment& w, std::span<const int> sources);

// reusable-buffer variants; unreachable vertices get -1 / +inf
void bfs(const Adjacency& g, std::span<const int> sources, std::vector<int>& dist, std::vector<int>& queue);
void dijkstra(const Adjacency& g, std::span<const double> edge_weight, std::span<const int> sources,
              std::vector<double>& dist);

}  // namespace mapfpp
