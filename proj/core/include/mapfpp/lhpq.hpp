#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mapfpp/distances.hpp"
#include "mapfpp/rng.hpp"
#include "mapfpp/skeleton.hpp"

namespace mapfpp {

// Slot filling flattened for gluing. Local vertex 0 is the apex, 1..c+1 the
// lower boundary left to right, the rest interior.
struct SlotShape {
    int children = 0;
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;  // sides and interior edges
    int x_edge = 0;                          // index in `edges` of the left side
    std::vector<char> parity;                // distance parity from the apex
    std::vector<int> offset;                 // level relative to the apex, 1 on the lower boundary
    std::vector<std::pair<int, int>> diag_even, diag_odd;  // inner quads, by corner parity
    std::vector<int> child_apex;             // third vertex of the triangle on each child
    bool good = false;                       // one child, single triangle

    static SlotShape from(const TruncatedQuadrangulation& s);
};

// Slot fillings grouped by perimeter, drawn with replacement.
class SlotPool {
public:
    struct HarvestOptions {
        int quadrangulations = 50;
        int n = 20000;
        int radius = 8;
    };

    void add(TruncatedQuadrangulation s);
    static SlotPool harvest(const HarvestOptions& opt, Rng& rng);

    std::size_t size() const { return shapes_.size(); }
    std::size_t count(int perimeter) const;
    int max_perimeter() const;
    // index into shapes(); nullopt when the perimeter is missing
    std::optional<int> draw(int perimeter, Rng& rng) const;
    const std::vector<SlotShape>& shapes() const { return shapes_; }
    const std::vector<TruncatedQuadrangulation>& slots() const { return slots_; }
    // fraction of perimeter-2 fillings that are a single triangle
    double good_fraction() const;

    std::string provenance;

    // "SLOTPOOL 1", provenance line, then per perimeter "perimeter p count m"
    // followed by m PMAP blocks each ending in a blank line
    std::string to_text() const;
    static SlotPool from_text(const std::string& text);
    void save(const std::string& path) const;
    static SlotPool load(const std::string& path);

private:
    std::vector<TruncatedQuadrangulation> slots_;
    std::vector<SlotShape> shapes_;
    std::map<int, std::vector<int>> by_perimeter_;
};

enum class SlotSource { AtomsOnly, Harvested };

struct LhpqOptions {
    SlotSource source = SlotSource::AtomsOnly;
    const SlotPool* pool = nullptr;
    bool fan_fallback = false;  // fans for perimeters missing from the pool
    bool top_edges = true;      // horizontal edges of the top line; off gives the tilde variant
    bool lattice_graph = true;  // keep the map's own edges
    bool tutte_graph = false;   // keep the image with white vertices at even depth
    WeightSpec weights;         // i.i.d. per edge, drawn per slot
    // c_k(0), c_k(1), ... forced at level k; the rest is random
    std::vector<std::vector<int>> fixed_offspring;
};

// The lower half-plane quadrangulation, generated on demand. Lattice vertex
// (x, -k) sits on line k; the edge from (x,-k) to (x+1,-k) has c_k(x) i.i.d.
// offspring whose edges are x' in [S_k(x), S_k(x+1)) on line k+1, with
// S_k(0) = 0. The triangle below that edge has its bottom at S_k(x+1).
class Lhpq {
public:
    enum class Graph { Lattice, Tutte };

    Lhpq(std::uint64_t seed, LhpqOptions opt);

    std::uint64_t seed() const { return seed_; }
    const LhpqOptions& options() const { return opt_; }

    std::int64_t offspring(int k, std::int64_t x);
    std::int64_t first_child(int k, std::int64_t x);  // S_k(x)
    std::int64_t parent(int k, std::int64_t y);       // x with S_k(x) <= y < S_k(x+1)
    // S_k o ... o S_{k-1+steps}; position on line k+steps of the left-most geodesic
    std::int64_t descend(int k, std::int64_t x, int steps);
    // edge (x,-k)->(x+1,-k) has offspring on line k+h
    bool reaches(int k, std::int64_t x, int h);

    int vertex(int k, std::int64_t x);  // created on demand
    int root() { return vertex(0, 0); }
    std::optional<int> find_vertex(int k, std::int64_t x) const;
    int vertex_count() const { return static_cast<int>(level_.size()); }
    int line(int v) const { return level_[v]; }  // -1 inside a slot
    std::int64_t position(int v) const { return pos_[v]; }
    // D - d(v, line D) for every line D below v; equals k on line k
    int depth(int v) const { return depth_[v]; }
    bool white(int v) const { return (depth_[v] & 1) == 0; }

    // shape index chosen for the slot of edge (x,-k); counts fallbacks
    const SlotShape& slot_shape(int k, std::int64_t x);
    bool good(int k, std::int64_t x);
    bool slot_built(int k, std::int64_t x) const;
    void build_slot(int k, std::int64_t x);
    // slots whose faces touch lattice vertex (x,-k)
    std::vector<std::pair<int, std::int64_t>> slots_around(int k, std::int64_t x);
    // build every face around v
    void complete(int v);
    bool completed(int v) const { return done_[v] != 0; }

    struct Half {
        int to;
        int next;
        double w;
    };
    template <typename F>
    void for_each_neighbour(int v, Graph g, F&& f) const {
        const auto& arena = g == Graph::Lattice ? lat_ : tut_;
        const auto& head = g == Graph::Lattice ? lat_head_ : tut_head_;
        for (int i = head[v]; i >= 0; i = arena[i].next) f(arena[i].to, arena[i].w);
    }
    std::int64_t edge_count(Graph g) const {
        return static_cast<std::int64_t>((g == Graph::Lattice ? lat_ : tut_).size() / 2);
    }

    // slot record: global ids of its local vertices
    std::vector<int> slot_vertices(int k, std::int64_t x);

    int fan_fallbacks() const { return fallbacks_; }
    std::int64_t slots_built() const { return static_cast<std::int64_t>(slots_.size()); }

    struct Search {
        double distance = 0.0;
        int hit = -1;
        std::int64_t settled = 0;
        std::int64_t lateral = 0;  // largest |x| of a settled lattice vertex
    };
    // distance from `source` to line D, building faces as vertices settle.
    // A* on the depth bound; exact.
    Search distance_to_line(int source, int D, Graph g);
    // distance between two vertices; stops when `target` settles
    Search distance_between(int source, int target, Graph g);

private:
    struct Level {
        std::vector<std::int64_t> cum_pos{0}, cum_neg{0};
        Rng pos, neg;
    };
    struct SlotRec {
        int shape;
        int base;  // first interior vertex
    };

    Level& level(int k);
    void extend_pos(Level& L, int k, std::size_t n);
    void extend_neg(Level& L, int k, std::size_t n);
    int new_vertex(int k, std::int64_t x, int depth);
    void add_edge(std::vector<Half>& arena, std::vector<int>& head, int a, int b, double w);
    int shape_index(int k, std::int64_t x);
    const SlotShape& shape_by_id(int id) const;
    Search search(int source, int target_line, int target_vertex, Graph g);

    std::uint64_t seed_;
    LhpqOptions opt_;
    std::vector<Level> levels_;
    std::unordered_map<std::uint64_t, int> lattice_;
    std::unordered_map<std::uint64_t, SlotRec> slots_;
    std::unordered_map<std::uint64_t, int> shape_of_;
    std::vector<int> level_;
    std::vector<std::int64_t> pos_;
    std::vector<int> depth_;
    std::vector<char> done_;
    std::vector<Half> lat_, tut_;
    std::vector<int> lat_head_, tut_head_;
    std::map<int, SlotShape> fans_;  // by c; index -1-c in shape ids
    int fallbacks_ = 0;
};

// Finite window: slots of lines 0..D-1 over x in [-W, W).
struct LhpqWindow {
    Lhpq map;
    int half_width = 0;
    int depth = 0;
    int margin = 0;               // certified graph radius around (0,0)
    std::vector<char> complete;   // per vertex, at build time
    int root = -1;
};

// throws WindowTooSmall, SlotPoolExhausted
LhpqWindow build_window(int W, int D, const LhpqOptions& opt, Rng& rng);

struct Block {
    std::int64_t left_top = 0, right_top = 0;  // boundary geodesics start at (left_top, j), (right_top, j)
    std::vector<int> left, right;             // boundary vertices top to bottom
    std::vector<std::pair<int, int>> edges;
    int thickness = 0;
};

struct BlockDecomposition {
    int top = 0, bottom = 0;           // j and j'
    std::vector<std::int64_t> xi;      // xi[0] = -1
    std::vector<Block> blocks;
};

// half-slice between lines j and j' (0 >= j > j'), blocks whose cut index is below W
// (or the first `max_blocks`); throws NoFullHeightTree
BlockDecomposition block_decompose(LhpqWindow& w, int j, int jp, int max_blocks = 3);

// cut indices alone, no slots built
std::vector<std::int64_t> cut_indices(Lhpq& m, int j, int jp, int count, std::int64_t limit);

// per-level lateral steps + 1 of the downward path from (0,0) down to line `levels`
// (even); the left variant moves toward -x
std::vector<int> lhpq_downward_increments(Lhpq& m, int levels, bool right = false);
// vertices of that path
std::vector<int> lhpq_downward_path(Lhpq& m, int levels, bool right = false);

struct ConstantEstimate {
    int depth = 0;
    double estimate = 0.0, ci_lo = 0.0, ci_hi = 0.0;
    int reps = 0;
    std::int64_t margin = 0;  // largest lateral reach among replicas
    std::vector<double> samples;
    int fan_fallbacks = 0;
};

// d(rho, line D) / D in the map without its top horizontal edges
ConstantEstimate estimate_cp(int D, int reps, const WeightSpec& w, std::uint64_t seed,
                             const LhpqOptions& base = {});
// the same in the image with white vertices at even depth; D even
ConstantEstimate estimate_cT(int D, int reps, const WeightSpec& w, std::uint64_t seed,
                             const LhpqOptions& base = {});

}  // namespace mapfpp
