#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "mapfpp/canonical.hpp"
#include "mapfpp/cvs.hpp"
#include "mapfpp/errors.hpp"
#include "mapfpp/hull.hpp"
#include "mapfpp/plane_tree.hpp"

using namespace mapfpp;

namespace {

struct Sample {
    PointedQuadrangulation pq;
    int target;
    Labels lab;
};

Sample sample(int n, Rng& rng) {
    Sample s{sample_pointed_quadrangulation(n, rng), 0, {}};
    s.target = *s.pq.map.marked();
    s.lab = root_distances(s.pq.map);
    return s;
}

// faces of the complement of `keep`, grouped by shared edges
std::vector<int> complement_components(const RotationMap& q, const std::vector<char>& keep) {
    std::vector<int> parent(q.face_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int h = 0; h < q.half_edge_count(); h += 2) {
        int a = q.face_of(h), b = q.face_of(h + 1);
        if (!keep[a] && !keep[b]) parent[find(a)] = find(b);
    }
    std::vector<int> comp(q.face_count());
    for (int f = 0; f < q.face_count(); ++f) comp[f] = keep[f] ? -1 : find(f);
    return comp;
}

bool subset(const std::vector<char>& a, const std::vector<char>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

}  // namespace

TEST(Ball, RadiusOneIsRootStar) {
    Rng rng(31);
    auto s = sample(200, rng);
    auto b = ball(s.pq.map, 1.0);
    const auto& q = s.pq.map;
    for (int f = 0; f < q.face_count(); ++f) {
        bool touches = false;
        for (int h : q.face(f)) touches |= q.origin(h) == q.root_vertex();
        EXPECT_EQ(static_cast<bool>(b.face_in[f]), touches);
    }
    EXPECT_THROW(ball(q, 0.5), std::invalid_argument);
}

TEST(Ball, LargeRadiusIsWholeMap) {
    Rng rng(32);
    auto s = sample(100, rng);
    auto ecc = *std::max_element(s.lab.begin(), s.lab.end());
    auto b = ball(s.pq.map, static_cast<double>(ecc + 1));
    EXPECT_TRUE(std::all_of(b.face_in.begin(), b.face_in.end(), [](char c) { return c; }));
    EXPECT_EQ(b.sub.map.half_edge_count(), s.pq.map.half_edge_count());
    EXPECT_EQ(b.outer_face, -1);
}

TEST(Ball, FaceScanOracleAndFractionalRadius) {
    Rng rng(33);
    for (int it = 0; it < 20; ++it) {
        auto s = sample(300, rng);
        const auto& q = s.pq.map;
        auto b = ball(q, 3.0);
        for (int f = 0; f < q.face_count(); ++f) {
            std::int64_t lo = 1 << 30;
            for (int h : q.face(f)) lo = std::min(lo, s.lab[q.origin(h)]);
            EXPECT_EQ(static_cast<bool>(b.face_in[f]), lo <= 2);
        }
        EXPECT_EQ(ball(q, 3.7).face_in, b.face_in);
    }
}

TEST(Hull, RadiusBounds) {
    Rng rng(34);
    auto s = sample(200, rng);
    auto d = static_cast<int>(s.lab[s.target]);
    EXPECT_THROW(hull(s.pq.map, s.target, 0), RadiusTooLarge);
    EXPECT_THROW(hull(s.pq.map, s.target, d - 1), RadiusTooLarge);
    if (d >= 3) EXPECT_NO_THROW(hull(s.pq.map, s.target, d - 2));
}

TEST(Hull, ComponentOracleAndMonotone) {
    Rng rng(35);
    int absorbed = 0;
    for (int it = 0; it < 60; ++it) {
        auto s = sample(500, rng);
        const auto& q = s.pq.map;
        const int d = static_cast<int>(s.lab[s.target]);
        for (int r = 1; r <= d - 2; ++r) {
            auto b = ball(q, r);
            auto h = hull(q, s.target, r);
            auto comp = complement_components(q, b.face_in);
            int tc = comp[q.face_of(q.rotation(s.target)[0])];
            for (int f = 0; f < q.face_count(); ++f) {
                bool expect = b.face_in[f] || comp[f] != tc;
                ASSERT_EQ(static_cast<bool>(h.face_in[f]), expect);
            }
            absorbed += h.face_in != b.face_in;
            EXPECT_TRUE(subset(b.face_in, h.face_in));
            if (r + 1 <= d - 2) EXPECT_TRUE(subset(h.face_in, hull(q, s.target, r + 1).face_in));
            // single outer face with a simple boundary
            ASSERT_GE(h.outer_face, 0);
            auto of = h.sub.map.face(h.outer_face);
            std::vector<int> vs;
            for (int x : of) vs.push_back(h.sub.map.origin(x));
            std::sort(vs.begin(), vs.end());
            EXPECT_EQ(std::adjacent_find(vs.begin(), vs.end()), vs.end());
        }
    }
    EXPECT_GT(absorbed, 0);
}

TEST(BoundaryCycle, LabelsAndSeparation) {
    Rng rng(36);
    for (int it = 0; it < 100; ++it) {
        auto s = sample(500, rng);
        const auto& q = s.pq.map;
        const int d = static_cast<int>(s.lab[s.target]);
        if (d < 2) continue;
        EXPECT_THROW(boundary_cycle(q, s.target, d), NoCycle);
        EXPECT_THROW(boundary_cycle(q, s.target, 0), NoCycle);
        int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(d - 1));
        auto cyc = boundary_cycle(q, s.target, r);
        std::vector<char> on(q.vertex_count(), 0);
        for (int v : cyc.vertices) {
            EXPECT_EQ(s.lab[v], r);
            on[v] = 1;
        }
        for (std::size_t i = 0; i < cyc.corners.size(); ++i) {
            EXPECT_EQ(q.origin(cyc.corners[i].first), cyc.vertices[i]);
            EXPECT_EQ(q.origin(cyc.corners[i].second), cyc.vertices[(i + 1) % cyc.vertices.size()]);
        }
        // far whole faces carry no vertex labelled <= r except on the cycle
        for (int f = 0; f < q.face_count(); ++f)
            if (cyc.far[f])
                for (int h : q.face(f)) EXPECT_TRUE(s.lab[q.origin(h)] > r || on[q.origin(h)]);
        // no path from the root to the target avoids the cycle
        std::vector<char> seen(q.vertex_count(), 0);
        std::deque<int> queue{q.root_vertex()};
        seen[q.root_vertex()] = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int h : q.rotation(v)) {
                int w = q.target(h);
                if (!seen[w] && !on[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
            }
        }
        EXPECT_FALSE(seen[s.target]);
    }
}

TEST(TruncatedHull, CylinderShape) {
    Rng rng(37);
    for (int it = 0; it < 100; ++it) {
        auto s = sample(500, rng);
        const int d = static_cast<int>(s.lab[s.target]);
        if (d < 2) continue;
        int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(d - 1));
        auto th = truncated_hull(s.pq.map, s.target, r);
        auto cyc = boundary_cycle(s.pq.map, s.target, r);
        EXPECT_EQ(th.top.size(), cyc.vertices.size());
        for (int h : th.top) EXPECT_EQ(th.level[th.map.origin(h)], r);
        auto c = as_cylinder(th);
        EXPECT_EQ(c.height, r);
        EXPECT_EQ(c.bottom.size(), 1u);
        EXPECT_EQ(c.top.size(), th.top.size());
        EXPECT_NO_THROW(c.validate());
        EXPECT_EQ(c.map.vertex_count(), th.map.vertex_count());
        EXPECT_EQ(c.map.edge_count(), th.map.edge_count() + 2);
    }
}

TEST(TruncatedHull, ValidateRejectsBrokenCylinder) {
    Rng rng(38);
    auto s = sample(300, rng);
    while (s.lab[s.target] < 2) s = sample(300, rng);
    auto c = as_cylinder(truncated_hull(s.pq.map, s.target, 1));
    auto bad = c;
    bad.height += 1;
    EXPECT_THROW(bad.validate(), NotCylinder);
    bad = c;
    bad.map = bad.map.with_root(c.top.front());
    EXPECT_THROW(bad.validate(), NotCylinder);
}

// The hull at radius r-3 only sees the pruned tree.
TEST(PrunedTreeLocality, HullUnchanged) {
    Rng rng(39);
    int checked = 0;
    for (int it = 0; it < 400 && checked < 60; ++it) {
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
        auto h1 = hull(q.map, *q.map.marked(), r - 3);
        auto h2 = hull(q2.map, *q2.map.marked(), r - 3);
        EXPECT_EQ(canonical_code(h1.sub.map, false), canonical_code(h2.sub.map, false));
        ++checked;
    }
    EXPECT_GE(checked, 20);
}
