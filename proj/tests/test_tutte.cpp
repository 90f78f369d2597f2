#include <gtest/gtest.h>

#include <set>

#include "mapfpp/canonical.hpp"
#include "mapfpp/cvs.hpp"
#include "mapfpp/distances.hpp"
#include "mapfpp/errors.hpp"
#include "mapfpp/tutte.hpp"

using namespace mapfpp;

TEST(TutteForward, OneFaceCensus) {
    auto c = cvs_exhaustive(1);
    std::set<std::vector<int>> rooted, images;
    for (const auto& q : c.pointed) {
        auto code = canonical_code(q.map, false);
        if (!rooted.insert(code).second) continue;
        auto m = tutte_forward(q.map.with_marked(std::nullopt));
        EXPECT_EQ(m.map.edge_count(), 1);
        images.insert(canonical_code(m.map));
    }
    EXPECT_EQ(rooted.size(), 2u);
    EXPECT_EQ(images.size(), 2u);
}

TEST(TutteForward, EdgeCountAndDiagonals) {
    Rng rng(41);
    for (int n : {7, 50, 300}) {
        auto q = sample_pointed_quadrangulation(n, rng);
        auto m = tutte_forward(q.map);
        EXPECT_EQ(m.map.edge_count(), n);
        Adjacency g(q.map);
        std::vector<int> d, buf;
        for (int h = 0; h < m.map.half_edge_count(); h += 2) {
            int x = m.vertex_to_q[m.map.origin(h)], y = m.vertex_to_q[m.map.target(h)];
            EXPECT_TRUE(q.white[x] && q.white[y]);
            bfs(g, std::span<const int>(&x, 1), d, buf);
            EXPECT_EQ(d[y], x == y ? 0 : 2);
        }
        EXPECT_EQ(m.vertex_to_q[m.map.root_vertex()], q.map.root_vertex());
    }
}

TEST(TutteForward, RejectsNonQuadrangulations) {
    auto tri = RotationMap::from_rotations({{0, 5}, {1, 2}, {3, 4}}, 0);
    EXPECT_THROW(tutte_forward(tri), NotQuadrangulation);
    // one face of degree 4 with an odd cycle is impossible; a loop plus a pendant edge
    auto odd = RotationMap::from_rotations({{0, 1, 2}, {3}}, 0);
    EXPECT_THROW(tutte_forward(odd), NotQuadrangulation);
}

TEST(TutteInverse, SingleLoop) {
    auto loop = RotationMap::from_rotations({{0, 1}}, 0);
    auto q = tutte_inverse(loop);
    EXPECT_EQ(q.face_count(), 1);
    EXPECT_EQ(q.face_degree(0), 4);
    EXPECT_EQ(canonical_code(tutte_forward(q).map), canonical_code(loop));
}

TEST(TutteInverse, RoundTripBothConventions) {
    Rng rng(42);
    for (int i = 0; i < 500; ++i) {
        int n = 1 + static_cast<int>(rng() % 200);
        auto q = sample_pointed_quadrangulation(n, rng).map.with_marked(std::nullopt);
        for (auto conv : {TutteRoot::RightFace, TutteRoot::LeftFace}) {
            auto m = tutte_forward(q, conv);
            auto q2 = tutte_inverse(m.map, conv);
            ASSERT_EQ(canonical_code(q2), canonical_code(q)) << i;
            auto m2 = tutte_forward(q2, conv);
            ASSERT_EQ(canonical_code(m2.map), canonical_code(m.map));
        }
    }
}

TEST(TutteInverse, FaceDegreeIsBlackDegree) {
    Rng rng(43);
    for (int i = 0; i < 50; ++i) {
        auto q = sample_pointed_quadrangulation(100, rng);
        auto m = tutte_forward(q.map);
        for (int f = 0; f < m.map.face_count(); ++f) {
            auto c = m.map.face(f);
            int b = m.left_black[c[0]];
            for (int h : c) EXPECT_EQ(m.left_black[h], b);
            EXPECT_EQ(static_cast<int>(c.size()), q.map.degree(b));
        }
    }
}

TEST(TutteForward, HalfDistanceBound) {
    Rng rng(44);
    for (int n : {200, 2000}) {
        auto q = sample_pointed_quadrangulation(n, rng);
        auto m = tutte_forward(q.map);
        Adjacency gq(q.map), gm(m.map);
        std::vector<int> dq, dm, buf;
        for (int x = 0; x < m.map.vertex_count(); x += (n > 500 ? 7 : 1)) {
            int xq = m.vertex_to_q[x];
            bfs(gq, std::span<const int>(&xq, 1), dq, buf);
            bfs(gm, std::span<const int>(&x, 1), dm, buf);
            for (int y = 0; y < m.map.vertex_count(); ++y)
                ASSERT_GE(dm[y], (dq[m.vertex_to_q[y]] + 1) / 2);
        }
    }
}

TEST(TutteForward, WhiteFractionNearHalf) {
    Rng rng(45);
    double s = 0;
    for (int i = 0; i < 200; ++i) {
        auto q = sample_pointed_quadrangulation(10000, rng);
        auto m = tutte_forward(q.map);
        s += double(m.map.vertex_count()) / q.map.vertex_count();
    }
    s /= 200;
    EXPECT_GE(s, 0.47);
    EXPECT_LE(s, 0.53);
}
