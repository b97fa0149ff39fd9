#include <vcdlab/lp.hpp>
#include <vcdlab/rng.hpp>

#include <gtest/gtest.h>

using namespace vcdlab;

TEST(DenseSimplex, SolvesSmallLp) {
    // max 3x + 2y  s.t.  x + y <= 4, x + 3y <= 6, x <= 3  ->  x=3, y=1, value 11.
    DenseSimplex lp(3, 2);
    lp.set_coefficient(0, 0, 1); lp.set_coefficient(0, 1, 1); lp.set_rhs(0, 4);
    lp.set_coefficient(1, 0, 1); lp.set_coefficient(1, 1, 3); lp.set_rhs(1, 6);
    lp.set_coefficient(2, 0, 1); lp.set_rhs(2, 3);
    lp.set_objective(0, 3); lp.set_objective(1, 2);
    const auto sol = lp.solve();
    ASSERT_EQ(sol.status, LpSolution::Status::optimal);
    EXPECT_NEAR(sol.value, 11.0, 1e-12);
    EXPECT_NEAR(sol.x[0], 3.0, 1e-12);
    EXPECT_NEAR(sol.x[1], 1.0, 1e-12);
}

TEST(DenseSimplex, DetectsUnbounded) {
    DenseSimplex lp(1, 2);
    lp.set_coefficient(0, 0, 1); lp.set_coefficient(0, 1, -1); lp.set_rhs(0, 1);
    lp.set_objective(1, 1);
    EXPECT_EQ(lp.solve().status, LpSolution::Status::unbounded);
}

TEST(MaxMargin, XorLabelingIsInfeasible) {
    const PointSet square(2, {{0, 0}, {1, 1}, {1, 0}, {0, 1}});
    const bool xorlab[] = {false, false, true, true};
    const auto r = max_margin(square, xorlab);
    EXPECT_EQ(r.verdict, Realizability::infeasible);
    EXPECT_LE(r.margin, kZeroMargin);
}

TEST(MaxMargin, SeparatorCertifiesLabeling) {
    Rng rng(5);
    const PointSet B(2, {{0, 0}, {1, 0}, {0, 1}, {2, 2}, {-1, 0.5}});
    for (unsigned mask = 0; mask < 32; ++mask) {
        bool lab[5];
        for (int i = 0; i < 5; ++i) lab[i] = (mask >> i) & 1U;
        const auto r = max_margin(B, lab);
        if (r.verdict != Realizability::realizable) continue;
        EXPECT_LE(std::fabs(r.b), 1.0 + 1e-12);
        for (std::size_t i = 0; i < B.size(); ++i) {
            const double v = r.w[0] * B[i][0] + r.w[1] * B[i][1] + r.b;
            EXPECT_EQ(v > 0.0, lab[i]);
            EXPECT_GE((lab[i] ? v : -v), r.margin - 1e-9);
        }
    }
}

TEST(MaxMargin, ComplementHasSameMargin) {
    Rng rng(9);
    for (int t = 0; t < 50; ++t) {
        std::vector<Point> pts;
        for (int i = 0; i < 6; ++i) pts.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
        const PointSet B(2, pts);
        bool lab[6], comp[6];
        for (int i = 0; i < 6; ++i) {
            lab[i] = rng.below(2) == 1;
            comp[i] = !lab[i];
        }
        EXPECT_NEAR(max_margin(B, lab).margin, max_margin(B, comp).margin, 1e-12);
    }
}
