#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mpg/oracles.hpp"
#include "mpg/solver.hpp"

using namespace mpg;
using namespace mpg::fixtures;

TEST(Rational, Normalised) {
    EXPECT_EQ(Rational::make(2, -4), (Rational{-1, 2}));
    EXPECT_EQ(Rational::make(0, 7), (Rational{0, 1}));
    EXPECT_EQ(Rational::make(-6, 3).str(), "-2");
    EXPECT_EQ(Rational::make(3, 6).str(), "1/2");
    EXPECT_TRUE(Rational::make(-1, 2) < Rational::make(-1, 3));
    EXPECT_THROW(Rational::make(1, 0), std::invalid_argument);
}

TEST(SolveValues, Examples) {
    EXPECT_EQ(solve_values(g1()).values, (std::vector<Rational>{{-1, 1}}));
    EXPECT_EQ(solve_values(g3()).values, (std::vector<Rational>{{-1, 2}, {-1, 2}}));
    EXPECT_EQ(solve_values(g4()).values, (std::vector<Rational>{{0, 1}, {0, 1}}));
    EXPECT_EQ(solve_values(g5()).values, (std::vector<Rational>{{1, 1}, {1, 1}, {1, 1}, {-1, 1}}));
}

TEST(SolveValues, LogarithmicSolveCount) {
    const ValueResult r = solve_values(g5());
    // Each vertex group is split by bisection over 2·n²·W + 1 candidates.
    EXPECT_LE(r.threshold_solves, 4u * 8u);
    EXPECT_GT(r.threshold_solves, 0u);
}

TEST(SolveValues, MatchesBruteForce) {
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        const Game g = corpus_game(seed, 6);
        const ValueResult r = solve_values(g);
        const BruteForceResult want = brute_force_solve(g);
        ASSERT_EQ(r.values, want.values) << seed;
        for (const Rational& q : r.values) {
            ASSERT_LE(q.den, static_cast<std::int64_t>(g.n()));
            ASSERT_LE(std::abs(q.num), g.max_abs_weight() * q.den);
        }
    }
}

TEST(SolveValues, WideWeights) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        GenParams p = corpus_params(seed, 6);
        p.weight_bound = 1000000;
        const Game g = gen_random(p);
        ASSERT_EQ(solve_values(g).values, brute_force_solve(g).values) << seed;
    }
}

TEST(SolveValues, OverflowGuard) {
    const Weight w = Weight{1} << 56;
    const Game g = make({MIN, MIN, MIN, MIN}, {{0, 0, w}, {1, 1, w}, {2, 2, w}, {3, 3, w}});
    EXPECT_THROW(solve_values(g), OverflowError);
}
