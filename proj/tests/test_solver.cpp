#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mpg/cli.hpp"
#include "mpg/oracles.hpp"
#include "mpg/solver.hpp"

using namespace mpg;
using namespace mpg::fixtures;

namespace {

void expect_certified(const Game& g, const SolveResult& r) {
    EXPECT_TRUE(certifies(g, r.potential, r.min_region, r.max_region));
    EXPECT_EQ(r.min_region.complement(), r.max_region);
}

SolverConfig full_checks() {
    SolverConfig cfg;
    cfg.assertions = AssertionLevel::full;
    return cfg;
}

}  // namespace

TEST(ReduceGame, G1AlreadyReduced) {
    const SolveResult r = reduce_game(g1(), full_checks());
    EXPECT_EQ(r.min_region, set(1, {0}));
    EXPECT_TRUE(r.max_region.empty());
    EXPECT_EQ(r.potential, (Potential{0}));
    EXPECT_EQ(r.stats.recursive_calls, 1u);
}

TEST(ReduceGame, G3) {
    const SolveResult r = reduce_game(g3(), full_checks());
    EXPECT_EQ(r.min_region, VertexSet::full(2));
    EXPECT_EQ(r.potential, (Potential{2, 0}));
    EXPECT_EQ(r.stats.potential_reductions, 1u);
    expect_certified(g3(), r);
}

TEST(ReduceGame, G8AttractorBranch) {
    const SolveResult r = reduce_game(g8(), full_checks());
    EXPECT_TRUE(r.min_region.empty());
    EXPECT_EQ(r.max_region, VertexSet::full(3));
    EXPECT_EQ(r.potential, (Potential{-1, 0, 0}));
    EXPECT_EQ(r.stats.attractor_calls, 1u);
    expect_certified(g8(), r);
}

TEST(ReduceGame, G9MaxEscapeBranch) {
    SolverConfig cfg = full_checks();
    cfg.opt_init = false;
    const SolveResult r = reduce_game(g9(), cfg);
    EXPECT_EQ(r.min_region, VertexSet::full(2));
    EXPECT_EQ(r.potential, (Potential{0, 1}));
    EXPECT_EQ(r.stats.escapes_fixed, 1u);
    EXPECT_EQ(r.stats.potential_reductions, 1u);
    expect_certified(g9(), r);
}

TEST(ReduceGame, EmptyGame) {
    const SolveResult r = reduce_game(Game());
    EXPECT_TRUE(r.min_region.empty());
    EXPECT_TRUE(r.max_region.empty());
    EXPECT_TRUE(r.potential.empty());
}

TEST(ReduceGame, RecursionLimitIsInternalError) {
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        const Game g = preprocess_no_zero_cycles(corpus_game(seed), ThresholdMode::weak);
        SolverConfig cfg;
        const SolveResult r = reduce_game(g, cfg);
        if (r.stats.max_depth < 2) continue;
        cfg.recursion_limit = r.stats.max_depth - 1;
        EXPECT_THROW(reduce_game(g, cfg), InternalError);
        cfg.recursion_limit = r.stats.max_depth;
        EXPECT_NO_THROW(reduce_game(g, cfg));
        return;
    }
    FAIL() << "no corpus game nests two subgame calls";
}

TEST(GlueDelta, Examples) {
    const Game one = make({MIN, MAX}, {{0, 1, -3}, {1, 1, 1}});
    EXPECT_EQ(glue_delta(one, set(2, {0}), set(2, {1}), {0, 0}, {0, 0}), 3);
    EXPECT_EQ(glue_delta(g5(), set(4, {3}), set(4, {0, 1, 2}), Potential(4, 0), Potential(4, 0)), 0);
    EXPECT_EQ(glue_delta(g5(), set(4, {0, 1, 2}), set(4, {3}), Potential(4, 0), Potential(4, 0)), 0);
    // rest {0, 1} with phi' {1, 4}; attracted {2, 3} with phi_A {0, 2}.
    const Game two = make({MIN, MIN, MAX, MAX}, {{0, 2, -3}, {1, 3, 5}, {0, 0, 0}, {1, 1, 0}, {2, 2, 1}, {3, 3, 1}});
    const Potential phi{1, 4, 0, 2};
    EXPECT_EQ(glue_delta(two, set(4, {0, 1}), set(4, {2, 3}), phi, phi), 7);
    // Every cross edge is non-negative after gluing.
    const Weight d = 7;
    const Potential glued{1, 4, 0 + d, 2 + d};
    for (const Edge& e : two.edges())
        if (e.src < 2 && e.dst >= 2) {
            EXPECT_GE(e.weight + glued[e.dst] - glued[e.src], 0);
        }
}

TEST(SolveThreshold, ZeroCycleModes) {
    SolverConfig cfg;
    EXPECT_EQ(solve_threshold(g4(), cfg).min_region, VertexSet::full(2));
    cfg.threshold_mode = ThresholdMode::strict;
    EXPECT_EQ(solve_threshold(g4(), cfg).max_region, VertexSet::full(2));
}

TEST(SolveThreshold, G5) {
    const SolveResult r = solve_threshold(g5());
    EXPECT_EQ(r.min_region, set(4, {3}));
    EXPECT_EQ(r.max_region, set(4, {0, 1, 2}));
}

TEST(Strategies, Examples) {
    const SolveResult r3 = derive_strategies(g3(), reduce_game(g3()));
    ASSERT_EQ(r3.min_strategy.size(), 1u);
    EXPECT_EQ(r3.min_strategy.at(0), find_edge(g3(), 0, 1));
    EXPECT_TRUE(r3.max_strategy.empty());
    const SolveResult r1 = solve_threshold(g1());
    EXPECT_EQ(r1.min_strategy.at(0), 0u);
    const SolveResult r2 = solve_threshold(g2());
    EXPECT_EQ(r2.max_strategy.at(0), 0u);
    EXPECT_TRUE(r2.min_strategy.empty());
}

TEST(Strategies, CorruptCertificate) {
    SolveResult r = reduce_game(g3());
    r.potential = {0, 0};
    EXPECT_THROW(derive_strategies(g3(), r), InternalError);
}

TEST(Solver, MatchesBruteForceUnderEveryConfig) {
    const auto configs = cli::all_configs(AssertionLevel::full);
    ASSERT_EQ(configs.size(), 40u);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Game g = corpus_game(seed);
        const BruteForceResult want = brute_force_solve(g);
        for (const auto& cfg : configs) {
            const SolveResult r = solve_threshold(g, cfg);
            ASSERT_EQ(r.min_region, want.min_region) << seed << ' ' << cli::describe(cfg);
            const Game pre = preprocess_no_zero_cycles(g, cfg.threshold_mode);
            ASSERT_TRUE(certifies(pre, r.potential, r.min_region, r.max_region)) << seed;
            ASSERT_LE(r.stats.max_depth, g.n());
        }
    }
}

TEST(Solver, StrictModeMatchesBruteForce) {
    SolverConfig cfg;
    cfg.threshold_mode = ThresholdMode::strict;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const Game g = corpus_game(seed);
        ASSERT_EQ(solve_threshold(g, cfg).min_region, brute_force_solve(g, default_budget, ThresholdMode::strict).min_region)
            << seed;
    }
}

TEST(Solver, OtherModels) {
    for (GenModel model : {GenModel::cycle_heavy, GenModel::layered}) {
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            const Game g = gen_random(corpus_params(seed, 8, 3, 4, model));
            ASSERT_EQ(solve_threshold(g).min_region, brute_force_solve(g).min_region) << seed;
        }
    }
}

TEST(Solver, Deterministic) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Game g = corpus_game(seed);
        const SolveResult a = solve_threshold(g), b = solve_threshold(g);
        EXPECT_EQ(a.potential, b.potential);
        EXPECT_EQ(a.stats.loop_iterations, b.stats.loop_iterations);
        EXPECT_EQ(a.min_strategy, b.min_strategy);
    }
}

TEST(Solver, DualityInvolution) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Game g = preprocess_no_zero_cycles(corpus_game(seed), ThresholdMode::weak);
        const SolveResult r = reduce_game(g), d = reduce_game(dualize(g));
        ASSERT_EQ(r.min_region, d.max_region) << seed;
    }
}

// Every value fixed through an escape, alone or in bulk, equals the
// brute-force supΣ^N value of the game being worked on.
TEST(Solver, EscapeValuesMatchSupSigma) {
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const Game g = preprocess_no_zero_cycles(corpus_game(seed, 6), ThresholdMode::weak);
        for (bool bulk : {false, true}) {
            SolverConfig cfg;
            cfg.opt_init = false;
            cfg.opt_bulk = bulk;
            cfg.observer = [&](const SolverEvent& e) {
                if (e.kind != SolverEvent::Kind::escape_fixed && e.kind != SolverEvent::Kind::bulk_fixed) return;
                const auto sup = brute_force_supsigma(e.game, compute_zones(e.game).negative);
                for (Vertex v : e.vertices) {
                    ASSERT_EQ(sup[v], OracleValue::finite(e.context.value[v])) << seed << " v" << v;
                    ++checked;
                }
            };
            reduce_game(g, cfg);
        }
    }
    EXPECT_GT(checked, 500u);
}

TEST(Solver, BulkSetsGrowFaster) {
    std::uint64_t with = 0, without = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Game g = corpus_game(seed);
        SolverConfig cfg;
        with += solve_threshold(g, cfg).stats.loop_iterations;
        cfg.opt_bulk = false;
        without += solve_threshold(g, cfg).stats.loop_iterations;
    }
    EXPECT_LE(with, without);
}

TEST(Solver, LargerGamesCertify) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GenParams p;
        p.n = 300;
        p.max_out_degree = 5;
        p.weight_bound = 1000;
        p.seed = seed;
        p.model = static_cast<GenModel>(seed % 3);
        const Game g = gen_random(p);
        const SolveResult r = solve_threshold(g, full_checks());
        const Game pre = preprocess_no_zero_cycles(g, ThresholdMode::weak);
        ASSERT_TRUE(certifies(pre, r.potential, r.min_region, r.max_region)) << seed;
        ASSERT_TRUE(verify_strategy(pre, r.min_strategy, Player::min, r.min_region)) << seed;
        ASSERT_TRUE(verify_strategy(pre, r.max_strategy, Player::max, r.max_region)) << seed;
    }
}
