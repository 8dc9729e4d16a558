#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mpg/oracles.hpp"

using namespace mpg;
using namespace mpg::fixtures;

TEST(SplitMix, ReferenceStream) {
    // First outputs for seed 0 of the published generator.
    SplitMix64 rng(0);
    EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
    EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(SplitMix, Ranges) {
    SplitMix64 rng(1);
    for (int i = 0; i < 10000; ++i) {
        EXPECT_LT(rng.below(7), 7u);
        const auto x = rng.between(-3, 3);
        EXPECT_GE(x, -3);
        EXPECT_LE(x, 3);
    }
    EXPECT_EQ(rng.between(5, 5), 5);
}

TEST(Generator, Deterministic) {
    GenParams p;
    p.seed = 77;
    EXPECT_EQ(gen_random(p), gen_random(p));
    p.seed = 78;
    GenParams q = p;
    q.seed = 79;
    EXPECT_NE(gen_random(p), gen_random(q));
}

TEST(Generator, DegreesAndWeights) {
    for (GenModel model : {GenModel::uniform, GenModel::cycle_heavy, GenModel::layered}) {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            GenParams p;
            p.n = 5;
            p.min_out_degree = 1;
            p.max_out_degree = 3;
            p.weight_bound = 4;
            p.model = model;
            p.seed = seed;
            const Game g = gen_random(p);
            ASSERT_EQ(g.n(), 5u);
            for (Vertex v = 0; v < g.n(); ++v) {
                ASSERT_GE(g.out_edges(v).size(), 1u);
                ASSERT_LE(g.out_edges(v).size(), 3u);
            }
            ASSERT_LE(g.max_abs_weight(), 4);
        }
    }
}

TEST(Generator, MinFraction) {
    GenParams p;
    p.n = 1000;
    p.min_fraction_num = 0;
    const Game none = gen_random(p);
    EXPECT_EQ(std::count(none.owners().begin(), none.owners().end(), Player::min), 0);
    p.min_fraction_num = 1;
    p.min_fraction_den = 1;
    const Game all = gen_random(p);
    EXPECT_EQ(std::count(all.owners().begin(), all.owners().end(), Player::min), 1000);
    p.min_fraction_den = 4;
    const Game quarter = gen_random(p);
    const auto mins = std::count(quarter.owners().begin(), quarter.owners().end(), Player::min);
    EXPECT_GT(mins, 180);
    EXPECT_LT(mins, 320);
}

TEST(Generator, BadParams) {
    GenParams p;
    p.min_out_degree = 0;
    EXPECT_THROW(gen_random(p), std::invalid_argument);
    p = {};
    p.max_out_degree = 0;
    EXPECT_THROW(gen_random(p), std::invalid_argument);
    p = {};
    p.weight_bound = 0;
    EXPECT_THROW(gen_random(p), std::invalid_argument);
    p = {};
    p.n = 0;
    EXPECT_TRUE(gen_random(p).empty());
    p = {};
    p.min_fraction_num = 3;
    EXPECT_THROW(gen_random(p), std::invalid_argument);
}

TEST(Generator, CycleHeavyHasHamiltonianCycle) {
    GenParams p;
    p.n = 50;
    p.model = GenModel::cycle_heavy;
    const Game g = gen_random(p);
    // The planted cycle makes every vertex reachable from vertex 0.
    std::vector<std::uint8_t> seen(g.n(), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (EdgeId e : g.out_edges(v))
            if (!seen[g.edge(e).dst]++) stack.push_back(g.edge(e).dst);
    }
    EXPECT_EQ(std::count(seen.begin(), seen.end(), 0), 0);
}

TEST(Generator, CorpusParams) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const GenParams p = corpus_params(seed, 8);
        ASSERT_GE(p.n, 1u);
        ASSERT_LE(p.n, 8u);
        ASSERT_EQ(p.seed, seed);
        ASSERT_LE(profile_count(gen_random(p)), default_budget);
    }
}

TEST(PlantZeroCycle, ExclusiveCycleHasValueZero) {
    SplitMix64 rng(3);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Game base = corpus_game(seed, 6);
        const std::size_t len = 1 + rng.below(base.n());
        const Game g = plant_zero_cycle(base, len, true, rng);
        const BruteForceResult bf = brute_force_solve(g);
        std::size_t zeros = 0;
        for (const Rational& v : bf.values) zeros += v.num == 0;
        ASSERT_GE(zeros, len) << seed;
    }
    EXPECT_THROW(plant_zero_cycle(g1(), 2, false, rng), std::invalid_argument);
}
