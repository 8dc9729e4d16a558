#pragma once

#include <map>

#include "mpg/game.hpp"
#include "mpg/solver.hpp"

// Reference implementations used only to check the solver. They share no
// code with it beyond the Game type.

namespace mpg {

struct OracleValue {
    enum class Kind { finite, plus_inf, minus_inf };
    Kind kind = Kind::finite;
    Weight value = 0;

    static OracleValue finite(Weight w) { return {Kind::finite, w}; }
    static OracleValue plus_inf() { return {Kind::plus_inf, 0}; }
    static OracleValue minus_inf() { return {Kind::minus_inf, 0}; }
    bool is_finite() const { return kind == Kind::finite; }

    friend bool operator==(const OracleValue&, const OracleValue&) = default;
    friend bool operator<(const OracleValue& a, const OracleValue& b);
    std::string str() const;
};

constexpr std::uint64_t default_budget = std::uint64_t{1} << 20;

/// Number of positional strategy profiles (saturates at UINT64_MAX).
std::uint64_t profile_count(const Game& g);

struct BruteForceResult {
    VertexSet min_region, max_region;
    std::vector<Rational> values;
};

/// min over Min's positional strategies of max over Max's of the mean of the reached cycle.
BruteForceResult brute_force_solve(const Game& g, std::uint64_t budget = default_budget,
                                   ThresholdMode mode = ThresholdMode::weak);

/// Minimax over positional profiles of the prefix-sum peak until x is first visited.
std::vector<OracleValue> brute_force_supsigma(const Game& g, const VertexSet& x,
                                              std::uint64_t budget = default_budget);

/// Least fixpoint of the sup-energy lifting operator, lifted to +inf past n·W.
std::vector<OracleValue> energy_value_iteration(const Game& g);

enum class CycleBound { strict, allow_zero };

/**
 * Fixes `strategy` for `player` inside `region` and checks that the opponent
 * cannot leave the region and that every reachable cycle has the player's sign:
 * < 0 for Min, > 0 for Max (allow_zero also accepts total 0).
 */
bool verify_strategy(const Game& g, const std::map<Vertex, EdgeId>& strategy, Player player,
                     const VertexSet& region, CycleBound bound = CycleBound::strict);

}  // namespace mpg
