#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>

#include "mpg/backtracking.hpp"
#include "mpg/game.hpp"
#include "mpg/zones.hpp"

namespace mpg {

/// How each recursive call chooses between computing supΣ^N and infΣ^P.
enum class ChoicePolicy { smaller_zone, always_n, always_p, larger_zone, init_set_size };

enum class AssertionLevel { off, cheap, full };

const char* to_string(ChoicePolicy p);
std::optional<ChoicePolicy> parse_policy(std::string_view s);
const char* to_string(AssertionLevel a);
std::optional<AssertionLevel> parse_assertion_level(std::string_view s);

/// What the solver reports to an observer. `game` is the game of the
/// current call (already dualised when the call works on infΣ^P).
struct SolverEvent {
    enum class Kind { escape_fixed, bulk_fixed, potential_reduction, attractor };
    Kind kind;
    const Game& game;
    std::size_t depth;
    const EscapeContext& context;
    std::span<const Vertex> vertices;
};

struct SolverConfig {
    ChoicePolicy policy = ChoicePolicy::smaller_zone;
    bool opt_init = true;
    bool opt_bulk = true;
    bool remember_potentials = true;
    ThresholdMode threshold_mode = ThresholdMode::weak;
    AssertionLevel assertions = AssertionLevel::cheap;
    /// Maximum nesting of subgame calls; 0 means n + 1.
    std::size_t recursion_limit = 0;
    std::function<void(const SolverEvent&)> observer;
};

struct Stats {
    std::uint64_t recursive_calls = 0;
    std::uint64_t loop_iterations = 0;
    std::uint64_t escapes_fixed = 0;
    std::uint64_t bulk_fixed = 0;
    std::uint64_t attractor_calls = 0;
    std::uint64_t potential_reductions = 0;
    std::uint64_t max_depth = 0;
    /// Potential reductions applied before a subgame call (remember_potentials).
    std::uint64_t remembered_reductions = 0;
    /// Runtime checks of the potential-reduction zone inclusion.
    std::uint64_t inclusion_checks = 0;
};

struct SolveResult {
    VertexSet min_region, max_region;
    Potential potential;
    /// Vertex -> chosen edge id, for owned vertices inside the owner's region.
    std::map<Vertex, EdgeId> min_strategy, max_strategy;
    Stats stats;
};

/**
 * Main recursion. The game must have no zero-weight cycles. The returned
 * potential is reducing for g itself, and the regions are the zn/zp zones
 * of the reweighted game.
 */
SolveResult reduce_game(const Game& g, const SolverConfig& cfg = {});

/**
 * Shift applied to the attractor potential when gluing it under the
 * potential of the remaining game: makes every edge from `rest` into
 * `attracted` non-negative after reweighting. 0 when there is no such edge.
 */
Weight glue_delta(const Game& g, const VertexSet& rest, const VertexSet& attracted,
                  const Potential& attracted_potential, const Potential& rest_potential);

/**
 * Threshold problem on an arbitrary game (zero cycles allowed). Weak mode puts
 * value <= 0 on Min's side, strict mode value < 0. The potential and
 * strategies certify preprocess_no_zero_cycles(g, cfg.threshold_mode).
 */
SolveResult solve_threshold(const Game& g, const SolverConfig& cfg = {});

/// Fills in positional strategies certified by res.potential on g.
SolveResult derive_strategies(const Game& g, SolveResult res);

/// True iff phi makes g reduced with zn = min_region and zp = max_region.
bool certifies(const Game& g, const Potential& phi, const VertexSet& min_region,
               const VertexSet& max_region);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den);
    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& a, const Rational& b);
    std::string str() const;
};

struct ValueResult {
    std::vector<Rational> values;
    std::uint64_t threshold_solves = 0;
};

/// Exact mean-payoff value of every vertex via threshold solves on rescaled games.
ValueResult solve_values(const Game& g, const SolverConfig& cfg = {});

}  // namespace mpg
