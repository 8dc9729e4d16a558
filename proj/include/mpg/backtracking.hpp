#pragma once

#include "mpg/game.hpp"
#include "mpg/zones.hpp"

namespace mpg {

/**
 * Vertices whose supΣ^N value (negative-first peak) is already known.
 *
 * `value` is indexed by vertex and meaningful only on `finished`. The solver
 * only ever runs the sup/N polarity; the inf/P side is obtained by running on
 * the dual game.
 */
struct EscapeContext {
    VertexSet finished;
    std::vector<Weight> value;
};

/// Context seeded with `seed` at value 0.
EscapeContext make_escape_context(const Game& g, const VertexSet& seed);

/**
 * Adds every vertex all of whose plays reach `finished`, assigning
 * min (Min vertex) or max (Max vertex) of w + value over its successors.
 * `finished` must contain the negative zone of g.
 */
void backtrack_all_paths(const Game& g, EscapeContext& ctx);

struct AttractorResult {
    VertexSet attractor;
    Potential potential;  ///< indexed by vertex of g; set on `attractor`
};

/**
 * Attractor of `player` to `target`, with target_potential (indexed by vertex of
 * g, read on target) extended over the attracted vertices: through the witness
 * edge for player vertices, through the best successor for opponent vertices.
 * The result is positively reducing over the attractor for Max (negatively for Min)
 * when target_potential is so over target.
 */
AttractorResult attract_and_reduce(const Game& g, const VertexSet& target,
                                   const Potential& target_potential, Player player);

/**
 * Largest set containing the player's own sign zone (negative for Min) from
 * which that player keeps every edge on their side of 0 until the zone is
 * reached, or forever. supΣ^N is 0 there.
 */
VertexSet safe_init(const Game& g, const Zones& z, Player player);

enum class EscapeSide { h_plus, h_minus };

struct GoodEscapeSet {
    VertexSet fixed;
    Weight threshold;
};

/**
 * Bulk escape fixing.
 *
 * h_plus: `side` is the Max-won region of the subgame H = V \ finished,
 * `h_potential` a reducing potential of H (indexed by vertex of g). The
 * threshold is the minimum of w(vv') + value(v') - phi(v) over Min escapes
 * v -> v' in F; every escape from `side` attaining it is good. The returned
 * set holds the vertices of `side` from which Min sees a good escape before
 * any edge of positive modified weight or any other exit, and supΣ^N there
 * equals threshold + phi(v).
 *
 * h_minus is the dual with Max escapes from the Min-won region, maximum, and
 * negative modified weights. Throws InternalError when no escape exists.
 */
GoodEscapeSet good_escape_set(const Game& g, const EscapeContext& ctx, const VertexSet& side,
                              const Potential& h_potential, EscapeSide which);

/// w(vv') + value(v') - phi(v) for an escape edge.
Weight escape_cost(const Edge& e, const EscapeContext& ctx, const Potential& h_potential);

}  // namespace mpg
