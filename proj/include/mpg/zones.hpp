#pragma once

#include "mpg/game.hpp"

namespace mpg {

/**
 * Classification of vertices by the sign of their immediately optimal edge
 * (negative, zero, positive) and by which player can force their sign to
 * appear first (zn: zero-then-negative, zp its complement).
 */
struct Zones {
    VertexSet negative, zero, positive;
    VertexSet zn, zp;
};

/// Linear-time backward fixpoint. The game must not contain zero-weight cycles.
Zones compute_zones(const Game& g);

/**
 * True iff every vertex is reduced: from zn Min can force an immediate edge
 * of weight <= 0 into zn, and from zp Max can force an immediate edge of
 * weight >= 0 into zp. Zero-zone vertices are checked too; a Max vertex in
 * zero ∩ zn may own a negative edge into zp.
 */
bool is_reduced(const Game& g, const Zones& z);

/// A game is positively reduced when zn is empty, negatively when zp is.
inline bool is_positively_reduced(const Zones& z) { return z.zn.empty(); }
inline bool is_negatively_reduced(const Zones& z) { return z.zp.empty(); }

}  // namespace mpg
