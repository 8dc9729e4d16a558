#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpg/types.hpp"

namespace mpg {

/**
 * Weighted sinkless digraph with vertices owned by Min or Max.
 *
 * Immutable after construction. Edges are stored sorted by (src, dst, weight)
 * so two games with the same edge multiset compare equal. Every vertex keeps
 * the identifier it had in its source file (or parent game), used only for
 * output.
 */
class Game {
public:
    Game() = default;

    /// Throws GameError on a sink or an out-of-range endpoint.
    Game(std::vector<Player> owners, std::vector<Edge> edges,
         std::vector<OriginalId> original_ids = {});

    std::size_t n() const { return owners_.size(); }
    std::size_t m() const { return edges_.size(); }
    bool empty() const { return owners_.empty(); }
    Weight max_abs_weight() const { return max_abs_weight_; }

    Player owner(Vertex v) const { return owners_[v]; }
    const std::vector<Player>& owners() const { return owners_; }
    OriginalId original_id(Vertex v) const { return original_ids_[v]; }
    const std::vector<OriginalId>& original_ids() const { return original_ids_; }

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::span<const EdgeId> out_edges(Vertex v) const {
        return {out_ids_.data() + out_begin_[v], out_ids_.data() + out_begin_[v + 1]};
    }
    std::span<const EdgeId> in_edges(Vertex v) const {
        return {in_ids_.data() + in_begin_[v], in_ids_.data() + in_begin_[v + 1]};
    }

    friend bool operator==(const Game& a, const Game& b) {
        return a.owners_ == b.owners_ && a.edges_ == b.edges_ && a.original_ids_ == b.original_ids_;
    }

private:
    std::vector<Player> owners_;
    std::vector<Edge> edges_;
    std::vector<OriginalId> original_ids_;
    std::vector<std::size_t> out_begin_, in_begin_;
    std::vector<EdgeId> out_ids_, in_ids_;
    Weight max_abs_weight_ = 0;
};

/// Sequence of edge ids where each edge starts where the previous one ended.
using ClosedWalk = std::vector<EdgeId>;

enum class ThresholdMode { weak, strict };

Game parse_game(std::string_view text);
std::string serialize_game(const Game& g);

/// Reads "<vertex-id> <int64>" lines keyed by original ids; absent vertices get 0.
Potential parse_potential(std::string_view text, const Game& g);
std::string serialize_potential(const Game& g, const Potential& phi);

/// Rescales weights to (n+1)w - 1 (weak) or (n+1)w + 1 (strict) so that no
/// cycle has total weight zero while nonzero cycle signs are kept.
Game preprocess_no_zero_cycles(const Game& g, ThresholdMode mode);

/// Reweights every edge vv' to w + phi(v') - phi(v).
Game apply_potential(const Game& g, const Potential& phi);

/// Negates weights and swaps owners.
Game dualize(const Game& g);

/// Induced subgame on keep, preserving the relative vertex order; vertex i of
/// the result is the i-th smallest member of keep.
Game restrict(const Game& g, const VertexSet& keep);

/// True iff player cannot leave s. Throws GameError if s does not induce a subgame.
bool is_trap(const Game& g, const VertexSet& s, Player player);

Weight cycle_weight(const Game& g, const ClosedWalk& walk);

}  // namespace mpg
