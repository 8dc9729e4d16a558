#include "mpg/game.hpp"

#include <algorithm>
#include <numeric>

namespace mpg {

const char* to_string(Player p) { return p == Player::min ? "MIN" : "MAX"; }

VertexSet::VertexSet(std::size_t n, std::initializer_list<Vertex> members) : bits_(n, 0) {
    for (Vertex v : members) insert(v);
}

VertexSet VertexSet::full(std::size_t n) {
    VertexSet s;
    s.bits_.assign(n, 1);
    s.count_ = n;
    return s;
}

VertexSet VertexSet::from_members(std::size_t n, const std::vector<Vertex>& members) {
    VertexSet s(n);
    for (Vertex v : members) s.insert(v);
    return s;
}

bool VertexSet::insert(Vertex v) {
    if (bits_[v]) return false;
    bits_[v] = 1;
    ++count_;
    return true;
}

bool VertexSet::erase(Vertex v) {
    if (!bits_[v]) return false;
    bits_[v] = 0;
    --count_;
    return true;
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    out.reserve(count_);
    for (std::size_t v = 0; v < bits_.size(); ++v)
        if (bits_[v]) out.push_back(static_cast<Vertex>(v));
    return out;
}

VertexSet VertexSet::complement() const {
    VertexSet s(bits_.size());
    for (std::size_t v = 0; v < bits_.size(); ++v)
        if (!bits_[v]) s.insert(static_cast<Vertex>(v));
    return s;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
    for (std::size_t v = 0; v < bits_.size(); ++v)
        if (bits_[v] && !other.contains(static_cast<Vertex>(v))) return false;
    return true;
}

Game::Game(std::vector<Player> owners, std::vector<Edge> edges, std::vector<OriginalId> original_ids)
    : owners_(std::move(owners)), edges_(std::move(edges)), original_ids_(std::move(original_ids)) {
    const std::size_t n = owners_.size();
    if (n > std::numeric_limits<Vertex>::max() || edges_.size() > std::numeric_limits<EdgeId>::max())
        throw GameError("game too large");
    if (original_ids_.empty()) {
        original_ids_.resize(n);
        std::iota(original_ids_.begin(), original_ids_.end(), OriginalId{0});
    } else if (original_ids_.size() != n) {
        throw GameError("original id table does not match vertex count");
    }
    for (const Edge& e : edges_) {
        if (e.src >= n || e.dst >= n)
            throw GameError("edge endpoint out of range");
        if (e.weight == std::numeric_limits<Weight>::min())
            throw GameError("weight -2^63 is not representable under negation");
    }
    std::sort(edges_.begin(), edges_.end());

    out_begin_.assign(n + 1, 0);
    in_begin_.assign(n + 1, 0);
    for (const Edge& e : edges_) {
        ++out_begin_[e.src + 1];
        ++in_begin_[e.dst + 1];
        max_abs_weight_ = std::max(max_abs_weight_, e.weight < 0 ? -e.weight : e.weight);
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (out_begin_[v + 1] == 0)
            throw GameError("sink vertex " + std::to_string(original_ids_[v]));
        out_begin_[v + 1] += out_begin_[v];
        in_begin_[v + 1] += in_begin_[v];
    }
    out_ids_.resize(edges_.size());
    in_ids_.resize(edges_.size());
    std::vector<std::size_t> out_fill(out_begin_.begin(), out_begin_.end() - 1);
    std::vector<std::size_t> in_fill(in_begin_.begin(), in_begin_.end() - 1);
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        const Edge& e = edges_[id];
        out_ids_[out_fill[e.src]++] = id;
        in_ids_[in_fill[e.dst]++] = id;
    }
}

Game preprocess_no_zero_cycles(const Game& g, ThresholdMode mode) {
    constexpr Weight limit = Weight{1} << 62;
    const Weight factor = static_cast<Weight>(g.n()) + 1;
    if (g.max_abs_weight() > (limit - 1) / factor)
        throw OverflowError("(n+1)*W+1 exceeds 2^62; game too large to preprocess");
    const Weight shift = mode == ThresholdMode::strict ? 1 : -1;
    std::vector<Edge> edges = g.edges();
    for (Edge& e : edges) e.weight = e.weight * factor + shift;
    return Game(g.owners(), std::move(edges), g.original_ids());
}

Game apply_potential(const Game& g, const Potential& phi) {
    std::vector<Edge> edges = g.edges();
    for (Edge& e : edges)
        e.weight = checked_sub(checked_add(e.weight, potential_at(phi, e.dst)), potential_at(phi, e.src));
    return Game(g.owners(), std::move(edges), g.original_ids());
}

Game dualize(const Game& g) {
    std::vector<Player> owners = g.owners();
    for (Player& p : owners) p = opponent(p);
    std::vector<Edge> edges = g.edges();
    for (Edge& e : edges) e.weight = -e.weight;
    return Game(std::move(owners), std::move(edges), g.original_ids());
}

Game restrict(const Game& g, const VertexSet& keep) {
    const std::size_t n = g.n();
    constexpr Vertex absent = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> index(n, absent);
    std::vector<Player> owners;
    std::vector<OriginalId> ids;
    for (Vertex v = 0; v < n; ++v) {
        if (!keep.contains(v)) continue;
        index[v] = static_cast<Vertex>(owners.size());
        owners.push_back(g.owner(v));
        ids.push_back(g.original_id(v));
    }
    std::vector<Edge> edges;
    std::vector<std::uint8_t> has_out(owners.size(), 0);
    for (const Edge& e : g.edges()) {
        if (index[e.src] == absent || index[e.dst] == absent) continue;
        edges.push_back({index[e.src], index[e.dst], e.weight});
        has_out[index[e.src]] = 1;
    }
    for (std::size_t i = 0; i < owners.size(); ++i)
        if (!has_out[i])
            throw GameError("not a subgame: vertex " + std::to_string(ids[i]) +
                            " is a sink in restriction");
    return Game(std::move(owners), std::move(edges), std::move(ids));
}

bool is_trap(const Game& g, const VertexSet& s, Player player) {
    if (s.empty()) throw GameError("is_trap: empty vertex set");
    bool trapped = true;
    for (Vertex v : s.members()) {
        bool has_inside = false;
        for (EdgeId id : g.out_edges(v)) {
            const bool inside = s.contains(g.edge(id).dst);
            has_inside |= inside;
            if (!inside && g.owner(v) == player) trapped = false;
        }
        if (!has_inside)
            throw GameError("not a subgame: vertex " + std::to_string(g.original_id(v)) +
                            " is a sink in restriction");
    }
    return trapped;
}

Weight cycle_weight(const Game& g, const ClosedWalk& walk) {
    if (walk.empty()) throw GameError("empty closed walk");
    Weight total = 0;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        const Edge& e = g.edge(walk[i]);
        const Edge& next = g.edge(walk[(i + 1) % walk.size()]);
        if (e.dst != next.src) throw GameError("walk is not closed");
        total = checked_add(total, e.weight);
    }
    return total;
}

}  // namespace mpg
