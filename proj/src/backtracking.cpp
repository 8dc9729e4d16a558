#include "mpg/backtracking.hpp"

#include <limits>

namespace mpg {

EscapeContext make_escape_context(const Game& g, const VertexSet& seed) {
    return EscapeContext{seed, std::vector<Weight>(g.n(), 0)};
}

void backtrack_all_paths(const Game& g, EscapeContext& ctx) {
    const std::size_t n = g.n();
    std::vector<std::size_t> esc(n, 0);
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < n; ++v) {
        if (ctx.finished.contains(v)) continue;
        for (EdgeId id : g.out_edges(v))
            if (!ctx.finished.contains(g.edge(id).dst)) ++esc[v];
        if (esc[v] == 0) queue.push_back(v);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex v = queue[head];
        const bool is_min = g.owner(v) == Player::min;
        Weight best = is_min ? std::numeric_limits<Weight>::max() : std::numeric_limits<Weight>::min();
        for (EdgeId id : g.out_edges(v)) {
            const Edge& e = g.edge(id);
            const Weight cand = checked_add(e.weight, ctx.value[e.dst]);
            best = is_min ? std::min(best, cand) : std::max(best, cand);
        }
        if (best < 0)
            throw InternalError("backtrack_all_paths: negative supΣ^N value; finished set misses part of N");
        ctx.value[v] = best;
        ctx.finished.insert(v);
        for (EdgeId id : g.in_edges(v)) {
            const Vertex u = g.edge(id).src;
            if (!ctx.finished.contains(u) && --esc[u] == 0) queue.push_back(u);
        }
    }
}

AttractorResult attract_and_reduce(const Game& g, const VertexSet& target,
                                   const Potential& target_potential, Player player) {
    const std::size_t n = g.n();
    AttractorResult res{target, Potential(n, 0)};
    for (Vertex v : target.members()) res.potential[v] = potential_at(target_potential, v);

    std::vector<std::size_t> esc(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if (!target.contains(v) && g.owner(v) != player) esc[v] = g.out_edges(v).size();

    const bool opponent_minimises = player == Player::max;
    std::vector<Vertex> work = target.members();
    for (std::size_t head = 0; head < work.size(); ++head) {
        const Vertex x = work[head];
        for (EdgeId id : g.in_edges(x)) {
            const Edge& e = g.edge(id);
            const Vertex u = e.src;
            if (res.attractor.contains(u)) continue;
            if (g.owner(u) == player) {
                res.potential[u] = checked_add(e.weight, res.potential[x]);
            } else {
                if (--esc[u] != 0) continue;
                Weight best = opponent_minimises ? std::numeric_limits<Weight>::max()
                                                 : std::numeric_limits<Weight>::min();
                for (EdgeId out : g.out_edges(u)) {
                    const Edge& f = g.edge(out);
                    const Weight cand = checked_add(f.weight, res.potential[f.dst]);
                    best = opponent_minimises ? std::min(best, cand) : std::max(best, cand);
                }
                res.potential[u] = best;
            }
            res.attractor.insert(u);
            work.push_back(u);
        }
    }
    return res;
}

VertexSet safe_init(const Game& g, const Zones& z, Player player) {
    const std::size_t n = g.n();
    const VertexSet& own = player == Player::min ? z.negative : z.positive;
    const VertexSet& bad = player == Player::min ? z.positive : z.negative;

    std::vector<std::size_t> zero_edges(n, 0);
    for (Vertex v : z.zero.members())
        if (g.owner(v) == player)
            for (EdgeId id : g.out_edges(v))
                if (g.edge(id).weight == 0) ++zero_edges[v];

    VertexSet unsafe = bad;
    std::vector<Vertex> queue = bad.members();
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (EdgeId id : g.in_edges(queue[head])) {
            const Edge& e = g.edge(id);
            const Vertex u = e.src;
            if (unsafe.contains(u) || own.contains(u)) continue;
            // u is in the zero zone here. Its nonzero edges are the wrong sign
            // for `player` when player owns it, and are never taken.
            if (g.owner(u) == player && (e.weight != 0 || --zero_edges[u] != 0)) continue;
            unsafe.insert(u);
            queue.push_back(u);
        }
    }
    return unsafe.complement();
}

Weight escape_cost(const Edge& e, const EscapeContext& ctx, const Potential& h_potential) {
    return checked_sub(checked_add(e.weight, ctx.value[e.dst]), potential_at(h_potential, e.src));
}

GoodEscapeSet good_escape_set(const Game& g, const EscapeContext& ctx, const VertexSet& side,
                              const Potential& h_potential, EscapeSide which) {
    const std::size_t n = g.n();
    const bool plus = which == EscapeSide::h_plus;
    const Player favoured = plus ? Player::min : Player::max;

    bool found = false;
    Weight threshold = 0;
    for (Vertex v : side.members()) {
        if (g.owner(v) != favoured) continue;
        for (EdgeId id : g.out_edges(v)) {
            const Edge& e = g.edge(id);
            if (!ctx.finished.contains(e.dst)) continue;
            const Weight c = escape_cost(e, ctx, h_potential);
            if (!found || (plus ? c < threshold : c > threshold)) threshold = c;
            found = true;
        }
    }
    if (!found) throw InternalError("good_escape_set: no escape edge from the subgame region");

    // Per edge: 0 = bad, 1 = continue inside `side`, 2 = good escape.
    auto classify = [&](const Edge& e) -> int {
        if (ctx.finished.contains(e.dst)) {
            const Weight c = escape_cost(e, ctx, h_potential);
            return (plus ? c <= threshold : c >= threshold) ? 2 : 0;
        }
        if (!side.contains(e.dst)) return 0;
        const Weight modified = checked_sub(checked_add(e.weight, potential_at(h_potential, e.dst)),
                                            potential_at(h_potential, e.src));
        return (plus ? modified <= 0 : modified >= 0) ? 1 : 0;
    };

    std::vector<std::size_t> allowed(n, 0);
    VertexSet blocked(n);
    std::vector<Vertex> queue;
    for (Vertex v : side.members()) {
        bool any_bad = false;
        for (EdgeId id : g.out_edges(v)) {
            if (classify(g.edge(id)) == 0) any_bad = true;
            else ++allowed[v];
        }
        if (g.owner(v) == favoured ? allowed[v] == 0 : any_bad) {
            blocked.insert(v);
            queue.push_back(v);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (EdgeId id : g.in_edges(queue[head])) {
            const Edge& e = g.edge(id);
            const Vertex u = e.src;
            if (!side.contains(u) || blocked.contains(u) || classify(e) != 1) continue;
            if (g.owner(u) == favoured && --allowed[u] != 0) continue;
            blocked.insert(u);
            queue.push_back(u);
        }
    }

    VertexSet fixed(n);
    for (Vertex v : side.members())
        if (!blocked.contains(v)) fixed.insert(v);
    return {std::move(fixed), threshold};
}

}  // namespace mpg
