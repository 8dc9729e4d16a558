#include "mpg/zones.hpp"

#include <limits>

namespace mpg {

Zones compute_zones(const Game& g) {
    const std::size_t n = g.n();
    Zones z{VertexSet(n), VertexSet(n), VertexSet(n), VertexSet(n), VertexSet(n)};

    // Zero-weight edges of zero∩Max vertices not yet known to enter zn.
    std::vector<std::size_t> esc(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        Weight best = g.owner(v) == Player::min ? std::numeric_limits<Weight>::max()
                                                : std::numeric_limits<Weight>::min();
        for (EdgeId id : g.out_edges(v)) {
            const Weight w = g.edge(id).weight;
            best = g.owner(v) == Player::min ? std::min(best, w) : std::max(best, w);
        }
        if (best < 0) z.negative.insert(v);
        else if (best > 0) z.positive.insert(v);
        else z.zero.insert(v);

        if (best == 0 && g.owner(v) == Player::max)
            for (EdgeId id : g.out_edges(v))
                if (g.edge(id).weight == 0) ++esc[v];
    }

    std::vector<Vertex> queue = z.negative.members();
    for (Vertex v : queue) z.zn.insert(v);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex v = queue[head];
        for (EdgeId id : g.in_edges(v)) {
            const Edge& e = g.edge(id);
            const Vertex u = e.src;
            if (e.weight != 0 || !z.zero.contains(u) || z.zn.contains(u)) continue;
            if (g.owner(u) == Player::min || --esc[u] == 0) {
                z.zn.insert(u);
                queue.push_back(u);
            }
        }
    }
    z.zp = z.zn.complement();
    return z;
}

bool is_reduced(const Game& g, const Zones& z) {
    for (Vertex v = 0; v < g.n(); ++v) {
        const bool in_zn = z.zn.contains(v);
        const VertexSet& side = in_zn ? z.zn : z.zp;
        // The player who wants this vertex's side needs one good edge; the
        // other player must have no bad edge.
        const Player favoured = in_zn ? Player::min : Player::max;
        auto good = [&](const Edge& e) {
            return side.contains(e.dst) && (in_zn ? e.weight <= 0 : e.weight >= 0);
        };
        bool any = false, all = true;
        for (EdgeId id : g.out_edges(v)) {
            const bool ok = good(g.edge(id));
            any |= ok;
            all &= ok;
        }
        if (g.owner(v) == favoured ? !any : !all) return false;
    }
    return true;
}

}  // namespace mpg
