#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mpg/game.hpp"
#include "mpg/generators.hpp"

namespace mpg::fixtures {

constexpr Player MIN = Player::min;
constexpr Player MAX = Player::max;

inline Game make(std::vector<Player> owners, std::vector<Edge> edges) {
    return Game(std::move(owners), std::move(edges));
}

// a
inline Game g1() { return make({MIN}, {{0, 0, -1}}); }
// a
inline Game g2() { return make({MAX}, {{0, 0, 1}}); }
// a, b
inline Game g3() { return make({MIN, MAX}, {{0, 1, 2}, {1, 0, -3}}); }
// a, b: one cycle of weight 0
inline Game g4() { return make({MIN, MAX}, {{0, 1, 1}, {1, 0, -1}}); }
// p, q, r, s
inline Game g5() {
    return make({MAX, MAX, MIN, MIN}, {{0, 0, 1}, {1, 0, 0}, {1, 2, -5}, {2, 1, 0}, {3, 2, 0}, {3, 3, -1}});
}
// a, b, c
inline Game g8() { return make({MIN, MAX, MAX}, {{0, 1, -1}, {1, 0, 2}, {1, 2, 0}, {2, 2, 1}}); }
// n0, h
inline Game g9() { return make({MAX, MAX}, {{0, 0, -1}, {1, 0, 1}, {1, 1, -2}}); }

inline EdgeId find_edge(const Game& g, Vertex src, Vertex dst) {
    for (EdgeId e : g.out_edges(src))
        if (g.edge(e).dst == dst) return e;
    throw std::logic_error("no such edge");
}

inline VertexSet set(std::size_t n, std::initializer_list<Vertex> vs) { return VertexSet(n, vs); }

/// Small uniform corpus instance with the acceptance parameters.
inline Game corpus_game(std::uint64_t seed, std::size_t max_n = 8) { return gen_random(corpus_params(seed, max_n)); }

/// Calls f on every simple cycle (as edge ids), each once up to rotation.
inline void for_each_simple_cycle(const Game& g, const std::function<void(const ClosedWalk&)>& f) {
    const std::size_t n = g.n();
    std::vector<std::uint8_t> on_path(n, 0);
    ClosedWalk path;
    std::function<void(Vertex, Vertex)> dfs = [&](Vertex start, Vertex v) {
        for (EdgeId e : g.out_edges(v)) {
            const Vertex d = g.edge(e).dst;
            if (d < start) continue;
            path.push_back(e);
            if (d == start) f(path);
            else if (!on_path[d]) {
                on_path[d] = 1;
                dfs(start, d);
                on_path[d] = 0;
            }
            path.pop_back();
        }
    };
    for (Vertex s = 0; s < n; ++s) {
        on_path[s] = 1;
        dfs(s, s);
        on_path[s] = 0;
    }
}

}  // namespace mpg::fixtures
