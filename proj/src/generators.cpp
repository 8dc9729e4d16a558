#include "mpg/generators.hpp"

#include <algorithm>
#include <numeric>

namespace mpg {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    // 2^64 mod bound; draws under it would bias the low residues.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

std::int64_t SplitMix64::between(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    const std::uint64_t offset = span == 0 ? next() : below(span);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + offset);
}

const char* to_string(GenModel m) {
    switch (m) {
        case GenModel::uniform: return "uniform";
        case GenModel::cycle_heavy: return "cycle-heavy";
        case GenModel::layered: return "layered";
    }
    return "?";
}

std::optional<GenModel> parse_model(std::string_view s) {
    for (auto m : {GenModel::uniform, GenModel::cycle_heavy, GenModel::layered})
        if (s == to_string(m)) return m;
    return std::nullopt;
}

Game gen_random(const GenParams& p) {
    if (p.min_out_degree < 1 || p.min_out_degree > p.max_out_degree)
        throw std::invalid_argument("out-degree range must satisfy 1 <= lo <= hi");
    if (p.weight_bound < 1) throw std::invalid_argument("weight bound must be >= 1");
    if (p.min_fraction_den == 0 || p.min_fraction_num > p.min_fraction_den)
        throw std::invalid_argument("min fraction must lie in [0, 1]");

    SplitMix64 rng(p.seed);
    const std::size_t n = p.n;
    std::vector<Vertex> next_on_cycle(n);
    if (p.model == GenModel::cycle_heavy && n > 0) {
        std::vector<Vertex> perm(n);
        std::iota(perm.begin(), perm.end(), Vertex{0});
        for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
        for (std::size_t i = 0; i < n; ++i) next_on_cycle[perm[i]] = perm[(i + 1) % n];
    }

    std::vector<Player> owners(n);
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) {
        owners[v] = rng.below(p.min_fraction_den) < p.min_fraction_num ? Player::min : Player::max;
        const auto degree = static_cast<std::size_t>(
            rng.between(static_cast<std::int64_t>(p.min_out_degree), static_cast<std::int64_t>(p.max_out_degree)));
        for (std::size_t k = 0; k < degree; ++k) {
            Vertex dst = 0;
            switch (p.model) {
                case GenModel::uniform:
                    dst = static_cast<Vertex>(rng.below(n));
                    break;
                case GenModel::cycle_heavy:
                    dst = k == 0 ? next_on_cycle[v] : static_cast<Vertex>(rng.below(n));
                    break;
                case GenModel::layered:
                    if (v + 1 == n || rng.below(4) == 0) dst = static_cast<Vertex>(rng.below(v + 1));
                    else dst = static_cast<Vertex>(v + 1 + rng.below(n - v - 1));
                    break;
            }
            edges.push_back({v, dst, rng.between(-p.weight_bound, p.weight_bound)});
        }
    }
    return Game(std::move(owners), std::move(edges));
}

Game plant_zero_cycle(const Game& g, std::size_t length, bool exclusive, SplitMix64& rng) {
    const std::size_t n = g.n();
    if (length < 1 || length > n) throw std::invalid_argument("cycle length must be in [1, n]");
    std::vector<Vertex> pool(n);
    std::iota(pool.begin(), pool.end(), Vertex{0});
    for (std::size_t i = 0; i < length; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
    const std::vector<Vertex> cycle(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(length));

    const Weight bound = std::max<Weight>(1, g.max_abs_weight());
    std::vector<Weight> weights(length, 0);
    for (;;) {
        Weight sum = 0;
        for (std::size_t i = 0; i + 1 < length; ++i) sum += weights[i] = rng.between(-bound, bound);
        weights[length - 1] = -sum;
        if (weights[length - 1] >= -bound && weights[length - 1] <= bound) break;
    }

    VertexSet on_cycle = VertexSet::from_members(n, cycle);
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        if (!exclusive || !on_cycle.contains(e.src)) edges.push_back(e);
    for (std::size_t i = 0; i < length; ++i) edges.push_back({cycle[i], cycle[(i + 1) % length], weights[i]});
    return Game(g.owners(), std::move(edges), g.original_ids());
}

GenParams corpus_params(std::uint64_t seed, std::size_t max_n, std::size_t max_out_degree, Weight weight_bound,
                        GenModel model) {
    SplitMix64 rng(seed ^ 0x6D70672D636F7270ULL);
    GenParams p;
    p.n = 1 + rng.below(std::max<std::size_t>(max_n, 1));
    p.min_out_degree = 1;
    p.max_out_degree = max_out_degree;
    p.weight_bound = weight_bound;
    p.model = model;
    p.seed = seed;
    return p;
}

}  // namespace mpg
