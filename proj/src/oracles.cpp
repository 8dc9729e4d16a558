#include "mpg/oracles.hpp"

#include <algorithm>

namespace mpg {

bool operator<(const OracleValue& a, const OracleValue& b) {
    auto rank = [](const OracleValue& v) {
        return v.kind == OracleValue::Kind::minus_inf ? 0 : v.kind == OracleValue::Kind::finite ? 1 : 2;
    };
    if (rank(a) != rank(b)) return rank(a) < rank(b);
    return a.is_finite() && a.value < b.value;
}

std::string OracleValue::str() const {
    switch (kind) {
        case Kind::plus_inf: return "+inf";
        case Kind::minus_inf: return "-inf";
        case Kind::finite: break;
    }
    return std::to_string(value);
}

std::uint64_t profile_count(const Game& g) {
    std::uint64_t total = 1;
    for (Vertex v = 0; v < g.n(); ++v) {
        const std::uint64_t d = g.out_edges(v).size();
        if (total > std::numeric_limits<std::uint64_t>::max() / d) return std::numeric_limits<std::uint64_t>::max();
        total *= d;
    }
    return total;
}

namespace {

// Odometer over one positional choice per vertex of `owner`.
class StrategyCounter {
public:
    StrategyCounter(const Game& g, Player owner) : g_(g) {
        for (Vertex v = 0; v < g.n(); ++v)
            if (g.owner(v) == owner) vertices_.push_back(v);
        digits_.assign(vertices_.size(), 0);
    }

    void write(std::vector<EdgeId>& choice) const {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            choice[vertices_[i]] = g_.out_edges(vertices_[i])[digits_[i]];
    }

    bool next() {
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (++digits_[i] < g_.out_edges(vertices_[i]).size()) return true;
            digits_[i] = 0;
        }
        return false;
    }

private:
    const Game& g_;
    std::vector<Vertex> vertices_;
    std::vector<std::size_t> digits_;
};

void check_budget(const Game& g, std::uint64_t budget) {
    if (profile_count(g) > budget) throw BudgetExceeded("strategy profile count exceeds budget");
}

// Calls f(choice) for every profile, Max's choices varying fastest. f receives
// a flag telling whether this profile starts a new Min strategy.
template <typename F>
void for_each_profile(const Game& g, F&& f) {
    std::vector<EdgeId> choice(g.n(), 0);
    StrategyCounter mins(g, Player::min), maxs(g, Player::max);
    do {
        mins.write(choice);
        bool first = true;
        do {
            maxs.write(choice);
            f(choice, first);
            first = false;
        } while (maxs.next());
    } while (mins.next());
}

// Mean of the cycle eventually reached from every vertex of the functional graph.
void cycle_means(const Game& g, const std::vector<EdgeId>& choice, std::vector<Rational>& out) {
    const std::size_t n = g.n();
    std::vector<int> state(n, 0);  // 0 new, 1 on current path, 2 done
    std::vector<Vertex> path;
    for (Vertex start = 0; start < n; ++start) {
        if (state[start] == 2) continue;
        path.clear();
        Vertex v = start;
        while (state[v] == 0) {
            state[v] = 1;
            path.push_back(v);
            v = g.edge(choice[v]).dst;
        }
        Rational value;
        if (state[v] == 1) {
            Weight sum = 0;
            std::int64_t len = 0;
            Vertex u = v;
            do {
                sum += g.edge(choice[u]).weight;
                ++len;
                u = g.edge(choice[u]).dst;
            } while (u != v);
            value = Rational::make(sum, len);
        } else {
            value = out[v];
        }
        for (Vertex p : path) {
            out[p] = value;
            state[p] = 2;
        }
    }
}

}  // namespace

BruteForceResult brute_force_solve(const Game& g, std::uint64_t budget, ThresholdMode mode) {
    check_budget(g, budget);
    const std::size_t n = g.n();
    BruteForceResult res{VertexSet(n), VertexSet(n), std::vector<Rational>(n)};
    if (n == 0) return res;

    std::vector<Rational> means(n), best_reply(n);
    bool have_value = false;
    auto close_min_strategy = [&] {
        for (std::size_t v = 0; v < n; ++v)
            if (!have_value || best_reply[v] < res.values[v]) res.values[v] = best_reply[v];
        have_value = true;
    };
    bool started = false;
    for_each_profile(g, [&](const std::vector<EdgeId>& choice, bool new_min) {
        if (new_min && started) close_min_strategy();
        cycle_means(g, choice, means);
        for (std::size_t v = 0; v < n; ++v)
            if (new_min || best_reply[v] < means[v]) best_reply[v] = means[v];
        started = true;
    });
    close_min_strategy();

    for (Vertex v = 0; v < n; ++v) {
        const bool min_wins = mode == ThresholdMode::weak ? res.values[v].num <= 0 : res.values[v].num < 0;
        (min_wins ? res.min_region : res.max_region).insert(v);
    }
    return res;
}

std::vector<OracleValue> brute_force_supsigma(const Game& g, const VertexSet& x, std::uint64_t budget) {
    check_budget(g, budget);
    const std::size_t n = g.n();
    std::vector<OracleValue> result(n), best_reply(n);
    if (n == 0) return result;

    // Peak of the play from `start` under a fixed profile.
    std::vector<std::int64_t> first_step(n);
    std::vector<Weight> sum_at(n);
    auto play_value = [&](const std::vector<EdgeId>& choice, Vertex start) {
        std::fill(first_step.begin(), first_step.end(), -1);
        Weight sum = 0, peak = 0;
        Vertex v = start;
        std::int64_t step = 0;
        std::int64_t stop_after = -1;
        while (!x.contains(v)) {
            if (step == stop_after) break;
            if (first_step[v] < 0) {
                first_step[v] = step;
                sum_at[v] = sum;
            } else if (stop_after < 0) {
                const Weight cycle = sum - sum_at[v];
                if (cycle > 0) return OracleValue::plus_inf();
                // One more lap to be sure the peak of the periodic part is seen.
                stop_after = step + (step - first_step[v]);
            }
            const Edge& e = g.edge(choice[v]);
            sum += e.weight;
            peak = std::max(peak, sum);
            v = e.dst;
            ++step;
        }
        return OracleValue::finite(peak);
    };

    bool have_value = false, started = false;
    auto close_min_strategy = [&] {
        for (std::size_t v = 0; v < n; ++v)
            if (!have_value || best_reply[v] < result[v]) result[v] = best_reply[v];
        have_value = true;
    };
    for_each_profile(g, [&](const std::vector<EdgeId>& choice, bool new_min) {
        if (new_min && started) close_min_strategy();
        for (Vertex v = 0; v < n; ++v) {
            const OracleValue val = play_value(choice, v);
            if (new_min || best_reply[v] < val) best_reply[v] = val;
        }
        started = true;
    });
    close_min_strategy();
    return result;
}

std::vector<OracleValue> energy_value_iteration(const Game& g) {
    const std::size_t n = g.n();
    const Weight cap = checked_mul(static_cast<Weight>(n), g.max_abs_weight());
    constexpr Weight top = -1;  // lifted past the cap
    std::vector<Weight> energy(n, 0);

    auto lift = [&](Vertex v) {
        const bool is_min = g.owner(v) == Player::min;
        Weight best = is_min ? std::numeric_limits<Weight>::max() : 0;
        for (EdgeId id : g.out_edges(v)) {
            const Edge& e = g.edge(id);
            Weight cand = top;
            if (energy[e.dst] != top) {
                const Weight need = std::max<Weight>(0, energy[e.dst] + e.weight);
                if (need <= cap) cand = need;
            }
            if (is_min) {
                if (cand != top && (best == std::numeric_limits<Weight>::max() || cand < best)) best = cand;
            } else {
                if (cand == top) return top;
                best = std::max(best, cand);
            }
        }
        return is_min && best == std::numeric_limits<Weight>::max() ? top : best;
    };

    std::vector<Vertex> work;
    std::vector<std::uint8_t> queued(n, 1);
    for (Vertex v = 0; v < n; ++v) work.push_back(v);
    while (!work.empty()) {
        const Vertex v = work.back();
        work.pop_back();
        queued[v] = 0;
        if (energy[v] == top) continue;
        const Weight updated = lift(v);
        if (updated == energy[v]) continue;
        energy[v] = updated;
        for (EdgeId id : g.in_edges(v)) {
            const Vertex u = g.edge(id).src;
            if (!queued[u] && energy[u] != top) {
                queued[u] = 1;
                work.push_back(u);
            }
        }
    }

    std::vector<OracleValue> out(n);
    for (Vertex v = 0; v < n; ++v)
        out[v] = energy[v] == top ? OracleValue::plus_inf() : OracleValue::finite(energy[v]);
    return out;
}

bool verify_strategy(const Game& g, const std::map<Vertex, EdgeId>& strategy, Player player,
                     const VertexSet& region, CycleBound bound) {
    const std::size_t n = g.n();
    const __int128 sign = player == Player::min ? 1 : -1;
    const __int128 scale = bound == CycleBound::strict ? static_cast<__int128>(n) + 1 : 1;
    const __int128 bump = bound == CycleBound::strict ? 1 : 0;

    // Induced edges, reweighted so that a forbidden cycle is exactly a
    // positive one.
    struct Arc {
        Vertex src, dst;
        __int128 weight;
    };
    std::vector<Arc> arcs;
    for (Vertex v : region.members()) {
        if (g.owner(v) == player) {
            auto it = strategy.find(v);
            if (it == strategy.end() || it->second >= g.m()) return false;
            const Edge& e = g.edge(it->second);
            if (e.src != v || !region.contains(e.dst)) return false;
            arcs.push_back({e.src, e.dst, scale * sign * e.weight + bump});
        } else {
            for (EdgeId id : g.out_edges(v)) {
                const Edge& e = g.edge(id);
                if (!region.contains(e.dst)) return false;
                arcs.push_back({e.src, e.dst, scale * sign * e.weight + bump});
            }
        }
    }

    // Longest-path Bellman-Ford from a virtual source; relaxation in round n
    // means a positive cycle.
    std::vector<__int128> dist(n, 0);
    for (std::size_t round = 0; round <= region.size(); ++round) {
        bool changed = false;
        for (const Arc& a : arcs) {
            if (dist[a.src] + a.weight > dist[a.dst]) {
                dist[a.dst] = dist[a.src] + a.weight;
                changed = true;
            }
        }
        if (!changed) return true;
    }
    return false;
}

}  // namespace mpg
