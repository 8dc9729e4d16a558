#include "mpg/solver.hpp"

#include <algorithm>
#include <variant>

namespace mpg {

const char* to_string(ChoicePolicy p) {
    switch (p) {
        case ChoicePolicy::smaller_zone: return "smaller-zone";
        case ChoicePolicy::always_n: return "always-n";
        case ChoicePolicy::always_p: return "always-p";
        case ChoicePolicy::larger_zone: return "larger-zone";
        case ChoicePolicy::init_set_size: return "init-set-size";
    }
    return "?";
}

std::optional<ChoicePolicy> parse_policy(std::string_view s) {
    for (auto p : {ChoicePolicy::smaller_zone, ChoicePolicy::always_n, ChoicePolicy::always_p,
                   ChoicePolicy::larger_zone, ChoicePolicy::init_set_size})
        if (s == to_string(p)) return p;
    return std::nullopt;
}

const char* to_string(AssertionLevel a) {
    switch (a) {
        case AssertionLevel::off: return "off";
        case AssertionLevel::cheap: return "cheap";
        case AssertionLevel::full: return "full";
    }
    return "?";
}

std::optional<AssertionLevel> parse_assertion_level(std::string_view s) {
    for (auto a : {AssertionLevel::off, AssertionLevel::cheap, AssertionLevel::full})
        if (s == to_string(a)) return a;
    return std::nullopt;
}

bool certifies(const Game& g, const Potential& phi, const VertexSet& min_region,
               const VertexSet& max_region) {
    const Game reweighted = apply_potential(g, phi);
    const Zones z = compute_zones(reweighted);
    return is_reduced(reweighted, z) && z.zn == min_region && z.zp == max_region;
}

Weight glue_delta(const Game& g, const VertexSet& rest, const VertexSet& attracted,
                  const Potential& attracted_potential, const Potential& rest_potential) {
    std::optional<Weight> min_cross;
    for (const Edge& e : g.edges())
        if (rest.contains(e.src) && attracted.contains(e.dst))
            min_cross = std::min(min_cross.value_or(e.weight), e.weight);
    if (!min_cross) return 0;
    Weight min_attr = std::numeric_limits<Weight>::max();
    for (Vertex a : attracted.members()) min_attr = std::min(min_attr, potential_at(attracted_potential, a));
    Weight max_rest = std::numeric_limits<Weight>::min();
    for (Vertex v : rest.members()) max_rest = std::max(max_rest, potential_at(rest_potential, v));
    return checked_add(checked_sub(-*min_cross, min_attr), max_rest);
}

namespace {

struct Partial {
    VertexSet min_region, max_region;
    Potential potential;
};

// Maps the result of a tail call back into the index space of the game the
// call replaced.
struct Continuation {
    enum class Kind { dual, shift, glue };
    Kind kind;
    Potential potential;               // shift amount, or attractor potential (outer indices)
    VertexSet attracted;               // glue only
    std::vector<Vertex> rest_to_outer; // glue only
    Weight partial_delta = 0;          // -min cross weight - min attractor potential
    bool has_cross_edges = false;
};

struct Frame {
    enum class Stage { enter, iterate, await_subgame };

    Game game;
    std::size_t depth = 0;
    Stage stage = Stage::enter;
    std::vector<Continuation> conts;
    std::optional<Game> entry_game;  // kept for the FULL certificate check

    EscapeContext ctx;
    VertexSet negative;        // N of `game` when the current sup-N pass began
    Potential previous_h;      // reducing potential of the last subgame, indices of `game`
    std::vector<Vertex> h_members;
    Potential h_shift;         // remembered potential applied to the pending subgame
};

class Solver {
public:
    Solver(const SolverConfig& cfg, std::size_t n)
        : cfg_(cfg), limit_(cfg.recursion_limit ? cfg.recursion_limit : n + 1) {}

    SolveResult run(const Game& g) {
        push(g, 0);
        std::optional<Partial> returned;
        while (!stack_.empty()) {
            auto step = advance(stack_.back(), returned);
            if (auto* child = std::get_if<Game>(&step)) {
                const std::size_t depth = stack_.back().depth + 1;
                if (depth > limit_) throw InternalError("recursion limit exceeded");
                push(std::move(*child), depth);
            } else {
                stack_.pop_back();
                returned = std::move(std::get<Partial>(step));
            }
        }
        SolveResult res;
        res.min_region = std::move(returned->min_region);
        res.max_region = std::move(returned->max_region);
        res.potential = std::move(returned->potential);
        res.stats = stats_;
        return res;
    }

private:
    bool cheap() const { return cfg_.assertions != AssertionLevel::off; }
    bool full() const { return cfg_.assertions == AssertionLevel::full; }

    void push(Game g, std::size_t depth) {
        stats_.max_depth = std::max<std::uint64_t>(stats_.max_depth, depth);
        Frame f;
        if (full()) f.entry_game = g;
        f.game = std::move(g);
        f.depth = depth;
        stack_.push_back(std::move(f));
    }

    void notify(SolverEvent::Kind kind, const Frame& f, std::span<const Vertex> vertices) {
        if (cfg_.observer) cfg_.observer(SolverEvent{kind, f.game, f.depth, f.ctx, vertices});
    }

    bool choose_sup_n(const Game& g, const Zones& z) const {
        switch (cfg_.policy) {
            case ChoicePolicy::smaller_zone: return z.negative.size() <= z.positive.size();
            case ChoicePolicy::always_n: return true;
            case ChoicePolicy::always_p: return false;
            case ChoicePolicy::larger_zone: return z.negative.size() >= z.positive.size();
            case ChoicePolicy::init_set_size:
                return safe_init(g, z, Player::min).size() >= safe_init(g, z, Player::max).size();
        }
        return true;
    }

    std::variant<Game, Partial> advance(Frame& f, std::optional<Partial>& child) {
        for (;;) {
            switch (f.stage) {
                case Frame::Stage::enter: {
                    ++stats_.recursive_calls;
                    const std::size_t n = f.game.n();
                    if (n == 0) return finish(f, Partial{});
                    Zones z = compute_zones(f.game);
                    if (is_reduced(f.game, z))
                        return finish(f, Partial{std::move(z.zn), std::move(z.zp), Potential(n, 0)});
                    if (!choose_sup_n(f.game, z)) {
                        f.conts.push_back({Continuation::Kind::dual, {}, {}, {}});
                        f.game = dualize(f.game);
                        z = compute_zones(f.game);
                    }
                    f.negative = z.negative;
                    f.ctx = make_escape_context(
                        f.game, cfg_.opt_init ? safe_init(f.game, z, Player::min) : z.negative);
                    f.previous_h.assign(n, 0);
                    f.stage = Frame::Stage::iterate;
                    break;
                }
                case Frame::Stage::iterate: {
                    ++stats_.loop_iterations;
                    backtrack_all_paths(f.game, f.ctx);
                    if (f.ctx.finished.size() == f.game.n()) {
                        reduce_by_values(f);
                        f.stage = Frame::Stage::enter;
                        break;
                    }
                    const VertexSet h = f.ctx.finished.complement();
                    f.h_members = h.members();
                    Game sub = restrict(f.game, h);
                    f.h_shift.clear();
                    if (cfg_.remember_potentials) {
                        Potential shift(f.h_members.size());
                        bool nonzero = false;
                        for (std::size_t i = 0; i < shift.size(); ++i) {
                            shift[i] = f.previous_h[f.h_members[i]];
                            nonzero |= shift[i] != 0;
                        }
                        if (nonzero) {
                            sub = apply_potential(sub, shift);
                            f.h_shift = std::move(shift);
                            ++stats_.remembered_reductions;
                        }
                    }
                    f.stage = Frame::Stage::await_subgame;
                    return sub;
                }
                case Frame::Stage::await_subgame: {
                    Partial r = std::move(*child);
                    child.reset();
                    handle_subgame(f, r);
                    break;
                }
            }
        }
    }

    void handle_subgame(Frame& f, const Partial& r) {
        const std::size_t n = f.game.n();
        Potential phi_h(n, 0);
        VertexSet h_plus(n), h_minus(n);
        for (std::size_t i = 0; i < f.h_members.size(); ++i) {
            const Vertex v = f.h_members[i];
            const Weight shift = f.h_shift.empty() ? 0 : f.h_shift[i];
            phi_h[v] = checked_add(r.potential[i], shift);
            if (r.max_region.contains(static_cast<Vertex>(i))) h_plus.insert(v);
            else h_minus.insert(v);
        }
        f.previous_h = phi_h;

        if (!h_plus.empty()) {
            if (auto e = best_escape(f, h_plus, phi_h, Player::min)) {
                fix_escape(f, *e, h_plus, phi_h, EscapeSide::h_plus);
            } else {
                attract(f, h_plus, phi_h);
                f.stage = Frame::Stage::enter;
                return;
            }
        } else {
            auto e = best_escape(f, h_minus, phi_h, Player::max);
            if (!e) throw InternalError("Min-won subgame without a Max escape");
            fix_escape(f, *e, h_minus, phi_h, EscapeSide::h_minus);
        }
        f.stage = Frame::Stage::iterate;
    }

    // The escape edge of `owner` from `side` into the finished set that
    // minimises (Min) or maximises (Max) w + value - phi; the lowest
    // (src, dst, weight) wins ties.
    std::optional<EdgeId> best_escape(const Frame& f, const VertexSet& side, const Potential& phi_h,
                                      Player owner) const {
        std::optional<EdgeId> best;
        Weight best_cost = 0;
        for (EdgeId id = 0; id < f.game.m(); ++id) {
            const Edge& e = f.game.edge(id);
            if (!side.contains(e.src) || f.game.owner(e.src) != owner || !f.ctx.finished.contains(e.dst))
                continue;
            const Weight c = escape_cost(e, f.ctx, phi_h);
            if (!best || (owner == Player::min ? c < best_cost : c > best_cost)) {
                best = id;
                best_cost = c;
            }
        }
        return best;
    }

    void fix_escape(Frame& f, EdgeId id, const VertexSet& side, const Potential& phi_h, EscapeSide which) {
        const Edge& e = f.game.edge(id);
        const Weight value = checked_add(e.weight, f.ctx.value[e.dst]);
        ++stats_.escapes_fixed;
        if (!cfg_.opt_bulk) {
            f.ctx.value[e.src] = value;
            f.ctx.finished.insert(e.src);
            const Vertex fixed[] = {e.src};
            notify(SolverEvent::Kind::escape_fixed, f, fixed);
            return;
        }
        GoodEscapeSet s = good_escape_set(f.game, f.ctx, side, phi_h, which);
        if (cheap() && (!s.fixed.contains(e.src) || checked_add(s.threshold, phi_h[e.src]) != value))
            throw InternalError("bulk escape set misses the optimal escape");
        const auto members = s.fixed.members();
        for (Vertex v : members) {
            f.ctx.value[v] = checked_add(s.threshold, phi_h[v]);
            f.ctx.finished.insert(v);
        }
        stats_.bulk_fixed += members.size() - 1;
        notify(SolverEvent::Kind::bulk_fixed, f, members);
    }

    // Step with every value known: reweight by the values and restart on the result.
    void reduce_by_values(Frame& f) {
        ++stats_.potential_reductions;
        notify(SolverEvent::Kind::potential_reduction, f, {});
        Game reduced = apply_potential(f.game, f.ctx.value);
        if (cheap()) {
            ++stats_.inclusion_checks;
            const Zones z = compute_zones(reduced);
            if (!z.negative.is_subset_of(f.negative) || !z.positive.is_subset_of(f.negative))
                throw InternalError("potential reduction: N or P of the reduced game escapes N");
        }
        f.conts.push_back({Continuation::Kind::shift, f.ctx.value, {}, {}});
        f.game = std::move(reduced);
    }

    // Max-won part without Min escapes: attract, then continue on the rest.
    void attract(Frame& f, const VertexSet& h_plus, const Potential& phi_h) {
        ++stats_.attractor_calls;
        AttractorResult a = attract_and_reduce(f.game, h_plus, phi_h, Player::max);
        const auto attracted = a.attractor.members();
        notify(SolverEvent::Kind::attractor, f, attracted);
        if (full()) {
            if (!is_trap(f.game, a.attractor, Player::min))
                throw InternalError("attractor is not a trap for Min");
            Potential local;
            for (Vertex v : attracted) local.push_back(a.potential[v]);
            const Game part = apply_potential(restrict(f.game, a.attractor), local);
            if (!compute_zones(part).zn.empty())
                throw InternalError("attractor potential is not positively reducing");
        }

        const VertexSet rest = a.attractor.complement();
        Continuation c{Continuation::Kind::glue, std::move(a.potential), a.attractor, rest.members()};
        std::optional<Weight> min_cross;
        for (const Edge& e : f.game.edges())
            if (rest.contains(e.src) && a.attractor.contains(e.dst))
                min_cross = std::min(min_cross.value_or(e.weight), e.weight);
        if (min_cross) {
            Weight min_attr = std::numeric_limits<Weight>::max();
            for (Vertex v : attracted) min_attr = std::min(min_attr, c.potential[v]);
            c.partial_delta = checked_sub(-*min_cross, min_attr);
            c.has_cross_edges = true;
        }
        f.game = rest.empty() ? Game() : restrict(f.game, rest);
        f.conts.push_back(std::move(c));
    }

    Partial finish(Frame& f, Partial res) {
        for (auto it = f.conts.rbegin(); it != f.conts.rend(); ++it) {
            switch (it->kind) {
                case Continuation::Kind::dual:
                    std::swap(res.min_region, res.max_region);
                    for (Weight& w : res.potential) w = -w;
                    break;
                case Continuation::Kind::shift:
                    for (std::size_t v = 0; v < res.potential.size(); ++v)
                        res.potential[v] = checked_add(res.potential[v], it->potential[v]);
                    break;
                case Continuation::Kind::glue: {
                    const std::size_t outer = it->attracted.universe();
                    Partial up{VertexSet(outer), it->attracted, Potential(outer, 0)};
                    Weight max_rest = std::numeric_limits<Weight>::min();
                    for (std::size_t i = 0; i < it->rest_to_outer.size(); ++i) {
                        const Vertex v = it->rest_to_outer[i];
                        if (res.min_region.contains(static_cast<Vertex>(i))) up.min_region.insert(v);
                        else up.max_region.insert(v);
                        up.potential[v] = res.potential[i];
                        max_rest = std::max(max_rest, res.potential[i]);
                    }
                    const Weight delta = it->has_cross_edges ? checked_add(it->partial_delta, max_rest) : 0;
                    for (Vertex a : it->attracted.members())
                        up.potential[a] = checked_add(it->potential[a], delta);
                    res = std::move(up);
                    break;
                }
            }
        }
        if (f.entry_game && !certifies(*f.entry_game, res.potential, res.min_region, res.max_region))
            throw InternalError("returned potential does not certify the regions");
        return res;
    }

    const SolverConfig& cfg_;
    std::size_t limit_;
    Stats stats_;
    std::vector<Frame> stack_;
};

}  // namespace

SolveResult reduce_game(const Game& g, const SolverConfig& cfg) {
    try {
        return Solver(cfg, g.n()).run(g);
    } catch (const GameError& e) {
        throw InternalError(std::string("solver produced an invalid game: ") + e.what());
    }
}

SolveResult solve_threshold(const Game& g, const SolverConfig& cfg) {
    const Game prepared = preprocess_no_zero_cycles(g, cfg.threshold_mode);
    return derive_strategies(prepared, reduce_game(prepared, cfg));
}

SolveResult derive_strategies(const Game& g, SolveResult res) {
    res.min_strategy.clear();
    res.max_strategy.clear();
    for (Vertex v = 0; v < g.n(); ++v) {
        const bool min_side = res.min_region.contains(v);
        if ((g.owner(v) == Player::min) != min_side) continue;
        const VertexSet& region = min_side ? res.min_region : res.max_region;
        std::optional<EdgeId> choice;
        for (EdgeId id : g.out_edges(v)) {
            const Edge& e = g.edge(id);
            const Weight w = checked_sub(checked_add(e.weight, potential_at(res.potential, e.dst)),
                                         potential_at(res.potential, v));
            if (region.contains(e.dst) && (min_side ? w <= 0 : w >= 0)) {
                choice = id;
                break;
            }
        }
        if (!choice) throw InternalError("certificate admits no strategy edge at a vertex");
        (min_side ? res.min_strategy : res.max_strategy)[v] = *choice;
    }
    return res;
}

}  // namespace mpg
