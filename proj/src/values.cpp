#include <numeric>
#include <sstream>

#include "mpg/solver.hpp"

namespace mpg {

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

std::string Rational::str() const {
    std::ostringstream out;
    out << num;
    if (den != 1) out << '/' << den;
    return out.str();
}

namespace {

std::int64_t floor_div(__int128 a, std::int64_t b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return static_cast<std::int64_t>(q);
}

// The unique rational with denominator <= n in ((j-1)/scale, j/scale], scale = n^2.
Rational reconstruct(std::int64_t j, std::int64_t scale, std::int64_t n) {
    for (std::int64_t q = 1; q <= n; ++q) {
        const std::int64_t p = floor_div(static_cast<__int128>(q) * j, scale);
        if (static_cast<__int128>(p) * scale > static_cast<__int128>(j - 1) * q) return Rational::make(p, q);
    }
    throw InternalError("no rational with small denominator in the located interval");
}

}  // namespace

ValueResult solve_values(const Game& g, const SolverConfig& cfg) {
    ValueResult out;
    const auto n = static_cast<std::int64_t>(g.n());
    if (n == 0) return out;
    out.values.resize(g.n());

    // Values are p/q with q <= n in [-W, W]. Locate each on the grid
    // j/scale; distinct such fractions are more than 1/scale apart.
    const std::int64_t scale = checked_mul(n, n);
    const std::int64_t bound = checked_mul(scale, g.max_abs_weight());
    constexpr Weight limit = Weight{1} << 62;
    const __int128 widest = static_cast<__int128>(2) * bound + 1;
    if (widest * (n + 1) + 1 > limit) throw OverflowError("value search: rescaled weights exceed 2^62");

    SolverConfig threshold_cfg = cfg;
    threshold_cfg.threshold_mode = ThresholdMode::weak;
    threshold_cfg.observer = nullptr;

    // Every vertex of a task has value in (lo/scale, hi/scale].
    struct Task {
        std::vector<Vertex> vertices;
        std::int64_t lo, hi;
    };
    std::vector<Task> tasks;
    {
        Task all{{}, -bound - 1, bound};
        for (Vertex v = 0; v < g.n(); ++v) all.vertices.push_back(v);
        tasks.push_back(std::move(all));
    }
    while (!tasks.empty()) {
        Task t = std::move(tasks.back());
        tasks.pop_back();
        if (t.hi - t.lo == 1) {
            const Rational r = reconstruct(t.hi, scale, n);
            for (Vertex v : t.vertices) out.values[v] = r;
            continue;
        }
        const std::int64_t mid = t.lo + (t.hi - t.lo) / 2;
        std::vector<Edge> edges = g.edges();
        for (Edge& e : edges) e.weight = e.weight * scale - mid;
        const Game shifted(g.owners(), std::move(edges), g.original_ids());
        const SolveResult r = solve_threshold(shifted, threshold_cfg);
        ++out.threshold_solves;
        Task low{{}, t.lo, mid}, high{{}, mid, t.hi};
        for (Vertex v : t.vertices) (r.min_region.contains(v) ? low : high).vertices.push_back(v);
        if (!low.vertices.empty()) tasks.push_back(std::move(low));
        if (!high.vertices.empty()) tasks.push_back(std::move(high));
    }
    return out;
}

}  // namespace mpg
