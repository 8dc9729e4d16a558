#pragma once

#include <optional>
#include <string_view>

#include "mpg/game.hpp"

namespace mpg {

/**
 * SplitMix64 (Steele, Lea, Flood 2014). Fixed constants and pure 64-bit
 * unsigned arithmetic, so a seed yields the same stream on every platform.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi);

private:
    std::uint64_t state_;
};

enum class GenModel { uniform, cycle_heavy, layered };

const char* to_string(GenModel m);
std::optional<GenModel> parse_model(std::string_view s);

struct GenParams {
    std::size_t n = 8;
    std::size_t min_out_degree = 1;
    std::size_t max_out_degree = 3;
    Weight weight_bound = 4;
    std::uint64_t min_fraction_num = 1;  ///< probability a vertex is Min, as num/den
    std::uint64_t min_fraction_den = 2;
    GenModel model = GenModel::uniform;
    std::uint64_t seed = 0;
};

/// Deterministic in params; throws std::invalid_argument on bad params.
Game gen_random(const GenParams& p);

/**
 * Adds a cycle of `length` distinct vertices whose weights sum to 0. With
 * `exclusive`, the cycle's vertices lose their other edges, so their value is
 * exactly 0.
 */
Game plant_zero_cycle(const Game& g, std::size_t length, bool exclusive, SplitMix64& rng);

/// Parameters of the corpus instance with this seed: n drawn from [1, max_n], the rest fixed.
GenParams corpus_params(std::uint64_t seed, std::size_t max_n, std::size_t max_out_degree = 3,
                        Weight weight_bound = 4, GenModel model = GenModel::uniform);

}  // namespace mpg
