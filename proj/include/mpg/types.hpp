#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpg {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Weight = std::int64_t;
using OriginalId = std::uint64_t;

enum class Player : std::uint8_t { min, max };

constexpr Player opponent(Player p) { return p == Player::min ? Player::max : Player::min; }
const char* to_string(Player p);

struct Edge {
    Vertex src;
    Vertex dst;
    Weight weight;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Structural errors in a game: sinks, dangling endpoints, non-subgame restrictions.
class GameError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public GameError {
public:
    ParseError(std::size_t line, const std::string& what)
        : GameError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Raised by checked arithmetic and by the input-size guards.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// A broken internal invariant. Always a bug, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Weight checked_add(Weight a, Weight b) {
    Weight r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("64-bit overflow in addition");
    return r;
}

inline Weight checked_sub(Weight a, Weight b) {
    Weight r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("64-bit overflow in subtraction");
    return r;
}

inline Weight checked_mul(Weight a, Weight b) {
    Weight r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("64-bit overflow in multiplication");
    return r;
}

/// Dense membership set over 0..n-1 with a cached cardinality.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t n) : bits_(n, 0) {}
    VertexSet(std::size_t n, std::initializer_list<Vertex> members);

    static VertexSet full(std::size_t n);
    static VertexSet from_members(std::size_t n, const std::vector<Vertex>& members);

    std::size_t universe() const { return bits_.size(); }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool contains(Vertex v) const { return v < bits_.size() && bits_[v] != 0; }

    /// Returns false if v was already present.
    bool insert(Vertex v);
    bool erase(Vertex v);

    std::vector<Vertex> members() const;
    VertexSet complement() const;
    bool is_subset_of(const VertexSet& other) const;

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.bits_ == b.bits_;
    }

private:
    std::vector<std::uint8_t> bits_;
    std::size_t count_ = 0;
};

/// Integer vertex labelling; indices beyond the stored range read as 0.
using Potential = std::vector<Weight>;

inline Weight potential_at(const Potential& phi, Vertex v) {
    return v < phi.size() ? phi[v] : 0;
}

}  // namespace mpg
