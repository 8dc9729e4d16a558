#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_map>

#include "mpg/game.hpp"

namespace mpg {
namespace {

struct Line {
    std::size_t number;
    std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split_tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

// Non-empty, non-comment lines with their 1-based line numbers.
std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        auto tokens = split_tokens(text.substr(pos, end - pos));
        if (!tokens.empty() && tokens.front().front() != '#') lines.push_back({number, std::move(tokens)});
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec == std::errc::result_out_of_range) throw ParseError(line, std::string(what) + " overflow: " + std::string(tok));
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, std::string("malformed ") + what + ": " + std::string(tok));
    return value;
}

}  // namespace

Game parse_game(std::string_view text) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw ParseError(1, "missing header \"mpg 1\"");
    const Line& header = lines.front();
    if (header.tokens.size() != 2 || header.tokens[0] != "mpg" || header.tokens[1] != "1")
        throw ParseError(header.number, "expected header \"mpg 1\"");

    std::vector<Player> owners;
    std::vector<OriginalId> ids;
    std::vector<std::size_t> decl_line;
    std::unordered_map<OriginalId, Vertex> index;

    struct PendingEdge {
        OriginalId src, dst;
        Weight weight;
        std::size_t line;
    };
    std::vector<PendingEdge> pending;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const auto& t = l.tokens;
        if (t[0] == "vertex") {
            if (t.size() != 3) throw ParseError(l.number, "expected \"vertex <id> <MIN|MAX>\"");
            const auto id = parse_number<OriginalId>(t[1], l.number, "vertex id");
            Player p;
            if (t[2] == "MIN") p = Player::min;
            else if (t[2] == "MAX") p = Player::max;
            else throw ParseError(l.number, "unknown owner: " + std::string(t[2]));
            if (!index.emplace(id, static_cast<Vertex>(owners.size())).second)
                throw ParseError(l.number, "duplicate vertex " + std::to_string(id));
            owners.push_back(p);
            ids.push_back(id);
            decl_line.push_back(l.number);
        } else if (t[0] == "edge") {
            if (t.size() != 4) throw ParseError(l.number, "expected \"edge <src> <dst> <weight>\"");
            pending.push_back({parse_number<OriginalId>(t[1], l.number, "vertex id"),
                               parse_number<OriginalId>(t[2], l.number, "vertex id"),
                               parse_number<Weight>(t[3], l.number, "weight"), l.number});
            if (pending.back().weight == std::numeric_limits<Weight>::min())
                throw ParseError(l.number, "weight overflow: -2^63 not supported");
        } else {
            throw ParseError(l.number, "unknown directive: " + std::string(t[0]));
        }
    }

    std::vector<Edge> edges;
    edges.reserve(pending.size());
    std::vector<std::uint8_t> has_out(owners.size(), 0);
    for (const auto& pe : pending) {
        auto s = index.find(pe.src), d = index.find(pe.dst);
        if (s == index.end() || d == index.end())
            throw ParseError(pe.line, "dangling edge endpoint " +
                                          std::to_string(s == index.end() ? pe.src : pe.dst));
        edges.push_back({s->second, d->second, pe.weight});
        has_out[s->second] = 1;
    }
    for (std::size_t v = 0; v < owners.size(); ++v)
        if (!has_out[v]) throw ParseError(decl_line[v], "sink vertex " + std::to_string(ids[v]));
    return Game(std::move(owners), std::move(edges), std::move(ids));
}

std::string serialize_game(const Game& g) {
    std::vector<Vertex> order(g.n());
    for (Vertex v = 0; v < g.n(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](Vertex a, Vertex b) { return g.original_id(a) < g.original_id(b); });

    struct OutEdge {
        OriginalId src, dst;
        Weight weight;
        auto operator<=>(const OutEdge&) const = default;
    };
    std::vector<OutEdge> edges;
    edges.reserve(g.m());
    for (const Edge& e : g.edges()) edges.push_back({g.original_id(e.src), g.original_id(e.dst), e.weight});
    std::sort(edges.begin(), edges.end());

    std::ostringstream out;
    out << "mpg 1\n";
    for (Vertex v : order) out << "vertex " << g.original_id(v) << ' ' << to_string(g.owner(v)) << '\n';
    for (const auto& e : edges) out << "edge " << e.src << ' ' << e.dst << ' ' << e.weight << '\n';
    return out.str();
}

Potential parse_potential(std::string_view text, const Game& g) {
    std::unordered_map<OriginalId, Vertex> index;
    for (Vertex v = 0; v < g.n(); ++v) index.emplace(g.original_id(v), v);
    Potential phi(g.n(), 0);
    for (const Line& l : content_lines(text)) {
        if (l.tokens.size() != 2) throw ParseError(l.number, "expected \"<vertex-id> <int64>\"");
        const auto id = parse_number<OriginalId>(l.tokens[0], l.number, "vertex id");
        auto it = index.find(id);
        if (it == index.end()) throw ParseError(l.number, "unknown vertex " + std::to_string(id));
        phi[it->second] = parse_number<Weight>(l.tokens[1], l.number, "potential");
    }
    return phi;
}

std::string serialize_potential(const Game& g, const Potential& phi) {
    std::vector<Vertex> order(g.n());
    for (Vertex v = 0; v < g.n(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](Vertex a, Vertex b) { return g.original_id(a) < g.original_id(b); });
    std::ostringstream out;
    for (Vertex v : order) out << g.original_id(v) << ' ' << potential_at(phi, v) << '\n';
    return out.str();
}

}  // namespace mpg
