#include "qtri/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qtri/rng.hpp"

namespace qtri {

Graph::Graph(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64) {
    if (n < 1) throw std::invalid_argument("Graph: n must be positive");
    bits_.assign(words_ * static_cast<std::size_t>(n), 0);
}

void Graph::check_vertex(int v) const {
    if (v < 1 || v > n_) throw std::domain_error("vertex out of range [1, n]");
}

void Graph::check_pair(int a, int b) const {
    check_vertex(a);
    check_vertex(b);
    if (a == b) throw std::domain_error("vertex pair must have distinct endpoints");
}

bool Graph::adjacent(int a, int b) const {
    check_pair(a, b);
    return (row(a)[static_cast<std::size_t>(b - 1) / 64] >> ((b - 1) % 64)) & 1u;
}

void Graph::add_edge(int a, int b) {
    check_pair(a, b);
    std::uint64_t* ra = bits_.data() + words_ * static_cast<std::size_t>(a - 1);
    std::uint64_t* rb = bits_.data() + words_ * static_cast<std::size_t>(b - 1);
    const std::uint64_t mask_b = 1ULL << ((b - 1) % 64);
    if (!(ra[static_cast<std::size_t>(b - 1) / 64] & mask_b)) ++edge_count_;
    ra[static_cast<std::size_t>(b - 1) / 64] |= mask_b;
    rb[static_cast<std::size_t>(a - 1) / 64] |= 1ULL << ((a - 1) % 64);
}

void Graph::remove_edge(int a, int b) {
    check_pair(a, b);
    std::uint64_t* ra = bits_.data() + words_ * static_cast<std::size_t>(a - 1);
    std::uint64_t* rb = bits_.data() + words_ * static_cast<std::size_t>(b - 1);
    const std::uint64_t mask_b = 1ULL << ((b - 1) % 64);
    if (ra[static_cast<std::size_t>(b - 1) / 64] & mask_b) --edge_count_;
    ra[static_cast<std::size_t>(b - 1) / 64] &= ~mask_b;
    rb[static_cast<std::size_t>(a - 1) / 64] &= ~(1ULL << ((a - 1) % 64));
}

int Graph::degree(int v) const {
    check_vertex(v);
    const std::uint64_t* r = row(v);
    int d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += std::popcount(r[w]);
    return d;
}

std::vector<int> Graph::neighbors(int v) const {
    check_vertex(v);
    std::vector<int> out;
    const std::uint64_t* r = row(v);
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = r[w];
        while (bits) {
            const int bit = std::countr_zero(bits);
            out.push_back(static_cast<int>(w * 64 + bit) + 1);
            bits &= bits - 1;
        }
    }
    return out;
}

std::vector<VertexPair> Graph::edges() const {
    std::vector<VertexPair> out;
    out.reserve(edge_count_);
    for (int a = 1; a <= n_; ++a) {
        for (int b : neighbors(a)) {
            if (b > a) out.emplace_back(a, b);
        }
    }
    return out;
}

int two_path_count(const Graph& g, int a, int b) {
    g.check_pair(a, b);
    const std::uint64_t* ra = g.row(a);
    const std::uint64_t* rb = g.row(b);
    int t = 0;
    for (std::size_t w = 0; w < g.words_per_row(); ++w) t += std::popcount(ra[w] & rb[w]);
    return t;
}

std::vector<VertexPair> threshold_graph(const Graph& g, int k) {
    std::vector<VertexPair> out;
    for (int a = 1; a < g.n(); ++a) {
        for (int b = a + 1; b <= g.n(); ++b) {
            if (two_path_count(g, a, b) <= k) out.emplace_back(a, b);
        }
    }
    return out;
}

std::uint64_t triangle_count(const Graph& g) {
    // Each triangle a<b<c counted once, at its edge (a,b) with c above b.
    std::uint64_t total = 0;
    for (int a = 1; a <= g.n(); ++a) {
        for (int b : g.neighbors(a)) {
            if (b <= a) continue;
            const std::uint64_t* ra = g.row(a);
            const std::uint64_t* rb = g.row(b);
            for (std::size_t w = static_cast<std::size_t>(b) / 64; w < g.words_per_row(); ++w) {
                std::uint64_t common = ra[w] & rb[w];
                if (w == static_cast<std::size_t>(b) / 64 && b % 64 != 0) {
                    common &= ~((1ULL << (b % 64)) - 1);
                }
                total += std::popcount(common);
            }
        }
    }
    return total;
}

std::optional<Triangle> brute_find_triangle(const Graph& g) {
    for (int a = 1; a <= g.n(); ++a) {
        for (int b : g.neighbors(a)) {
            if (b <= a) continue;
            const std::uint64_t* ra = g.row(a);
            const std::uint64_t* rb = g.row(b);
            for (std::size_t w = static_cast<std::size_t>(b) / 64; w < g.words_per_row(); ++w) {
                std::uint64_t common = ra[w] & rb[w];
                if (w == static_cast<std::size_t>(b) / 64 && b % 64 != 0) {
                    common &= ~((1ULL << (b % 64)) - 1);
                }
                if (common) {
                    const int c = static_cast<int>(w * 64 + std::countr_zero(common)) + 1;
                    return Triangle{a, b, c};
                }
            }
        }
    }
    return std::nullopt;
}

namespace {

bool extend_mapping(const Graph& g, const Graph& h, std::vector<int>& mapping,
                    std::vector<bool>& used) {
    const int idx = static_cast<int>(mapping.size());
    if (idx == h.n()) return true;
    for (int candidate = 1; candidate <= g.n(); ++candidate) {
        if (used[static_cast<std::size_t>(candidate)]) continue;
        bool ok = true;
        for (int prev = 1; prev <= idx; ++prev) {
            if (h.adjacent(prev, idx + 1) && !g.adjacent(mapping[static_cast<std::size_t>(prev - 1)], candidate)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        mapping.push_back(candidate);
        used[static_cast<std::size_t>(candidate)] = true;
        if (extend_mapping(g, h, mapping, used)) return true;
        used[static_cast<std::size_t>(candidate)] = false;
        mapping.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> brute_find_copy(const Graph& g, const Graph& h) {
    if (h.n() > 8) throw std::invalid_argument("brute_find_copy: pattern limited to 8 vertices");
    if (h.n() > g.n()) return std::nullopt;
    std::vector<int> mapping;
    std::vector<bool> used(static_cast<std::size_t>(g.n()) + 1, false);
    mapping.reserve(static_cast<std::size_t>(h.n()));
    if (extend_mapping(g, h, mapping, used)) return mapping;
    return std::nullopt;
}

GraphFamily parse_family(const std::string& name) {
    if (name == "erdos_renyi" || name == "er") return GraphFamily::ErdosRenyi;
    if (name == "planted_triangle" || name == "planted") return GraphFamily::PlantedTriangle;
    if (name == "triangle_free_bipartite" || name == "bipartite") return GraphFamily::TriangleFreeBipartite;
    if (name == "complete") return GraphFamily::Complete;
    throw std::invalid_argument("unknown graph family: " + name);
}

std::string family_name(GraphFamily family) {
    switch (family) {
        case GraphFamily::ErdosRenyi: return "erdos_renyi";
        case GraphFamily::PlantedTriangle: return "planted_triangle";
        case GraphFamily::TriangleFreeBipartite: return "triangle_free_bipartite";
        case GraphFamily::Complete: return "complete";
    }
    throw std::logic_error("unreachable");
}

namespace {

// Pair rank used only to key the per-pair random draw; any fixed injective
// map of pairs to counters works.
std::uint64_t pair_counter(int a, int b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

void fill_erdos_renyi(Graph& g, std::uint64_t seed, double p) {
    const auto threshold = static_cast<std::uint64_t>(p * 0x1.0p64);
    for (int a = 1; a < g.n(); ++a) {
        for (int b = a + 1; b <= g.n(); ++b) {
            if (mix64(seed, pair_counter(a, b)) < threshold) g.add_edge(a, b);
        }
    }
}

}  // namespace

Graph gen_graph(GraphFamily family, int n, std::uint64_t seed, double p) {
    if (n < 3) throw std::invalid_argument("gen_graph: n must be at least 3");
    Graph g(n);
    switch (family) {
        case GraphFamily::Complete:
            for (int a = 1; a < n; ++a)
                for (int b = a + 1; b <= n; ++b) g.add_edge(a, b);
            break;
        case GraphFamily::ErdosRenyi:
            fill_erdos_renyi(g, seed, p);
            break;
        case GraphFamily::PlantedTriangle: {
            fill_erdos_renyi(g, seed, p);
            SplitMix64 rng(mix64(seed, 0x706c616e74ULL));
            int a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))) + 1;
            int b = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))) + 1;
            int c = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))) + 1;
            while (b == a) b = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))) + 1;
            while (c == a || c == b) c = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))) + 1;
            g.add_edge(a, b);
            g.add_edge(a, c);
            g.add_edge(b, c);
            break;
        }
        case GraphFamily::TriangleFreeBipartite: {
            const int half = n / 2;
            const auto threshold = static_cast<std::uint64_t>(p * 0x1.0p64);
            for (int a = 1; a <= half; ++a) {
                for (int b = half + 1; b <= n; ++b) {
                    if (mix64(seed, pair_counter(a, b)) < threshold) g.add_edge(a, b);
                }
            }
            break;
        }
    }
    return g;
}

ParseError::ParseError(const std::string& msg, int line_number)
    : std::runtime_error(msg + " (line " + std::to_string(line_number) + ")"), line(line_number) {}

Graph read_edge_list(std::istream& in) {
    std::string text;
    int line_number = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(in, text)) {
            ++line_number;
            if (text.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };

    if (!next_line()) throw ParseError("missing header", 1);
    std::istringstream header(text);
    long long n = 0;
    long long m = 0;
    std::string extra;
    if (!(header >> n >> m) || (header >> extra) || n < 1 || m < 0) {
        throw ParseError("expected header \"n m\"", line_number);
    }

    Graph g(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        if (!next_line()) throw ParseError("expected " + std::to_string(m) + " edges", line_number + 1);
        std::istringstream row(text);
        long long a = 0;
        long long b = 0;
        if (!(row >> a >> b) || (row >> extra)) throw ParseError("expected edge \"a b\"", line_number);
        if (a < 1 || b < 1 || a > n || b > n) throw ParseError("vertex out of range", line_number);
        if (a == b) throw ParseError("self-loop", line_number);
        if (a > b) throw ParseError("edges must satisfy a < b", line_number);
        if (g.adjacent(static_cast<int>(a), static_cast<int>(b))) throw ParseError("duplicate edge", line_number);
        g.add_edge(static_cast<int>(a), static_cast<int>(b));
    }
    return g;
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << g.n() << ' ' << g.edge_count() << '\n';
    for (const auto& [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

void write_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_edge_list(g, out);
}

}  // namespace qtri
