#include "qtri/walk_algorithms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace qtri {

HPattern::HPattern(Graph p, int root_vertex) : pattern(std::move(p)), root(root_vertex) {
    if (pattern.n() <= 3 || pattern.n() > 8) {
        throw std::invalid_argument("HPattern: pattern must have 4..8 vertices");
    }
    pattern.check_vertex(root);
    if (pattern.degree(root) < 1) throw std::invalid_argument("HPattern: root must have positive degree");
}

HPattern clique_pattern(int k) {
    Graph p(k);
    for (int a = 1; a < k; ++a)
        for (int b = a + 1; b <= k; ++b) p.add_edge(a, b);
    return HPattern(std::move(p), 1);
}

HPattern read_pattern_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream edges;
    std::string line;
    int root = -1;
    while (std::getline(in, line)) {
        std::istringstream probe(line);
        std::string word;
        if (probe >> word && word == "root") {
            if (!(probe >> root)) throw std::runtime_error(path + ": malformed root line");
            continue;
        }
        edges << line << '\n';
    }
    if (root < 1) throw std::runtime_error(path + ": missing \"root v\" line");
    Graph g = read_edge_list(edges);
    return HPattern(std::move(g), root);
}

namespace {

int power_radius(int n, double exponent) {
    const int r = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), exponent)));
    return std::min(std::max(r, 1), n - 1);
}

double success_draw_probability(int n) { return 1.0 - 1.0 / std::max(n, 2); }

}  // namespace

std::optional<VertexPair> graph_collision(OracleSession& session, int n,
                                          const std::vector<VertexPair>& known_edges,
                                          const std::vector<std::uint8_t>& f) {
    if (static_cast<int>(f.size()) != n) throw std::invalid_argument("graph_collision: f must have n entries");
    CollisionSpec spec;
    spec.n = n;
    spec.arity = 2;
    spec.relation = [&known_edges, &f](const std::vector<int>& t) {
        if (t.size() != 2) return false;
        const auto [a, b] = std::minmax(t[0], t[1]);
        if (!f[static_cast<std::size_t>(a - 1)] || !f[static_cast<std::size_t>(b - 1)]) return false;
        return std::find(known_edges.begin(), known_edges.end(), VertexPair{a, b}) != known_edges.end();
    };
    spec.enumerate = [&known_edges, &f](std::size_t limit,
                                        const std::function<bool(const std::vector<int>&)>& keep) {
        std::vector<std::vector<int>> out;
        for (const auto& [a, b] : known_edges) {
            if (out.size() >= limit) break;
            if (!f[static_cast<std::size_t>(a - 1)] || !f[static_cast<std::size_t>(b - 1)]) continue;
            std::vector<int> tuple{a, b};
            if (keep(tuple)) out.push_back(std::move(tuple));
        }
        return out;
    };

    const int r = power_radius(n, 2.0 / 3.0);
    const DatabaseModel db = graph_collision_costs();

    for (const auto& round : reduce_to_unique(spec, session.rng().next_u64())) {
        const auto witnesses = round.effective_witnesses(2);
        if (witnesses.size() <= 1) {
            if (auto hit = run_generic_cost_model(session, round, db, r)) {
                return VertexPair{(*hit)[0], (*hit)[1]};
            }
            continue;
        }
        // More than one collision survived the restriction: charge the
        // schedule and emulate the unamplified round.
        charge_generic_schedule(session, n, spec.arity, r, db, "generic");
        if (session.rng().next_bernoulli(success_draw_probability(n))) {
            const auto all = round.effective_witnesses(SIZE_MAX);
            const auto& pick = all[session.rng().next_below(all.size())];
            return VertexPair{pick[0], pick[1]};
        }
    }
    return std::nullopt;
}

namespace {

// Seeded hunt for an edge of G that closes a triangle; falls back to the
// deterministic scan on sparse inputs.
std::optional<Triangle> locate_triangle(const Graph& g, SplitMix64& rng) {
    const int n = g.n();
    for (int attempt = 0; attempt < 64; ++attempt) {
        const int a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))) + 1;
        int b = a;
        while (b == a) b = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))) + 1;
        if (!g.adjacent(a, b)) continue;
        const std::uint64_t* ra = g.row(a);
        const std::uint64_t* rb = g.row(b);
        for (std::size_t w = 0; w < g.words_per_row(); ++w) {
            if (const std::uint64_t common = ra[w] & rb[w]) {
                Triangle t{a, b, static_cast<int>(w * 64 + std::countr_zero(common)) + 1};
                std::sort(t.begin(), t.end());
                return t;
            }
        }
    }
    return brute_find_triangle(g);
}

}  // namespace

std::optional<Triangle> walk_triangle(OracleSession& session) {
    const Graph& g = session.graph();
    const int n = g.n();
    const int r = power_radius(n, 3.0 / 5.0);
    const DatabaseModel db = triangle_walk_costs(n);

    charge_generic_schedule(session, n, 2, r, db, "walk");
    const auto triangle = locate_triangle(g, session.rng());
    if (!triangle) return std::nullopt;  // empty collision relation rejects with certainty
    if (!session.rng().next_bernoulli(success_draw_probability(n))) return std::nullopt;
    session.ledger().charge("third-vertex", std::ceil(std::sqrt(static_cast<double>(n))) *
                                                std::ceil(std::log2(static_cast<double>(std::max(n, 2)))));
    return triangle;
}

std::optional<std::vector<int>> h_copy(OracleSession& session, const HPattern& pattern) {
    const Graph& g = session.graph();
    const int n = g.n();
    const int k = pattern.vertex_count();
    const int r = power_radius(n, 1.0 - 1.0 / k);
    const DatabaseModel db = h_copy_costs(n, pattern.root_degree());

    charge_generic_schedule(session, n, k - 1, r, db, "hcopy");
    const auto copy = brute_find_copy(g, pattern.pattern);
    if (!copy) return std::nullopt;
    if (!session.rng().next_bernoulli(success_draw_probability(n))) return std::nullopt;
    session.ledger().charge("extract", std::ceil(db.check(r)));
    return copy;
}

std::optional<std::vector<int>> monotone_property(OracleSession& session,
                                                  const std::vector<HPattern>& certificates) {
    if (certificates.empty()) throw std::domain_error("monotone_property: empty certificate list");
    for (const auto& certificate : certificates) {
        if (auto copy = h_copy(session, certificate)) return copy;
    }
    return std::nullopt;
}

}  // namespace qtri
