#include "qtri/combinatorial.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <string>

#include "qtri/statevector.hpp"

namespace qtri {

namespace {

double log2n(int n) { return std::log2(static_cast<double>(std::max(n, 2))); }

std::uint64_t pairs_of(std::uint64_t m) { return m * (m > 0 ? m - 1 : 0) / 2; }

// Fact-1 safety exponent that pins the failure probability at n^-3 for a
// search over `domain` items.
double scan_safety(std::uint64_t domain, int n) {
    return 3.0 * log2n(n) / std::log2(static_cast<double>(std::max<std::uint64_t>(domain, 2)));
}

// Edges of G inside the neighborhood square of v: count, or extract the
// edge with the given index (canonical order).
std::uint64_t count_square_edges(const Graph& g, int v) {
    std::uint64_t count = 0;
    const std::uint64_t* nv = g.row(v);
    const std::size_t words = g.words_per_row();
    for (int a : g.neighbors(v)) {
        const std::uint64_t* ra = g.row(a);
        for (std::size_t w = static_cast<std::size_t>(a) / 64; w < words; ++w) {
            std::uint64_t bits = ra[w] & nv[w];
            if (w == static_cast<std::size_t>(a) / 64 && a % 64 != 0) bits &= ~((1ULL << (a % 64)) - 1);
            count += std::popcount(bits);
        }
    }
    return count;
}

VertexPair square_edge_at(const Graph& g, int v, std::uint64_t index) {
    const std::uint64_t* nv = g.row(v);
    const std::size_t words = g.words_per_row();
    for (int a : g.neighbors(v)) {
        const std::uint64_t* ra = g.row(a);
        for (std::size_t w = static_cast<std::size_t>(a) / 64; w < words; ++w) {
            std::uint64_t bits = ra[w] & nv[w];
            if (w == static_cast<std::size_t>(a) / 64 && a % 64 != 0) bits &= ~((1ULL << (a % 64)) - 1);
            while (bits) {
                if (index == 0) {
                    const int b = static_cast<int>(w * 64 + std::countr_zero(bits)) + 1;
                    return {a, b};
                }
                --index;
                bits &= bits - 1;
            }
        }
    }
    throw std::logic_error("square_edge_at: index out of range");
}

// Safe Grover over the neighborhood square of v for an edge of G.
std::optional<Triangle> neighborhood_square_search(OracleSession& session, int v, const std::string& label) {
    const Graph& g = session.graph();
    const auto deg = static_cast<std::uint64_t>(g.degree(v));
    const std::uint64_t domain = pairs_of(deg);
    const std::uint64_t marked = count_square_edges(g, v);
    const double safety = scan_safety(domain, g.n());
    const auto hit = safe_grover_charged(session, domain, marked, safety, label);
    if (!hit) return std::nullopt;
    const auto [a, b] = square_edge_at(g, v, *hit);
    Triangle t{v, a, b};
    std::sort(t.begin(), t.end());
    return t;
}

}  // namespace

std::optional<Triangle> scan_vertex(OracleSession& session, int v) {
    const Graph& g = session.graph();
    g.check_vertex(v);
    session.ledger().charge("lemma-trivi(" + std::to_string(v) + ")", static_cast<double>(g.n() - 1));
    return neighborhood_square_search(session, v, "lemma-trivi-grover(" + std::to_string(v) + ")");
}

DegreeBand degree_hypothesis(OracleSession& session, int v, double delta, double c0) {
    const Graph& g = session.graph();
    g.check_vertex(v);
    const int n = g.n();
    const int rounds = static_cast<int>(std::ceil(c0 * log2n(n)));
    const auto candidates = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), delta)));
    session.ledger().charge("hypothesis(" + std::to_string(v) + ")",
                            static_cast<double>(rounds) * candidates);
    int hits = 0;
    for (int round = 0; round < rounds; ++round) {
        bool saw_edge = false;
        for (int c = 0; c < candidates; ++c) {
            int x = v;
            while (x == v) x = static_cast<int>(session.rng().next_below(static_cast<std::uint64_t>(n))) + 1;
            if (g.adjacent(v, x)) saw_edge = true;
        }
        if (saw_edge) ++hits;
    }
    return hits < (rounds + 1) / 2 ? DegreeBand::Low : DegreeBand::High;
}

namespace {

// Mutable G' with incrementally maintained two-path counts. Deleting (a,b)
// decrements t(a,y) for y adjacent to b and t(b,y) for y adjacent to a.
class PrimeState {
  public:
    PrimeState(Graph g, double tau) : g_(std::move(g)), tau_(tau) {
        const auto n = static_cast<std::size_t>(g_.n());
        t_.assign(n * n, 0);
        for (int a = 1; a <= g_.n(); ++a) {
            const std::uint64_t* ra = g_.row(a);
            for (int b = a + 1; b <= g_.n(); ++b) {
                const std::uint64_t* rb = g_.row(b);
                std::uint32_t t = 0;
                for (std::size_t w = 0; w < g_.words_per_row(); ++w) t += std::popcount(ra[w] & rb[w]);
                at(a, b) = t;
                at(b, a) = t;
            }
        }
        for (int a = 1; a <= g_.n(); ++a) {
            for (int b : g_.neighbors(a)) {
                if (b > a && at(a, b) < tau_) queue_.emplace_back(a, b);
            }
        }
    }

    const Graph& graph() const { return g_; }
    bool empty() const { return g_.edge_count() == 0; }

    void remove(int a, int b) {
        if (!g_.adjacent(a, b)) return;
        g_.remove_edge(a, b);
        decrement_around(a, b);
        decrement_around(b, a);
    }

    // Next queued pair still eligible for the T drain, if any.
    std::optional<VertexPair> pop_drain() {
        while (!queue_.empty()) {
            const auto [a, b] = queue_.front();
            queue_.pop_front();
            if (g_.adjacent(a, b) && at(a, b) < tau_) return VertexPair{a, b};
        }
        return std::nullopt;
    }

    // Smallest vertex with nonzero degree; degrees only shrink, so the scan
    // pointer never moves backwards.
    std::optional<int> pick_vertex() {
        while (cursor_ <= g_.n()) {
            if (g_.degree(cursor_) > 0) return cursor_;
            ++cursor_;
        }
        return std::nullopt;
    }

  private:
    std::size_t idx(int a, int b) const {
        return static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(g_.n()) + static_cast<std::size_t>(b - 1);
    }
    std::uint32_t& at(int a, int b) { return t_[idx(a, b)]; }

    void decrement_around(int a, int b) {
        // a stopped being a common neighbor of b and y, for every y still
        // adjacent to a.
        for (int y : g_.neighbors(a)) {
            if (y == b) continue;
            const std::uint32_t t = --at(b, y);
            at(y, b) = t;
            if (t + 1 >= tau_ && t < tau_ && g_.adjacent(b, y)) {
                queue_.emplace_back(std::min(b, y), std::max(b, y));
            }
        }
    }

    Graph g_;
    double tau_;
    std::vector<std::uint32_t> t_;
    std::deque<VertexPair> queue_;
    int cursor_ = 1;
};

}  // namespace

ClassifyResult classify(OracleSession& session, Graph g_prime, const ComboParams& params) {
    const Graph& g = session.graph();
    const int n = g.n();
    const double tau = std::pow(static_cast<double>(n), 1.0 - params.epsilon_prime);
    const double cap = params.threshold_cap > 0 ? params.threshold_cap : combo_threshold_cap(n, params);

    ClassifyResult result;
    PrimeState state(std::move(g_prime), tau);

    while (true) {
        while (auto drained = state.pop_drain()) {
            result.partition.t_edges.push_back(*drained);
            state.remove(drained->first, drained->second);
        }
        if (state.empty()) return result;

        if (session.ledger().total() > cap) {
            result.aborted = true;
            return result;
        }

        const auto picked = state.pick_vertex();
        if (!picked) return result;
        const int v = *picked;

        if (degree_hypothesis(session, v, params.delta, params.c0) == DegreeBand::Low) {
            ++result.partition.low_branch_executions;
            for (int w : state.graph().neighbors(v)) {
                result.partition.e_edges.emplace_back(std::min(v, w), std::max(v, w));
                state.remove(v, w);
            }
        } else {
            ++result.partition.high_branch_executions;
            session.ledger().charge("classify-high(" + std::to_string(v) + ")", static_cast<double>(n - 1));
            if (count_square_edges(g, v) > 0) {
                const auto [a, b] = square_edge_at(g, v, 0);
                Triangle t{v, a, b};
                std::sort(t.begin(), t.end());
                result.triangle = t;
                return result;
            }
            // Move G'(nu_G(v), nu_G'(v)) to E. A pair (a,b) qualifies from
            // endpoint a when a is a G-neighbor and b a G'-neighbor of v; it
            // shows up from both endpoints exactly when the roles swap too.
            std::vector<VertexPair> moved;
            const std::uint64_t* in_g = g.row(v);
            const std::uint64_t* in_prime = state.graph().row(v);
            auto test_bit = [](const std::uint64_t* row, int u) {
                return (row[static_cast<std::size_t>(u - 1) / 64] >> ((u - 1) % 64)) & 1u;
            };
            for (int a : g.neighbors(v)) {
                const std::uint64_t* ra = state.graph().row(a);
                for (std::size_t w = 0; w < state.graph().words_per_row(); ++w) {
                    std::uint64_t bits = ra[w] & in_prime[w];
                    while (bits) {
                        const int b = static_cast<int>(w * 64 + std::countr_zero(bits)) + 1;
                        bits &= bits - 1;
                        if (b < a && test_bit(in_g, b) && test_bit(in_prime, a)) continue;
                        moved.emplace_back(std::min(a, b), std::max(a, b));
                    }
                }
            }
            for (const auto& [a, b] : moved) {
                result.partition.e_edges.emplace_back(a, b);
                state.remove(a, b);
            }
        }
    }
}

ClassifyResult classify(OracleSession& session, const std::vector<VertexPair>& g_prime_edges,
                        const ComboParams& params) {
    Graph g_prime(session.graph().n());
    for (const auto& [a, b] : g_prime_edges) g_prime.add_edge(a, b);
    return classify(session, std::move(g_prime), params);
}

namespace {

std::uint64_t count_t_triangles(const Graph& t_graph, const Graph* g_filter, Triangle* extracted,
                                std::uint64_t index) {
    std::uint64_t count = 0;
    const std::size_t words = t_graph.words_per_row();
    for (int a = 1; a <= t_graph.n(); ++a) {
        const std::uint64_t* ta = t_graph.row(a);
        const std::uint64_t* ga = g_filter ? g_filter->row(a) : nullptr;
        for (int b : t_graph.neighbors(a)) {
            if (b <= a) continue;
            if (g_filter && !g_filter->adjacent(a, b)) continue;
            const std::uint64_t* tb = t_graph.row(b);
            const std::uint64_t* gb = g_filter ? g_filter->row(b) : nullptr;
            for (std::size_t w = static_cast<std::size_t>(b) / 64; w < words; ++w) {
                std::uint64_t bits = ta[w] & tb[w];
                if (g_filter) bits &= ga[w] & gb[w];
                if (w == static_cast<std::size_t>(b) / 64 && b % 64 != 0) bits &= ~((1ULL << (b % 64)) - 1);
                while (bits) {
                    if (extracted && count == index) {
                        const int c = static_cast<int>(w * 64 + std::countr_zero(bits)) + 1;
                        *extracted = Triangle{a, b, c};
                        return count;
                    }
                    ++count;
                    bits &= bits - 1;
                }
            }
        }
    }
    return count;
}

}  // namespace

std::optional<Triangle> search_t(OracleSession& session, const std::vector<VertexPair>& t_edges,
                                 double epsilon_prime) {
    (void)epsilon_prime;  // the drain threshold shaped T; the search only needs T itself
    const Graph& g = session.graph();
    Graph t_graph(g.n());
    for (const auto& [a, b] : t_edges) t_graph.add_edge(a, b);

    const std::uint64_t t_count = count_t_triangles(t_graph, nullptr, nullptr, 0);
    const std::uint64_t marked = count_t_triangles(t_graph, &g, nullptr, 0);
    const std::uint64_t domain = std::max<std::uint64_t>(t_count, 1);
    const auto hit = safe_grover_charged(session, domain, marked, scan_safety(domain, g.n()), "search-T");
    if (!hit) return std::nullopt;
    Triangle out{};
    count_t_triangles(t_graph, &g, &out, *hit);
    return out;
}

std::optional<Triangle> search_e(OracleSession& session, const std::vector<VertexPair>& e_edges) {
    if (e_edges.empty()) return std::nullopt;
    const Graph& g = session.graph();
    const int n = g.n();
    const double log_n = std::ceil(log2n(n));

    std::uint64_t in_g = 0;
    std::optional<Triangle> found;
    for (const auto& [a, b] : e_edges) {
        if (!g.adjacent(a, b)) continue;
        ++in_g;
        if (found) continue;
        const std::uint64_t* ra = g.row(a);
        const std::uint64_t* rb = g.row(b);
        for (std::size_t w = 0; w < g.words_per_row(); ++w) {
            if (const std::uint64_t common = ra[w] & rb[w]) {
                const int c = static_cast<int>(w * 64 + std::countr_zero(common)) + 1;
                Triangle t{a, b, c};
                std::sort(t.begin(), t.end());
                found = t;
                break;
            }
        }
    }

    session.ledger().charge("search-E",
                            std::ceil(std::sqrt(static_cast<double>(e_edges.size()))) * log_n +
                                std::ceil(std::sqrt(static_cast<double>(n) *
                                                    static_cast<double>(std::max<std::uint64_t>(in_g, 1)))) *
                                    log_n);
    if (!found) return std::nullopt;
    if (!session.rng().next_bernoulli(1.0 - 1.0 / n)) return std::nullopt;
    return found;
}

double combo_threshold_cap(int n, const ComboParams& params) {
    const double log_n = log2n(n);
    const double k = std::min<double>(n, std::ceil(4.0 * std::pow(n, params.epsilon) * log_n));
    const auto pair_count = static_cast<double>(pairs_of(static_cast<std::uint64_t>(n)));
    const double grover_scan = std::ceil(3.0 * log_n * std::sqrt(pair_count));
    const double hypothesis =
        std::ceil(params.c0 * log_n) * std::ceil(std::pow(static_cast<double>(n), params.delta));
    const double high_max = std::ceil(10.0 * std::pow(n, params.delta + params.epsilon_prime)) + 64.0;
    const double t_max = pair_count * std::pow(n, 1.0 - params.epsilon_prime);
    const double search_t_max = std::ceil(3.0 * log_n * std::sqrt(t_max));
    const double search_e_max =
        (std::ceil(std::sqrt(pair_count)) + std::ceil(std::sqrt(static_cast<double>(n) * pair_count))) *
        std::ceil(log_n);
    return 4.0 * (k * (n - 1) + k * grover_scan + (n + high_max) * hypothesis + high_max * (n - 1) +
                  search_t_max + search_e_max + 3.0);
}

std::optional<Triangle> combinatorial_triangle(OracleSession& session, const ComboParams& params,
                                               ComboRunStats* stats) {
    const Graph& g = session.graph();
    const int n = g.n();
    ComboParams effective = params;
    if (effective.threshold_cap <= 0) effective.threshold_cap = combo_threshold_cap(n, params);

    auto verified = [&](Triangle t) -> std::optional<Triangle> {
        session.ledger().charge("verify", 3.0);
        if (!g.adjacent(t[0], t[1]) || !g.adjacent(t[0], t[2]) || !g.adjacent(t[1], t[2])) {
            throw std::logic_error("combinatorial_triangle: candidate failed verification");
        }
        return t;
    };

    // Steps 1-2: the vertex sample, without repetition.
    const int k = static_cast<int>(
        std::min<double>(n, std::ceil(4.0 * std::pow(static_cast<double>(n), effective.epsilon) * log2n(n))));
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    for (int i = 0; i < k; ++i) {
        const auto j = i + static_cast<int>(session.rng().next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(k));
    if (stats) stats->scanned_vertices = static_cast<std::uint64_t>(k);

    // Step 3: all k neighborhoods are queried before any square is searched.
    session.ledger().charge("scan-nu", static_cast<double>(k) * (n - 1));

    // Step 4: per-vertex safe Grover searches until one yields a triangle.
    for (int v : pool) {
        if (stats) ++stats->scan_checks;
        if (auto t = neighborhood_square_search(session, v, "scan-check(" + std::to_string(v) + ")")) {
            return verified(*t);
        }
    }

    // Step 5: G' keeps the pairs outside every sampled neighborhood square.
    Graph g_prime(n);
    for (int a = 1; a < n; ++a)
        for (int b = a + 1; b <= n; ++b) g_prime.add_edge(a, b);
    for (int v : pool) {
        const auto neighborhood = g.neighbors(v);
        for (std::size_t i = 0; i < neighborhood.size(); ++i) {
            for (std::size_t j = i + 1; j < neighborhood.size(); ++j) {
                if (g_prime.adjacent(neighborhood[i], neighborhood[j])) {
                    g_prime.remove_edge(neighborhood[i], neighborhood[j]);
                }
            }
        }
    }

    // Step 6: classification.
    if (stats) stats->classify_ran = true;
    auto cls = classify(session, std::move(g_prime), effective);
    if (stats) {
        stats->low_branch_executions = cls.partition.low_branch_executions;
        stats->high_branch_executions = cls.partition.high_branch_executions;
    }
    if (cls.triangle) return verified(*cls.triangle);
    if (cls.aborted) {
        if (stats) stats->aborted = true;
        return std::nullopt;
    }

    if (stats) {
        Graph t_graph(n);
        for (const auto& [a, b] : cls.partition.t_edges) t_graph.add_edge(a, b);
        stats->t_triangle_count = triangle_count(t_graph);
        stats->t_triangle_bound =
            static_cast<double>(pairs_of(static_cast<std::uint64_t>(n))) *
            std::pow(static_cast<double>(n), 1.0 - effective.epsilon_prime);
    }

    // Steps 7-9.
    if (auto t = search_t(session, cls.partition.t_edges, effective.epsilon_prime)) return verified(*t);
    if (auto t = search_e(session, cls.partition.e_edges)) return verified(*t);
    return std::nullopt;
}

}  // namespace qtri
