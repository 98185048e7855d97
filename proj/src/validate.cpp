#include "qtri/validate.hpp"

#include <cmath>

#include "qtri/collision.hpp"
#include "qtri/hypergeom.hpp"
#include "qtri/rng.hpp"

namespace qtri {

std::vector<DisjointnessRow> disjointness_grid(double slack) {
    const std::vector<double> fractions = {0.01, 0.02, 0.05, 0.1, 0.2};
    const std::vector<int> sizes = {100, 500, 1000, 2000};
    std::vector<DisjointnessRow> rows;
    for (int n : sizes) {
        for (double p : fractions) {
            for (double q : fractions) {
                DisjointnessRow row;
                row.n = n;
                row.p = p;
                row.q = q;
                row.exact = hypergeom_disjoint(n, p, q);
                row.approx = std::pow(1.0 - p * q, n);
                row.log_gap = std::abs(std::log(row.exact) - std::log(row.approx));
                row.envelope = slack * n * (p * p * p + q * q * q + 1.0 / n);
                row.ok = row.log_gap <= row.envelope;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

bool sampled_cover_trial(const Graph& g, double epsilon, std::uint64_t seed) {
    const int n = g.n();
    const int k = static_cast<int>(std::min<double>(
        n, std::ceil(4.0 * std::pow(static_cast<double>(n), epsilon) *
                     std::log2(static_cast<double>(std::max(n, 2))))));
    SplitMix64 rng(seed);
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    for (int i = 0; i < k; ++i) {
        const auto j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }

    const std::size_t words = g.words_per_row();
    std::vector<std::uint64_t> covered(words * static_cast<std::size_t>(n), 0);
    for (int i = 0; i < k; ++i) {
        const int v = pool[static_cast<std::size_t>(i)];
        const std::uint64_t* nv = g.row(v);
        for (int a : g.neighbors(v)) {
            std::uint64_t* target = covered.data() + words * static_cast<std::size_t>(a - 1);
            for (std::size_t w = 0; w < words; ++w) target[w] |= nv[w];
        }
    }

    const double threshold = std::pow(static_cast<double>(n), 1.0 - epsilon);
    for (int a = 1; a < n; ++a) {
        const std::uint64_t* cov = covered.data() + words * static_cast<std::size_t>(a - 1);
        for (int b = a + 1; b <= n; ++b) {
            if ((cov[static_cast<std::size_t>(b - 1) / 64] >> ((b - 1) % 64)) & 1u) continue;
            if (two_path_count(g, a, b) > threshold) return false;
        }
    }
    return true;
}

double sampled_cover_frequency(int n, double epsilon, int trials, std::uint64_t seed0) {
    int hits = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(trial);
        const Graph g = gen_graph(GraphFamily::ErdosRenyi, n, mix64(seed, 11), 0.5);
        if (sampled_cover_trial(g, epsilon, mix64(seed, 13))) ++hits;
    }
    return static_cast<double>(hits) / trials;
}

double isolation_frequency(int n, int collision_count, int trials, std::uint64_t seed0) {
    // Fixed m-pair relation; which pairs does not matter for the reduction.
    std::vector<std::vector<int>> members;
    for (int i = 0; i < collision_count; ++i) members.push_back({2 * i + 1, 2 * i + 2});

    CollisionSpec spec;
    spec.n = n;
    spec.arity = 2;
    spec.relation = [members](const std::vector<int>& t) {
        for (const auto& m : members)
            if (m == t) return true;
        return false;
    };
    spec.enumerate = [members](std::size_t limit, const std::function<bool(const std::vector<int>&)>& keep) {
        std::vector<std::vector<int>> out;
        for (const auto& m : members) {
            if (out.size() >= limit) break;
            if (keep(m)) out.push_back(m);
        }
        return out;
    };

    int isolated = 0;
    for (int trial = 0; trial < trials; ++trial) {
        for (const auto& round : reduce_to_unique(spec, seed0 + static_cast<std::uint64_t>(trial))) {
            if (round.effective_witnesses(2).size() == 1) {
                ++isolated;
                break;
            }
        }
    }
    return static_cast<double>(isolated) / trials;
}

}  // namespace qtri
