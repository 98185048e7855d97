#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qtri/oracle.hpp"

namespace qtri {

// Unit-norm amplitude vector over an explicitly enumerated basis.
struct StateVector {
    explicit StateVector(std::size_t basis_size) : amp(basis_size) {}

    std::vector<std::complex<double>> amp;

    std::size_t size() const { return amp.size(); }
    double l2_norm() const;
};

// Uniform superposition over the whole basis.
StateVector uniform_state(std::size_t basis_size);

// Reflection about the uniform superposition on T; identity outside T.
// |x> -> -|x> + (2/|T|) sum_{y in T} |y> for x in T.
StateVector diffusion(const StateVector& state, const std::vector<std::size_t>& subset);
void diffusion_in_place(StateVector& state, const std::vector<std::size_t>& subset);

struct GroverParams {
    std::int64_t domain_size = 0;    // N
    std::vector<std::int64_t> marked;
    int iterations = 0;              // j
    double safety = 1.0;             // c
};

// Probability mass on the marked set after j Grover iterations (phase flip
// then diffusion over [N]) from the uniform start, simulated exactly.
double grover_success_prob(std::int64_t domain_size, std::int64_t marked_count, int iterations);
double grover_success_prob(const GroverParams& params);  // validates marked within [N]

// Charged-mode Safe Grover. Appends ceil(c * sqrt(N) * log2(max(N,2))) to the
// ledger under `label` and, when some item is marked, returns a uniformly
// random index in [0, marked_count) with probability 1 - N^-c. With no marked
// item it always rejects. A 1-item domain degenerates to direct classical
// verification, so it succeeds with certainty.
std::optional<std::uint64_t> safe_grover_charged(OracleSession& session, std::uint64_t domain_size,
                                                 std::uint64_t marked_count, double safety,
                                                 const std::string& label);

// Charge that safe_grover_charged would append.
std::uint64_t safe_grover_charge(std::uint64_t domain_size, double safety);

// Exact-layer Safe Grover over an explicit domain. The predicate decides
// markedness through metered probes. Runs ceil(c log2 N) repetitions of a
// simulated Grover search tuned for one marked item, measures, and verifies
// the sample with direct probes; never returns an unmarked item.
template <typename Item, typename Pred>
std::optional<Item> safe_grover_exact(OracleSession& session, const std::vector<Item>& domain,
                                      Pred&& predicate, double safety) {
    if (domain.empty()) throw std::domain_error("safe_grover_exact: empty domain");
    const std::size_t domain_size = domain.size();

    std::vector<char> marked(domain_size, 0);
    std::size_t marked_count = 0;
    for (std::size_t i = 0; i < domain_size; ++i) {
        marked[i] = predicate(session, domain[i]) ? 1 : 0;
        marked_count += static_cast<std::size_t>(marked[i]);
    }

    const double pi = std::acos(-1.0);
    const int iterations = static_cast<int>(std::floor(pi / 4.0 * std::sqrt(static_cast<double>(domain_size))));
    const double marked_mass =
        grover_success_prob(static_cast<std::int64_t>(domain_size), static_cast<std::int64_t>(marked_count), iterations);

    auto nth_with_flag = [&](char flag, std::uint64_t pick) {
        for (std::size_t i = 0; i < domain_size; ++i) {
            if (marked[i] == flag && pick-- == 0) return i;
        }
        return std::size_t{0};
    };

    const int repetitions = std::max(
        1, static_cast<int>(std::ceil(safety * std::log2(static_cast<double>(std::max<std::size_t>(domain_size, 2))))));
    for (int rep = 0; rep < repetitions; ++rep) {
        // Measure: the simulated state is uniform within the marked and
        // unmarked classes, so the class draw plus a uniform pick is exact.
        std::size_t sample;
        if (session.rng().next_bernoulli(marked_mass) && marked_count > 0) {
            sample = nth_with_flag(1, session.rng().next_below(marked_count));
        } else {
            const std::size_t unmarked = domain_size - marked_count;
            sample = unmarked > 0 ? nth_with_flag(0, session.rng().next_below(unmarked))
                                  : nth_with_flag(1, session.rng().next_below(marked_count));
        }
        if (predicate(session, domain[sample])) return domain[sample];
    }
    return std::nullopt;
}

}  // namespace qtri
