#include "qtri/statevector.hpp"

#include <algorithm>
#include <cmath>

namespace qtri {

double StateVector::l2_norm() const {
    double sum = 0.0;
    for (const auto& a : amp) sum += std::norm(a);
    return std::sqrt(sum);
}

StateVector uniform_state(std::size_t basis_size) {
    if (basis_size == 0) throw std::domain_error("uniform_state: empty basis");
    StateVector state(basis_size);
    const double value = 1.0 / std::sqrt(static_cast<double>(basis_size));
    std::fill(state.amp.begin(), state.amp.end(), std::complex<double>(value, 0.0));
    return state;
}

void diffusion_in_place(StateVector& state, const std::vector<std::size_t>& subset) {
    if (subset.empty()) throw std::domain_error("diffusion: empty subset");
    std::complex<double> sum(0.0, 0.0);
    for (std::size_t index : subset) {
        if (index >= state.size()) throw std::domain_error("diffusion: index out of basis range");
        sum += state.amp[index];
    }
    const std::complex<double> twice_mean = 2.0 / static_cast<double>(subset.size()) * sum;
    for (std::size_t index : subset) state.amp[index] = twice_mean - state.amp[index];
}

StateVector diffusion(const StateVector& state, const std::vector<std::size_t>& subset) {
    StateVector out = state;
    diffusion_in_place(out, subset);
    return out;
}

double grover_success_prob(std::int64_t domain_size, std::int64_t marked_count, int iterations) {
    if (domain_size < 1) throw std::domain_error("grover_success_prob: domain must be nonempty");
    if (marked_count < 0 || marked_count > domain_size) throw std::domain_error("grover_success_prob: bad marked count");
    if (iterations < 0) throw std::domain_error("grover_success_prob: negative iteration count");
    if (domain_size > (1LL << 22)) throw std::invalid_argument("grover_success_prob: domain too large for exact simulation");

    const auto n = static_cast<std::size_t>(domain_size);
    const auto m = static_cast<std::size_t>(marked_count);
    StateVector state = uniform_state(n);
    std::vector<std::size_t> everything(n);
    for (std::size_t i = 0; i < n; ++i) everything[i] = i;

    for (int it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < m; ++i) state.amp[i] = -state.amp[i];
        diffusion_in_place(state, everything);
    }

    double mass = 0.0;
    for (std::size_t i = 0; i < m; ++i) mass += std::norm(state.amp[i]);
    return mass;
}

double grover_success_prob(const GroverParams& params) {
    for (const std::int64_t index : params.marked) {
        if (index < 0 || index >= params.domain_size) {
            throw std::domain_error("grover_success_prob: marked index outside the domain");
        }
    }
    return grover_success_prob(params.domain_size, static_cast<std::int64_t>(params.marked.size()),
                               params.iterations);
}

std::uint64_t safe_grover_charge(std::uint64_t domain_size, double safety) {
    const double log_term = std::log2(static_cast<double>(std::max<std::uint64_t>(domain_size, 2)));
    const double cost = safety * std::sqrt(static_cast<double>(domain_size)) * log_term;
    return static_cast<std::uint64_t>(std::ceil(cost));
}

std::optional<std::uint64_t> safe_grover_charged(OracleSession& session, std::uint64_t domain_size,
                                                 std::uint64_t marked_count, double safety,
                                                 const std::string& label) {
    session.ledger().charge(label, static_cast<double>(safe_grover_charge(domain_size, safety)));
    if (marked_count == 0) return std::nullopt;
    if (domain_size > 1) {
        const double failure = std::pow(static_cast<double>(domain_size), -safety);
        if (session.rng().next_bernoulli(failure)) return std::nullopt;
    }
    return session.rng().next_below(marked_count);
}

}  // namespace qtri
