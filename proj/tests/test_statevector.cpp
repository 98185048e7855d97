#include "doctest.h"

#include <cmath>

#include "qtri/graph.hpp"
#include "qtri/rng.hpp"
#include "qtri/statevector.hpp"

using namespace qtri;

namespace {

StateVector random_state(std::size_t basis, std::uint64_t seed) {
    SplitMix64 rng(seed);
    StateVector state(basis);
    for (auto& a : state.amp) a = {rng.next_double() - 0.5, rng.next_double() - 0.5};
    const double norm = state.l2_norm();
    for (auto& a : state.amp) a /= norm;
    return state;
}

double closed_form(int domain, int marked, int iterations) {
    const double theta = std::asin(std::sqrt(static_cast<double>(marked) / domain));
    const double s = std::sin((2.0 * iterations + 1.0) * theta);
    return s * s;
}

}  // namespace

TEST_CASE("diffusion fixed point, swap, and involution") {
    // Singleton: |x> is fixed.
    StateVector single(4);
    single.amp[2] = 1.0;
    const auto after = diffusion(single, {2});
    CHECK(std::abs(after.amp[2] - std::complex<double>(1.0, 0.0)) < 1e-12);

    // Two elements: basis states swap.
    StateVector two(4);
    two.amp[0] = 1.0;
    const auto swapped = diffusion(two, {0, 3});
    CHECK(std::abs(swapped.amp[0]) < 1e-12);
    CHECK(std::abs(swapped.amp[3] - std::complex<double>(1.0, 0.0)) < 1e-12);

    // Amplitudes outside the subset are untouched.
    const auto state = random_state(16, 5);
    const auto moved = diffusion(state, {0, 1, 2});
    for (std::size_t i = 3; i < 16; ++i) CHECK(moved.amp[i] == state.amp[i]);

    CHECK_THROWS_AS(diffusion(state, {}), std::domain_error);
}

TEST_CASE("diffusion is an involution and preserves norm") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto state = random_state(32, seed);
        std::vector<std::size_t> subset;
        SplitMix64 rng(seed * 977);
        for (std::size_t i = 0; i < 32; ++i) {
            if (rng.next_bernoulli(0.4)) subset.push_back(i);
        }
        if (subset.empty()) subset.push_back(0);

        const auto once = diffusion(state, subset);
        CHECK(std::abs(once.l2_norm() - 1.0) < 1e-10);
        const auto twice = diffusion(once, subset);
        for (std::size_t i = 0; i < 32; ++i) CHECK(std::abs(twice.amp[i] - state.amp[i]) < 1e-10);
    }
}

TEST_CASE("grover_success_prob against the closed form") {
    CHECK(grover_success_prob(4, 1, 1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(grover_success_prob(2, 1, 0) == doctest::Approx(0.5));
    CHECK(grover_success_prob(4, 4, 0) == doctest::Approx(1.0));
    CHECK(grover_success_prob(16, 0, 5) == 0.0);

    for (int domain = 2; domain <= 32; ++domain) {
        for (int marked = 1; marked <= domain; marked += 3) {
            for (int j = 0; j <= 12; j += 3) {
                CHECK(std::abs(grover_success_prob(domain, marked, j) - closed_form(domain, marked, j)) <
                      1e-9);
            }
        }
    }
}

TEST_CASE("grover parameter bundle validates its marked set") {
    GroverParams params;
    params.domain_size = 16;
    params.marked = {0, 5, 9};
    params.iterations = 2;
    CHECK(grover_success_prob(params) == doctest::Approx(grover_success_prob(16, 3, 2)).epsilon(1e-12));

    params.marked.push_back(16);  // outside [N]
    CHECK_THROWS_AS(grover_success_prob(params), std::domain_error);
}

TEST_CASE("safe_grover_charged cost formula and determinism") {
    const Graph k4 = gen_graph(GraphFamily::Complete, 4, 0);

    // ceil(3 * 32 * 10) = 960 for N = 1024, c = 3.
    CHECK(safe_grover_charge(1024, 3.0) == 960);

    OracleSession session(k4, 7);
    const auto hit = safe_grover_charged(session, 1024, 5, 3.0, "probe");
    CHECK(session.ledger().total() == 960.0);
    CHECK(hit.has_value());

    // Empty marked set always rejects but still pays.
    OracleSession empty_session(k4, 7);
    CHECK_FALSE(safe_grover_charged(empty_session, 256, 0, 2.0, "probe").has_value());
    CHECK(empty_session.ledger().total() == static_cast<double>(safe_grover_charge(256, 2.0)));

    // Same seed, same outcome and ledger.
    OracleSession a(k4, 99);
    OracleSession b(k4, 99);
    const auto ra = safe_grover_charged(a, 4096, 17, 2.5, "probe");
    const auto rb = safe_grover_charged(b, 4096, 17, 2.5, "probe");
    CHECK(ra == rb);
    CHECK(a.ledger().total() == b.ledger().total());
}

TEST_CASE("safe_grover_charged formula equality on random parameters") {
    SplitMix64 rng(123);
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t domain = 1 + rng.next_below(1 << 20);
        const double c = 0.5 + 3.0 * rng.next_double();
        const double expected =
            std::ceil(c * std::sqrt(static_cast<double>(domain)) *
                      std::log2(static_cast<double>(std::max<std::uint64_t>(domain, 2))));
        CHECK(static_cast<double>(safe_grover_charge(domain, c)) == expected);
    }
}

TEST_CASE("safe_grover_exact never accepts without a marked item") {
    const Graph empty(6);
    std::vector<VertexPair> domain;
    for (int a = 1; a <= 6; ++a)
        for (int b = a + 1; b <= 6; ++b) domain.emplace_back(a, b);

    int acceptances = 0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        OracleSession session(empty, seed);
        const auto hit = safe_grover_exact(
            session, domain,
            [](OracleSession& s, const VertexPair& p) { return query_edge(s, p.first, p.second); }, 2.0);
        if (hit) ++acceptances;
    }
    CHECK(acceptances == 0);
}

TEST_CASE("safe_grover_exact finds the marked item per Fact 1") {
    // Domain of 4 items, 1 marked, c = 2: success probability >= 1 - 1/16.
    Graph g(4);
    g.add_edge(1, 2);
    const std::vector<VertexPair> domain = {{1, 2}, {1, 3}, {1, 4}, {2, 3}};
    int hits = 0;
    const int trials = 2000;
    for (std::uint64_t seed = 1; seed <= trials; ++seed) {
        OracleSession session(g, seed);
        const auto hit = safe_grover_exact(
            session, domain,
            [](OracleSession& s, const VertexPair& p) { return query_edge(s, p.first, p.second); }, 2.0);
        if (hit) {
            CHECK(*hit == VertexPair{1, 2});
            ++hits;
        }
    }
    CHECK(static_cast<double>(hits) / trials >= 1.0 - 1.0 / 16.0);
}

TEST_CASE("safe_grover_exact with everything marked returns a verified item") {
    const Graph k4 = gen_graph(GraphFamily::Complete, 4, 0);
    std::vector<VertexPair> domain;
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) domain.emplace_back(a, b);
    OracleSession session(k4, 5);
    const auto hit = safe_grover_exact(
        session, domain,
        [](OracleSession& s, const VertexPair& p) { return query_edge(s, p.first, p.second); }, 2.0);
    REQUIRE(hit.has_value());
    CHECK(k4.adjacent(hit->first, hit->second));
}

TEST_CASE("exact query meter is deterministic per seed") {
    const Graph g = gen_graph(GraphFamily::ErdosRenyi, 8, 3, 0.4);
    std::vector<VertexPair> domain;
    for (int a = 1; a <= 8; ++a)
        for (int b = a + 1; b <= 8; ++b) domain.emplace_back(a, b);

    auto run_once = [&](std::uint64_t seed) {
        OracleSession session(g, seed);
        safe_grover_exact(
            session, domain,
            [](OracleSession& s, const VertexPair& p) { return query_edge(s, p.first, p.second); }, 1.5);
        return session.exact_queries();
    };
    CHECK(run_once(42) == run_once(42));
    CHECK(run_once(42) > 0);
}
