#include "doctest.h"

#include <cmath>
#include <functional>

#include "qtri/collision.hpp"
#include "qtri/graph.hpp"
#include "qtri/validate.hpp"

using namespace qtri;

namespace {

// Planted element-distinctness relation: items a and b share a value.
CollisionSpec planted_pair_spec(int n, int a, int b) {
    CollisionSpec spec;
    spec.n = n;
    spec.arity = 2;
    const std::vector<int> pair = {std::min(a, b), std::max(a, b)};
    spec.relation = [pair](const std::vector<int>& t) { return t == pair; };
    spec.enumerate = [pair](std::size_t limit, const std::function<bool(const std::vector<int>&)>& keep) {
        std::vector<std::vector<int>> out;
        if (limit > 0 && keep(pair)) out.push_back(pair);
        return out;
    };
    return spec;
}

CollisionSpec empty_spec(int n, int arity) {
    CollisionSpec spec;
    spec.n = n;
    spec.arity = arity;
    spec.relation = [](const std::vector<int>&) { return false; };
    spec.enumerate = [](std::size_t, const std::function<bool(const std::vector<int>&)>&) {
        return std::vector<std::vector<int>>{};
    };
    return spec;
}

// Slope of log cost against log n so constant factors cancel.
double fitted_exponent(const std::function<double(int)>& cost_of_n) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int e = 16; e <= 26; e += 2) {
        const int n = 1 << e;
        const double x = std::log2(static_cast<double>(n));
        const double y = std::log2(cost_of_n(n));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

// Sampled r grid: powers of two below n.
int argmin_radius(int n, int arity, const DatabaseModel& db) {
    int best_r = 1;
    double best = generic_cost(n, arity, 1, db);
    for (int r = 2; r < n; r *= 2) {
        const double cost = generic_cost(n, arity, r, db);
        if (cost < best) {
            best = cost;
            best_r = r;
        }
    }
    return best_r;
}

}  // namespace

TEST_CASE("generic_cost reproduces the cost-table exponents") {
    // Element distinctness at r = n^{2/3}: total exponent 2/3.
    CHECK(fitted_exponent([](int n) {
              const int r = static_cast<int>(std::round(std::pow(n, 2.0 / 3.0)));
              return generic_cost(n, 2, r, element_distinctness_costs());
          }) == doctest::Approx(2.0 / 3.0).epsilon(0.01));

    // Triangle at r = n^{3/5}: exponent 13/10.
    CHECK(fitted_exponent([](int n) {
              const int r = static_cast<int>(std::round(std::pow(n, 3.0 / 5.0)));
              DatabaseModel bare{
                  [](double rr) { return rr * rr; }, [](double rr) { return rr; },
                  [n](double rr) { return std::sqrt(static_cast<double>(n)) * std::pow(rr, 2.0 / 3.0); }};
              return generic_cost(n, 2, r, bare);
          }) == doctest::Approx(13.0 / 10.0).epsilon(0.01));

    // Pattern on k=4 vertices, walk arity 3, r = n^{1-1/4}: exponent 3/2.
    CHECK(fitted_exponent([](int n) {
              const int r = static_cast<int>(std::round(std::pow(n, 0.75)));
              DatabaseModel bare{
                  [](double rr) { return rr * rr; }, [](double rr) { return rr; },
                  [n](double rr) { return std::sqrt(static_cast<double>(n)) * std::pow(rr, 0.75); }};
              return generic_cost(n, 3, r, bare);
          }) == doctest::Approx(1.5).epsilon(0.01));

    CHECK_THROWS_AS(generic_cost(10, 2, 10, element_distinctness_costs()), std::domain_error);
    CHECK_THROWS_AS(generic_cost(10, 2, 0, element_distinctness_costs()), std::domain_error);
}

TEST_CASE("generic_cost minimizer lands near the stated optimum") {
    // The three cost-table rows with constant-1 formulas, argmin over the
    // octave grid, within a factor 2 (inclusive) of the stated optimum.
    const int n = 1 << 20;

    // Element distinctness and graph collision: optimum r = n^{2/3}.
    for (const auto& db : {element_distinctness_costs(), graph_collision_costs()}) {
        const double target = std::pow(n, 2.0 / 3.0);
        const int best = argmin_radius(n, 2, db);
        CHECK(best * 2.0 >= target);
        CHECK(best <= target * 2.0);
    }

    // Triangle: optimum r = n^{3/5}.
    {
        DatabaseModel bare{[](double r) { return r * r; }, [](double r) { return r; },
                           [n](double r) { return std::sqrt(static_cast<double>(n)) * std::pow(r, 2.0 / 3.0); }};
        const double target = std::pow(n, 3.0 / 5.0);
        const int best = argmin_radius(n, 2, bare);
        CHECK(best * 2.0 >= target);
        CHECK(best <= target * 2.0);
    }
}

TEST_CASE("cost-model runner books exactly the closed-form charge") {
    const int n = 10000;
    const int r = static_cast<int>(std::ceil(std::pow(n, 2.0 / 3.0)));
    const auto db = element_distinctness_costs();

    // Empty relation: certain reject, full schedule charged.
    {
        OracleSession session(n, 5);
        CHECK_FALSE(run_generic_cost_model(session, empty_spec(n, 2), db, r).has_value());
        CHECK(session.ledger().total() == static_cast<double>(generic_cost_charge(n, 2, r, db)));
    }

    // Unique planted pair: found with certainty, ledger within 2x of the
    // real-valued formula.
    {
        OracleSession session(n, 5);
        const auto hit = run_generic_cost_model(session, planted_pair_spec(n, 17, 4242), db, r);
        REQUIRE(hit.has_value());
        CHECK(*hit == std::vector<int>{17, 4242});
        const double formula = generic_cost(n, 2, r, db);
        CHECK(session.ledger().total() >= formula);
        CHECK(session.ledger().total() <= 2.0 * formula);
        CHECK(session.ledger().total() == static_cast<double>(generic_cost_charge(n, 2, r, db)));
    }

    // Deterministic repeat.
    {
        OracleSession a(n, 9);
        OracleSession b(n, 9);
        run_generic_cost_model(a, planted_pair_spec(n, 3, 8), db, r);
        run_generic_cost_model(b, planted_pair_spec(n, 3, 8), db, r);
        CHECK(a.ledger().total() == b.ledger().total());
        REQUIRE(a.ledger().entries().size() == b.ledger().entries().size());
        for (std::size_t i = 0; i < a.ledger().entries().size(); ++i) {
            CHECK(a.ledger().entries()[i].label == b.ledger().entries()[i].label);
            CHECK(a.ledger().entries()[i].amount == b.ledger().entries()[i].amount);
        }
    }
}

TEST_CASE("runner rejects the promise violation") {
    CollisionSpec two(planted_pair_spec(100, 1, 2));
    // Second member.
    two.relation = [](const std::vector<int>& t) {
        return t == std::vector<int>{1, 2} || t == std::vector<int>{3, 4};
    };
    two.enumerate = [](std::size_t limit, const std::function<bool(const std::vector<int>&)>& keep) {
        std::vector<std::vector<int>> out;
        for (const auto& m : {std::vector<int>{1, 2}, std::vector<int>{3, 4}}) {
            if (out.size() >= limit) break;
            if (keep(m)) out.push_back(m);
        }
        return out;
    };
    OracleSession session(100, 1);
    CHECK_THROWS_AS(run_generic_cost_model(session, two, element_distinctness_costs(), 21), PromiseError);
}

TEST_CASE("reduce_to_unique keeps the identity round and shrinks onward") {
    const auto spec = planted_pair_spec(64, 5, 6);
    const auto rounds = reduce_to_unique(spec, 77);
    CHECK(rounds.size() == 1 + static_cast<std::size_t>(std::ceil(2 * std::log2(64.0))));

    // Round 0 is the identity: the unique member survives.
    CHECK(rounds[0].effective_witnesses(2).size() == 1);

    // Every round's effective relation is a subset of the base relation.
    for (const auto& round : rounds) {
        for (const auto& witness : round.effective_witnesses(16)) {
            CHECK(spec.relation(witness));
        }
    }

    // Empty base relation stays empty through every round.
    for (const auto& round : reduce_to_unique(empty_spec(64, 2), 77)) {
        CHECK(round.effective_witnesses(2).empty());
    }
}

TEST_CASE("reduce_to_unique isolates an 8-member relation in most seeds") {
    const double freq = isolation_frequency(32, 8, 1000, 424242);
    CHECK(freq >= 0.75);
}
