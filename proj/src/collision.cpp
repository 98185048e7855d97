#include "qtri/collision.hpp"

#include <cmath>

#include "qtri/rng.hpp"

namespace qtri {

DatabaseModel element_distinctness_costs() {
    return {[](double r) { return r; }, [](double) { return 1.0; }, [](double) { return 0.0; }};
}

DatabaseModel graph_collision_costs() { return element_distinctness_costs(); }

DatabaseModel triangle_walk_costs(int n) {
    const double root_n = std::ceil(std::sqrt(static_cast<double>(n)));
    const double log_n = std::ceil(std::log2(static_cast<double>(std::max(n, 2))));
    return {[](double r) { return r * r; },
            [](double r) { return r; },
            [root_n, log_n](double r) { return root_n * std::ceil(std::pow(r, 2.0 / 3.0)) * log_n; }};
}

DatabaseModel h_copy_costs(int n, int root_degree) {
    const double root_n = std::ceil(std::sqrt(static_cast<double>(n)));
    const double log_n = std::ceil(std::log2(static_cast<double>(std::max(n, 2))));
    const double exponent = static_cast<double>(root_degree) / (root_degree + 1.0);
    return {[](double r) { return r * r; },
            [](double r) { return r; },
            [root_n, log_n, exponent](double r) { return root_n * std::ceil(std::pow(r, exponent)) * log_n; }};
}

bool CollisionSpec::effective(const std::vector<int>& tuple) const {
    return relation(tuple) && (!restriction || restriction(tuple));
}

std::vector<std::vector<int>> CollisionSpec::effective_witnesses(std::size_t limit) const {
    if (!restriction) {
        return enumerate(limit, [](const std::vector<int>&) { return true; });
    }
    return enumerate(limit, restriction);
}

double generic_cost(int n, int arity, int r, const DatabaseModel& db) {
    if (r < 1 || r >= n) throw std::domain_error("generic_cost: need 1 <= r < n");
    const double rounds = std::pow(static_cast<double>(n) / r, arity / 2.0);
    return db.setup(r) + rounds * (db.check(r) + std::sqrt(static_cast<double>(r)) * db.update(r));
}

std::uint64_t generic_cost_charge(int n, int arity, int r, const DatabaseModel& db) {
    if (r < 1 || r >= n) throw std::domain_error("generic_cost_charge: need 1 <= r < n");
    const auto rounds = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(n) / r, arity / 2.0)));
    const auto setup = static_cast<std::uint64_t>(std::ceil(db.setup(r)));
    const auto check = static_cast<std::uint64_t>(std::ceil(db.check(r)));
    const auto update = static_cast<std::uint64_t>(std::ceil(db.update(r)));
    const auto sqrt_r = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(r))));
    return setup + rounds * (check + sqrt_r * update);
}

void charge_generic_schedule(OracleSession& session, int n, int arity, int r, const DatabaseModel& db,
                             const std::string& label_prefix) {
    const auto rounds = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(n) / r, arity / 2.0)));
    const auto setup = static_cast<std::uint64_t>(std::ceil(db.setup(r)));
    const auto check = static_cast<std::uint64_t>(std::ceil(db.check(r)));
    const auto update = static_cast<std::uint64_t>(std::ceil(db.update(r)));
    const auto sqrt_r = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(r))));
    session.ledger().charge(label_prefix + "-setup", static_cast<double>(setup));
    session.ledger().charge(label_prefix + "-checks", static_cast<double>(rounds * check));
    session.ledger().charge(label_prefix + "-updates", static_cast<double>(rounds * sqrt_r * update));
}

std::optional<std::vector<int>> run_generic_cost_model(OracleSession& session, const CollisionSpec& spec,
                                                       const DatabaseModel& db, int r) {
    if (r < 1 || r >= spec.n) throw std::domain_error("run_generic_cost_model: need 1 <= r < n");
    auto witnesses = spec.effective_witnesses(2);
    if (witnesses.size() >= 2) throw PromiseError("unique-or-empty promise violated");
    charge_generic_schedule(session, spec.n, spec.arity, r, db, "generic");
    if (witnesses.empty()) return std::nullopt;
    return witnesses.front();
}

namespace {

std::uint64_t tuple_hash(const std::vector<int>& tuple) {
    std::uint64_t h = 0x51ab9cd4e1fULL;
    for (int item : tuple) h = mix64(h, static_cast<std::uint64_t>(item));
    return h;
}

}  // namespace

std::vector<CollisionSpec> reduce_to_unique(const CollisionSpec& spec, std::uint64_t seed) {
    const int rounds =
        1 + static_cast<int>(std::ceil(spec.arity * std::log2(static_cast<double>(std::max(spec.n, 2)))));
    std::vector<CollisionSpec> out;
    out.reserve(static_cast<std::size_t>(rounds));
    for (int i = 0; i < rounds; ++i) {
        CollisionSpec round = spec;
        const int density_bits = i;
        auto keep = [seed, i, density_bits](const std::vector<int>& tuple) {
            if (density_bits == 0) return true;
            const std::uint64_t h = mix64(seed, static_cast<std::uint64_t>(i), tuple_hash(tuple));
            return (h >> (64 - density_bits)) == 0;
        };
        if (spec.restriction) {
            auto base = spec.restriction;
            round.restriction = [base, keep](const std::vector<int>& tuple) {
                return base(tuple) && keep(tuple);
            };
        } else {
            round.restriction = keep;
        }
        out.push_back(std::move(round));
    }
    return out;
}

}  // namespace qtri
