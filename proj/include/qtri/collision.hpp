#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtri/oracle.hpp"

namespace qtri {

// Setup/update/checking costs of the walk database, in oracle queries, as
// functions of the set size r. The closures already contain any ceilings the
// instantiated formulas call for.
struct DatabaseModel {
    std::function<double(double)> setup;
    std::function<double(double)> update;
    std::function<double(double)> check;
};

DatabaseModel element_distinctness_costs();
DatabaseModel graph_collision_costs();
DatabaseModel triangle_walk_costs(int n);
DatabaseModel h_copy_costs(int n, int root_degree);

// Collision relation over canonical (ascending) k-tuples of [1..n]. The
// enumerator walks the reference input and reports members of the base
// relation accepted by `keep`, stopping once `limit` are found.
struct CollisionSpec {
    int n = 0;
    int arity = 0;
    std::function<bool(const std::vector<int>&)> relation;
    std::function<bool(const std::vector<int>&)> restriction;  // null = unrestricted
    std::function<std::vector<std::vector<int>>(std::size_t limit,
                                                const std::function<bool(const std::vector<int>&)>& keep)>
        enumerate;

    bool effective(const std::vector<int>& tuple) const;
    std::vector<std::vector<int>> effective_witnesses(std::size_t limit) const;
};

struct PromiseError : std::runtime_error {
    explicit PromiseError(const std::string& msg) : std::runtime_error(msg) {}
};

// s(r) + (n/r)^{k/2} (c(r) + sqrt(r) u(r)), evaluated numerically.
double generic_cost(int n, int arity, int r, const DatabaseModel& db);

// Integer-ceilinged charge the cost-model runner books for one schedule:
// ceil(s) + ceil((n/r)^{k/2}) * (ceil(c) + ceil(sqrt r) * ceil(u)).
std::uint64_t generic_cost_charge(int n, int arity, int r, const DatabaseModel& db);

// Books the full walk schedule on the ledger (entries "setup", "checks",
// "updates" under the given prefix).
void charge_generic_schedule(OracleSession& session, int n, int arity, int r, const DatabaseModel& db,
                             const std::string& label_prefix);

// Charged run under the unique-or-empty promise. Charges the schedule, then
// returns the unique effective collision with certainty if it exists
// (amplified variant) and rejects with certainty otherwise. Two or more
// effective collisions violate the promise.
std::optional<std::vector<int>> run_generic_cost_model(OracleSession& session, const CollisionSpec& spec,
                                                       const DatabaseModel& db, int r);

// Random restrictions at densities 1, 1/2, 1/4, ... over ceil(log2 n^k) + 1
// rounds; round 0 is the identity. Each output's effective relation is a
// subset of the input's. If the relation is nonempty, some round isolates a
// unique member with probability at least 3/4 over the seed.
std::vector<CollisionSpec> reduce_to_unique(const CollisionSpec& spec, std::uint64_t seed);

}  // namespace qtri
