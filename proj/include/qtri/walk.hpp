#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtri/statevector.hpp"

namespace qtri {

// Basis for the set walk over a ground set {0, .., n-1}: legal pairs (A, x)
// with |A| = r, x not in A, plus |A| = r+1, x in A. Subsets are ranked in
// colexicographic order; within a set block the coin entries are contiguous.
class WalkBasis {
  public:
    WalkBasis(int n, int r);

    int n() const { return n_; }
    int r() const { return r_; }

    std::size_t size() const { return r_sector_ + r1_sector_; }
    std::size_t r_sector_size() const { return r_sector_; }
    std::size_t set_count_r() const { return sets_r_; }

    std::size_t encode_r(const std::vector<int>& set, int coin) const;
    std::size_t encode_r1(const std::vector<int>& set, int coin) const;
    // Returns (set, coin); the sector is implied by the set size.
    std::pair<std::vector<int>, int> decode(std::size_t index) const;
    bool in_r_sector(std::size_t index) const { return index < r_sector_; }

    std::vector<int> unrank_r(std::size_t rank) const;

    // Involution realizing both shift sub-steps: (A,x) <-> (A+x, x).
    const std::vector<std::size_t>& shift_map() const { return shift_map_; }

  private:
    int n_;
    int r_;
    std::size_t sets_r_;
    std::size_t r_sector_;
    std::size_t r1_sector_;
    std::vector<std::uint64_t> binom_;  // (n+1) x (n+1)
    std::vector<std::size_t> shift_map_;

    std::uint64_t choose(int a, int b) const;
    std::size_t rank_subset(const std::vector<int>& set) const;
    std::vector<int> unrank_subset(std::size_t rank, int size) const;
};

// One step of the set walk: diffuse the coin over S-A, add x to A, diffuse
// the coin over A, remove x from A. Unitary; maps the r-sector span to itself.
void walk_step_in_place(const WalkBasis& basis, StateVector& state);
StateVector walk_step(const WalkBasis& basis, StateVector state);

// A collision-search instance small enough for exact simulation. The data
// register is a function of the set register, so only (A, x) is tracked.
struct ExactCollisionInstance {
    int n = 0;
    int arity = 0;
    std::vector<int> values;  // oracle input f over the ground set
    std::string description;
    std::function<bool(const std::vector<int>&)> marked;                                // Phi accepts
    std::function<std::optional<std::vector<int>>(const std::vector<int>&)> extract;    // Phi's witness
};

// k = 2 element distinctness: a set is marked when it holds two items with
// equal values.
ExactCollisionInstance element_distinctness_instance(std::vector<int> values);

struct GenericExactResult {
    double success_probability = 0.0;
    // Witness -> conditional probability given acceptance.
    std::vector<std::pair<std::vector<int>, double>> witness_distribution;
};

// Exact run of the generic collision walk: uniform start over the r-sector,
// then t1 rounds of [phase flip on marked sets; t2 walk steps], then a
// measurement of the set register.
GenericExactResult generic_exact(const ExactCollisionInstance& instance, int r, int t1, int t2);

struct SweepPoint {
    int t1 = 0;
    int t2 = 0;
    double success_probability = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> grid;
    SweepPoint best;
    double baseline = 0.0;  // (t1, t2) = (0, 0)
};

// Evaluates generic_exact over t1 in [1, t1_max], t2 in [1, t2_max] and
// records the measured optimum next to the uniform-measurement baseline.
SweepResult generic_exact_sweep(const ExactCollisionInstance& instance, int r, int t1_max, int t2_max);

}  // namespace qtri
