#pragma once

#include <cstdint>
#include <vector>

#include "qtri/graph.hpp"

namespace qtri {

// Exact hypergeometric disjointness probability against the (1-pq)^n
// approximation, with the n(p^3+q^3+1/n) log-envelope scaled by `slack`.
struct DisjointnessRow {
    int n = 0;
    double p = 0.0;
    double q = 0.0;
    double exact = 0.0;
    double approx = 0.0;
    double log_gap = 0.0;   // |ln exact - ln approx|
    double envelope = 0.0;  // slack * n * (p^3 + q^3 + 1/n)
    bool ok = false;
};

std::vector<DisjointnessRow> disjointness_grid(double slack = 2.0);

// One trial of the sampled-neighborhood inclusion event: sample
// k = ceil(4 n^eps log2 n) vertices without repetition, build the leftover
// pair set, and test that every leftover pair has at most n^{1-eps} common
// neighbors.
bool sampled_cover_trial(const Graph& g, double epsilon, std::uint64_t seed);

// Frequency of the event over erdos_renyi(1/2) instances.
double sampled_cover_frequency(int n, double epsilon, int trials, std::uint64_t seed0);

// Frequency with which some restriction round isolates exactly one member of
// a fixed m-element pair relation on [n].
double isolation_frequency(int n, int collision_count, int trials, std::uint64_t seed0);

}  // namespace qtri
