#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qtri/graph.hpp"
#include "qtri/oracle.hpp"

namespace qtri {

struct ComboParams {
    double epsilon = 3.0 / 7.0;
    double delta = 1.0 / 7.0;
    double epsilon_prime = 1.0 / 7.0;
    double c0 = 8.0;            // hypothesis-test repetition constant
    double threshold_cap = 0.0; // 0 = analytic worst case over correct runs, times 4
};

// Charged-query abort bound for a run with these parameters.
double combo_threshold_cap(int n, const ComboParams& params);

// Lemma-2 scan: n-1 classical probes for the neighborhood of v, then a safe
// Grover search for an edge of G inside the neighborhood square. Returns the
// induced triangle, or certifies absence (up to the n^-3 search failure).
std::optional<Triangle> scan_vertex(OracleSession& session, int v);

enum class DegreeBand { Low, High };

// Sampling hypothesis test: ceil(c0 log2 n) rounds of ceil(n^delta) probes
// from v x [n]; low iff fewer than half the rounds saw an edge.
DegreeBand degree_hypothesis(OracleSession& session, int v, double delta, double c0);

struct Partition {
    std::vector<VertexPair> t_edges;  // pairs drained at low two-path count
    std::vector<VertexPair> e_edges;  // pairs moved by the degree branches
    std::uint64_t low_branch_executions = 0;
    std::uint64_t high_branch_executions = 0;
};

struct ClassifyResult {
    std::optional<Triangle> triangle;  // found in a high branch
    Partition partition;
    bool aborted = false;  // charged-query threshold exceeded
};

// The two nested classification loops: drain pairs with t(G', v, w) below
// n^{1-eps'} into T, then settle one nonzero-degree vertex per iteration via
// the degree hypothesis until G' is empty.
ClassifyResult classify(OracleSession& session, Graph g_prime, const ComboParams& params);
ClassifyResult classify(OracleSession& session, const std::vector<VertexPair>& g_prime_edges,
                        const ComboParams& params);

// Safe Grover over the triangles of the known graph T for one that lies in G.
std::optional<Triangle> search_t(OracleSession& session, const std::vector<VertexPair>& t_edges,
                                 double epsilon_prime);

// Amplitude-amplification contract for triangles with an edge in the known
// set E: two-term charge, success probability 1 - 1/n.
std::optional<Triangle> search_e(OracleSession& session, const std::vector<VertexPair>& e_edges);

struct ComboRunStats {
    std::uint64_t scanned_vertices = 0;
    std::uint64_t scan_checks = 0;
    bool classify_ran = false;
    bool aborted = false;
    std::uint64_t t_triangle_count = 0;   // t(T) of the drained set
    double t_triangle_bound = 0.0;        // C(n,2) * n^{1-eps'}
    std::uint64_t low_branch_executions = 0;
    std::uint64_t high_branch_executions = 0;
};

// Steps 1-9 of the combinatorial algorithm. Neighborhood scans for all k
// sampled vertices are charged up front, then the per-vertex searches run
// until one yields a triangle; otherwise the leftover pair set is classified
// and both partition sides are searched. Every output is re-verified with
// three direct probes.
std::optional<Triangle> combinatorial_triangle(OracleSession& session, const ComboParams& params = {},
                                               ComboRunStats* stats = nullptr);

}  // namespace qtri
