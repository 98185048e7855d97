#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtri/graph.hpp"
#include "qtri/rng.hpp"

namespace qtri {

// Ordered list of (label, amount) charges. Amounts are produced by ceilinged
// formulas and therefore always integral, but the model allows reals.
class CostLedger {
  public:
    struct Entry {
        std::string label;
        double amount;
    };

    void charge(std::string label, double amount);
    double total() const { return total_; }
    const std::vector<Entry>& entries() const { return entries_; }
    void clear();

  private:
    std::vector<Entry> entries_;
    double total_ = 0.0;
};

// One session per run. Wraps the oracle input (a graph, or nothing for
// boolean-function problems) together with the two meters: the exact-layer
// query counter and the cost-model ledger.
class OracleSession {
  public:
    OracleSession(const Graph& graph, std::uint64_t seed)
        : graph_(&graph), n_(graph.n()), seed_(seed), rng_(seed) {}
    OracleSession(int n, std::uint64_t seed) : n_(n), seed_(seed), rng_(seed) {}

    const Graph& graph() const;
    bool has_graph() const { return graph_ != nullptr; }
    int n() const { return n_; }

    std::uint64_t exact_queries() const { return exact_queries_; }
    void count_exact_query() { ++exact_queries_; }

    CostLedger& ledger() { return ledger_; }
    const CostLedger& ledger() const { return ledger_; }

    std::uint64_t seed() const { return seed_; }
    SplitMix64& rng() { return rng_; }

  private:
    const Graph* graph_ = nullptr;
    int n_;
    std::uint64_t seed_;
    std::uint64_t exact_queries_ = 0;
    CostLedger ledger_;
    SplitMix64 rng_;
};

// Classical oracle probe: returns adj(a,b) and increments the exact counter.
bool query_edge(OracleSession& session, int a, int b);

}  // namespace qtri
