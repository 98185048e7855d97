#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtri/graph.hpp"
#include "qtri/oracle.hpp"

namespace qtri {

// One benchmark run: outcome, ledger breakdown, parameters, seed. Serialized
// reports are byte-for-byte reproducible; wall time is recorded only when
// timings are requested, since it would break that reproducibility.
struct RunReport {
    int schema = 1;
    std::string run_id;
    std::string algorithm;
    int n = 0;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> params;
    bool found = false;
    std::vector<int> witness;
    std::vector<CostLedger::Entry> ledger_entries;
    double charged_total = 0.0;
    std::uint64_t exact_queries = 0;
    std::optional<double> wall_time_ms;
};

std::string report_to_json(const RunReport& report);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS residual of log2 cost
    std::size_t point_count = 0;
};

// Least-squares slope on (log2 n, log2 cost). Needs at least three distinct
// n values and positive costs.
ScalingFit fit_slope(const std::vector<std::pair<double, double>>& n_cost_points);

// Fixed CSV row for sweeps: algorithm,n,seed,charged_total,exact_queries,outcome.
struct SweepRow {
    std::string algorithm;
    int n = 0;
    std::uint64_t seed = 0;
    double charged_total = 0.0;
    std::uint64_t exact_queries = 0;
    std::string outcome;  // "witness" or "reject"
};

std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

// Instance source plus algorithm selection for one run.
struct RunRequest {
    std::string algorithm;  // combo | walk | gcol | hcopy
    int n = 0;
    std::uint64_t seed = 0;
    GraphFamily family = GraphFamily::ErdosRenyi;
    double edge_probability = 0.5;
    std::optional<std::string> graph_file;
    std::optional<std::string> pattern_file;  // hcopy
    bool timings = false;
};

RunReport execute_run(const RunRequest& request);

// Sweep over an n-grid times seeds, QTRI_THREADS-bounded parallelism, rows
// sorted by (n, seed).
std::vector<SweepRow> run_sweep(const RunRequest& base, const std::vector<int>& n_values, int seed_count);

}  // namespace qtri
