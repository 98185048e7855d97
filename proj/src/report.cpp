#include "qtri/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qtri/combinatorial.hpp"
#include "qtri/rng.hpp"
#include "qtri/walk_algorithms.hpp"

namespace qtri {

namespace {

std::string hex64(std::uint64_t value) {
    std::ostringstream out;
    out << std::hex << value;
    return out.str();
}

nlohmann::json ledger_json(const std::vector<CostLedger::Entry>& entries) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& entry : entries) {
        out.push_back({{"label", entry.label}, {"amount", entry.amount}});
    }
    return out;
}

}  // namespace

std::string report_to_json(const RunReport& report) {
    nlohmann::json j;
    j["schema"] = report.schema;
    j["run_id"] = report.run_id;
    j["algorithm"] = report.algorithm;
    j["n"] = report.n;
    j["seed"] = report.seed;
    j["params"] = report.params;
    j["outcome"] = report.found ? "witness" : "reject";
    j["witness"] = report.witness;
    j["ledger"] = {{"entries", ledger_json(report.ledger_entries)}, {"total", report.charged_total}};
    j["exact_queries"] = report.exact_queries;
    if (report.wall_time_ms) j["wall_time_ms"] = *report.wall_time_ms;
    return j.dump(2) + "\n";
}

ScalingFit fit_slope(const std::vector<std::pair<double, double>>& n_cost_points) {
    std::vector<double> distinct;
    for (const auto& [n, cost] : n_cost_points) {
        if (n <= 0 || cost <= 0) throw std::domain_error("fit_slope: points must be positive");
        if (std::find(distinct.begin(), distinct.end(), n) == distinct.end()) distinct.push_back(n);
    }
    if (distinct.size() < 3) throw std::domain_error("fit_slope: need at least 3 distinct n values");

    double sx = 0;
    double sy = 0;
    for (const auto& [n, cost] : n_cost_points) {
        sx += std::log2(n);
        sy += std::log2(cost);
    }
    const double count = static_cast<double>(n_cost_points.size());
    const double mx = sx / count;
    const double my = sy / count;
    double sxx = 0;
    double sxy = 0;
    for (const auto& [n, cost] : n_cost_points) {
        const double dx = std::log2(n) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log2(cost) - my);
    }
    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0;
    for (const auto& [n, cost] : n_cost_points) {
        const double err = std::log2(cost) - (fit.intercept + fit.slope * std::log2(n));
        rss += err * err;
    }
    fit.residual = std::sqrt(rss / count);
    fit.point_count = n_cost_points.size();
    return fit;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "algorithm,n,seed,charged_total,exact_queries,outcome\n";
    for (const auto& row : rows) {
        out << row.algorithm << ',' << row.n << ',' << row.seed << ','
            << static_cast<long long>(row.charged_total) << ',' << row.exact_queries << ',' << row.outcome
            << '\n';
    }
    return out.str();
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
    std::vector<SweepRow> rows;
    int line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        std::istringstream cells(line);
        SweepRow row;
        std::string cell;
        try {
            if (!std::getline(cells, row.algorithm, ',')) throw std::runtime_error("missing algorithm");
            if (!std::getline(cells, cell, ',')) throw std::runtime_error("missing n");
            row.n = std::stoi(cell);
            if (!std::getline(cells, cell, ',')) throw std::runtime_error("missing seed");
            row.seed = std::stoull(cell);
            if (!std::getline(cells, cell, ',')) throw std::runtime_error("missing charged_total");
            row.charged_total = std::stod(cell);
            if (!std::getline(cells, cell, ',')) throw std::runtime_error("missing exact_queries");
            row.exact_queries = std::stoull(cell);
            if (!std::getline(cells, row.outcome, ',')) throw std::runtime_error("missing outcome");
        } catch (const std::exception& e) {
            throw std::runtime_error("CSV parse error (line " + std::to_string(line_number) + "): " + e.what());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

struct GcolInstance {
    std::vector<VertexPair> edges;
    std::vector<std::uint8_t> f;
};

// Known graph: a perfect matching; f holds exactly one 1-1 edge, plus noise
// ones whose matching partner stays 0.
GcolInstance gcol_instance(int n, std::uint64_t instance_seed) {
    GcolInstance instance;
    instance.f.assign(static_cast<std::size_t>(n), 0);
    SplitMix64 rng(instance_seed);
    const int edge_count = n / 2;
    instance.edges.reserve(static_cast<std::size_t>(edge_count));
    for (int i = 0; i < edge_count; ++i) instance.edges.emplace_back(2 * i + 1, 2 * i + 2);
    const auto planted = static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(edge_count)));
    for (std::size_t i = 0; i < instance.edges.size(); ++i) {
        const auto& [a, b] = instance.edges[i];
        if (i == planted) {
            instance.f[static_cast<std::size_t>(a - 1)] = 1;
            instance.f[static_cast<std::size_t>(b - 1)] = 1;
        } else if (rng.next_bernoulli(0.5)) {
            const int keep = rng.next_bernoulli(0.5) ? a : b;
            instance.f[static_cast<std::size_t>(keep - 1)] = 1;
        }
    }
    return instance;
}

GcolInstance gcol_instance_from_graph(const Graph& g, std::uint64_t instance_seed) {
    GcolInstance instance;
    instance.edges = g.edges();
    instance.f.assign(static_cast<std::size_t>(g.n()), 0);
    if (instance.edges.empty()) return instance;
    SplitMix64 rng(instance_seed);
    const auto& [a, b] = instance.edges[static_cast<std::size_t>(rng.next_below(instance.edges.size()))];
    instance.f[static_cast<std::size_t>(a - 1)] = 1;
    instance.f[static_cast<std::size_t>(b - 1)] = 1;
    return instance;
}

}  // namespace

RunReport execute_run(const RunRequest& request) {
    if (request.n < 3) throw std::invalid_argument("run: n must be at least 3");
    RunReport report;
    report.algorithm = request.algorithm;
    report.n = request.n;
    report.seed = request.seed;
    report.params["rng"] = "splitmix64";
    report.params["log_base"] = "2";

    const std::uint64_t instance_seed = mix64(request.seed, 1);
    const std::uint64_t session_seed = mix64(request.seed, 2);

    std::optional<Graph> graph;
    if (request.graph_file) {
        graph = read_edge_list_file(*request.graph_file);
        report.params["instance"] = "file:" + *request.graph_file;
    } else if (request.algorithm != "gcol") {
        graph = gen_graph(request.family, request.n, instance_seed, request.edge_probability);
        report.params["instance"] = family_name(request.family);
        report.params["p"] = std::to_string(request.edge_probability);
    }
    if (graph && graph->n() != request.n) {
        throw std::invalid_argument("run: graph file has " + std::to_string(graph->n()) +
                                    " vertices, expected " + std::to_string(request.n));
    }

    const auto start = std::chrono::steady_clock::now();
    std::optional<OracleSession> session;

    if (request.algorithm == "combo") {
        session.emplace(*graph, session_seed);
        ComboParams params;
        report.params["epsilon"] = "3/7";
        report.params["delta"] = "1/7";
        report.params["epsilon_prime"] = "1/7";
        report.params["c0"] = std::to_string(params.c0);
        if (auto t = combinatorial_triangle(*session, params)) {
            report.found = true;
            report.witness.assign(t->begin(), t->end());
        }
    } else if (request.algorithm == "walk") {
        session.emplace(*graph, session_seed);
        report.params["r"] = std::to_string(static_cast<int>(
            std::ceil(std::pow(static_cast<double>(request.n), 3.0 / 5.0))));
        if (auto t = walk_triangle(*session)) {
            report.found = true;
            report.witness.assign(t->begin(), t->end());
        }
    } else if (request.algorithm == "gcol") {
        const GcolInstance instance = graph ? gcol_instance_from_graph(*graph, instance_seed)
                                            : gcol_instance(request.n, instance_seed);
        if (!graph) report.params["instance"] = "matching";
        session.emplace(request.n, session_seed);
        report.params["r"] = std::to_string(static_cast<int>(
            std::ceil(std::pow(static_cast<double>(request.n), 2.0 / 3.0))));
        if (auto pair = graph_collision(*session, request.n, instance.edges, instance.f)) {
            report.found = true;
            report.witness = {pair->first, pair->second};
        }
    } else if (request.algorithm == "hcopy") {
        session.emplace(*graph, session_seed);
        HPattern pattern = request.pattern_file ? read_pattern_file(*request.pattern_file) : clique_pattern(4);
        report.params["pattern"] = request.pattern_file.value_or("K4");
        report.params["k"] = std::to_string(pattern.vertex_count());
        report.params["d"] = std::to_string(pattern.root_degree());
        if (auto copy = h_copy(*session, pattern)) {
            report.found = true;
            report.witness = *copy;
        }
    } else {
        throw std::invalid_argument("unknown algorithm: " + request.algorithm);
    }

    const auto stop = std::chrono::steady_clock::now();
    report.ledger_entries = session->ledger().entries();
    report.charged_total = session->ledger().total();
    report.exact_queries = session->exact_queries();
    if (request.timings) {
        report.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    }

    std::uint64_t id = mix64(request.seed, static_cast<std::uint64_t>(request.n));
    for (char c : request.algorithm) id = mix64(id, static_cast<std::uint64_t>(c));
    for (const auto& [key, value] : report.params) {
        for (char c : key) id = mix64(id, static_cast<std::uint64_t>(c));
        for (char c : value) id = mix64(id, static_cast<std::uint64_t>(c));
    }
    report.run_id = hex64(id);
    return report;
}

std::vector<SweepRow> run_sweep(const RunRequest& base, const std::vector<int>& n_values, int seed_count) {
    if (seed_count < 1) throw std::invalid_argument("sweep: need at least one seed");
    struct Cell {
        int n;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (int n : n_values) {
        for (int s = 0; s < seed_count; ++s) cells.push_back({n, base.seed + static_cast<std::uint64_t>(s)});
    }

    unsigned threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("QTRI_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) threads = static_cast<unsigned>(parsed);
    }
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));

    std::vector<SweepRow> rows(cells.size());
    std::size_t next = 0;
    std::mutex gate;
    auto worker = [&]() {
        while (true) {
            std::size_t index;
            {
                std::lock_guard<std::mutex> lock(gate);
                if (next >= cells.size()) return;
                index = next++;
            }
            RunRequest request = base;
            request.n = cells[index].n;
            request.seed = cells[index].seed;
            const RunReport report = execute_run(request);
            rows[index] = {report.algorithm, report.n,           report.seed,
                           report.charged_total, report.exact_queries, report.found ? "witness" : "reject"};
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return a.n != b.n ? a.n < b.n : a.seed < b.seed;
    });
    return rows;
}

}  // namespace qtri
