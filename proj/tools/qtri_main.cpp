#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtri/collision.hpp"
#include "qtri/graph.hpp"
#include "qtri/hypergeom.hpp"
#include "qtri/report.hpp"
#include "qtri/statevector.hpp"
#include "qtri/validate.hpp"
#include "qtri/walk.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::istringstream in(csv);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        if (!cell.empty()) out.push_back(std::stoi(cell));
    }
    if (out.empty()) throw CLI::ValidationError("expected a comma-separated integer list");
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
}

int cmd_validate(const std::string& lemma) {
    using std::printf;
    bool pass = true;
    if (lemma == "useful") {
        printf("%6s %6s %6s %14s %14s %10s %10s\n", "n", "p", "q", "exact", "(1-pq)^n", "log-gap", "envelope");
        for (const auto& row : qtri::disjointness_grid()) {
            printf("%6d %6.2f %6.2f %14.6e %14.6e %10.4f %10.4f %s\n", row.n, row.p, row.q, row.exact,
                   row.approx, row.log_gap, row.envelope, row.ok ? "" : "  VIOLATION");
            pass = pass && row.ok;
        }
    } else if (lemma == "almosttrivi") {
        const double freq = qtri::sampled_cover_frequency(729, 3.0 / 7.0, 50, 1);
        printf("sampled-cover inclusion frequency over 50 seeds at n=729: %.3f (need >= 0.90)\n", freq);
        pass = freq >= 0.90;
    } else if (lemma == "isolation") {
        const double freq = qtri::isolation_frequency(32, 8, 1000, 1);
        printf("isolation frequency for an 8-member relation over 1000 seeds: %.3f (need >= 0.75)\n", freq);
        pass = freq >= 0.75;
    } else if (lemma == "grover") {
        int empty_accepts = 0;
        int hits = 0;
        const int trials = 1000;
        const qtri::Graph k4 = qtri::gen_graph(qtri::GraphFamily::Complete, 4, 0);
        for (int trial = 0; trial < trials; ++trial) {
            qtri::OracleSession session(k4, static_cast<std::uint64_t>(trial) + 1);
            const auto none =
                qtri::safe_grover_charged(session, 1024, 0, 2.0, "probe");
            if (none) ++empty_accepts;
            const auto some = qtri::safe_grover_charged(session, 4, 1, 2.0, "probe");
            if (some) ++hits;
        }
        printf("safe grover: %d/%d acceptances with no marked item (need 0), "
               "%d/%d successes with one marked of 4 (need >= %.0f)\n",
               empty_accepts, trials, hits, trials, trials * (1.0 - 1.0 / 16.0));
        pass = empty_accepts == 0 && hits >= static_cast<int>(trials * (1.0 - 1.0 / 16.0));
    } else {
        std::cerr << "unknown lemma suite: " << lemma << "\n";
        return 2;
    }
    printf("%s\n", pass ? "PASS" : "FAIL");
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"query-cost laboratory for triangle finding"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "write a graph instance as an edge list");
    std::string gen_family = "erdos_renyi";
    int gen_n = 64;
    std::uint64_t gen_seed = 1;
    double gen_p = 0.5;
    std::string gen_out = "-";
    gen->add_option("--family", gen_family, "erdos_renyi | planted_triangle | triangle_free_bipartite | complete");
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--seed", gen_seed, "instance seed");
    gen->add_option("--p", gen_p, "edge probability for the random families");
    gen->add_option("--out", gen_out, "output path (- for stdout)");

    // run
    auto* run = app.add_subcommand("run", "single run, JSON report");
    std::string run_alg;
    int run_n = 0;
    std::uint64_t run_seed = 1;
    std::string run_family = "erdos_renyi";
    double run_p = 0.5;
    std::string run_graph;
    std::string run_pattern;
    std::string run_out = "-";
    bool run_timings = false;
    bool run_require_witness = false;
    run->add_option("--alg", run_alg, "combo | walk | gcol | hcopy")->required();
    run->add_option("--n", run_n, "vertex count")->required();
    run->add_option("--seed", run_seed, "run seed");
    run->add_option("--graph", run_graph, "edge-list file (generated from --family otherwise)");
    run->add_option("--pattern", run_pattern, "pattern file for hcopy");
    run->add_option("--family", run_family, "instance family when no --graph is given");
    run->add_option("--p", run_p, "edge probability for the random families");
    run->add_option("--out", run_out, "output path (- for stdout)");
    run->add_flag("--timings", run_timings, "include wall_time_ms (breaks byte reproducibility)");
    run->add_flag("--require-witness", run_require_witness, "exit 1 when the run rejects");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "CSV over an n-grid times seeds");
    std::string sweep_alg;
    std::string sweep_ns;
    int sweep_seeds = 10;
    std::uint64_t sweep_seed0 = 1;
    std::string sweep_family = "erdos_renyi";
    double sweep_p = 0.5;
    std::string sweep_out = "-";
    sweep->add_option("--alg", sweep_alg, "combo | walk | gcol | hcopy")->required();
    sweep->add_option("--n", sweep_ns, "comma-separated n grid")->required();
    sweep->add_option("--seeds", sweep_seeds, "seeds per n");
    sweep->add_option("--seed0", sweep_seed0, "first seed");
    sweep->add_option("--family", sweep_family, "instance family");
    sweep->add_option("--p", sweep_p, "edge probability");
    sweep->add_option("--out", sweep_out, "output path (- for stdout)");

    // fit
    auto* fit = app.add_subcommand("fit", "log-log slope from a sweep CSV");
    std::string fit_csv;
    std::string fit_alg;
    fit->add_option("--csv", fit_csv, "sweep CSV path")->required();
    fit->add_option("--alg", fit_alg, "restrict to one algorithm column value");

    // validate
    auto* validate = app.add_subcommand("validate", "Monte-Carlo lemma suites");
    std::string validate_lemma;
    std::string validate_grid = "default";
    validate->add_option("--lemma", validate_lemma, "useful | almosttrivi | isolation | grover")->required();
    validate->add_option("--grid", validate_grid, "grid name (only \"default\")");

    // exact
    auto* exact = app.add_subcommand("exact", "exact-walk sweep on an element-distinctness instance");
    int exact_n = 9;
    int exact_r = 3;
    int exact_t1 = 12;
    int exact_t2 = 8;
    std::string exact_values;
    exact->add_option("--n", exact_n, "ground set size (<= 14)");
    exact->add_option("--r", exact_r, "walk set size (<= 6)");
    exact->add_option("--t1-max", exact_t1, "outer iteration sweep bound");
    exact->add_option("--t2-max", exact_t2, "walk step sweep bound");
    exact->add_option("--values", exact_values,
                      "comma-separated oracle values (default: injective except one colliding pair)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            const auto family = qtri::parse_family(gen_family);
            const qtri::Graph g = qtri::gen_graph(family, gen_n, gen_seed, gen_p);
            std::ostringstream out;
            qtri::write_edge_list(g, out);
            write_text(gen_out, out.str());
            return 0;
        }
        if (*run) {
            qtri::RunRequest request;
            request.algorithm = run_alg;
            request.n = run_n;
            request.seed = run_seed;
            request.family = qtri::parse_family(run_family);
            request.edge_probability = run_p;
            if (!run_graph.empty()) request.graph_file = run_graph;
            if (!run_pattern.empty()) request.pattern_file = run_pattern;
            request.timings = run_timings;
            const qtri::RunReport report = qtri::execute_run(request);
            write_text(run_out, qtri::report_to_json(report));
            if (run_require_witness && !report.found) return 1;
            return 0;
        }
        if (*sweep) {
            qtri::RunRequest base;
            base.algorithm = sweep_alg;
            base.seed = sweep_seed0;
            base.family = qtri::parse_family(sweep_family);
            base.edge_probability = sweep_p;
            const auto rows = qtri::run_sweep(base, parse_int_list(sweep_ns), sweep_seeds);
            write_text(sweep_out, qtri::sweep_to_csv(rows));
            return 0;
        }
        if (*fit) {
            std::ifstream in(fit_csv);
            if (!in) throw std::runtime_error("cannot open " + fit_csv);
            std::stringstream buffer;
            buffer << in.rdbuf();
            const auto rows = qtri::parse_sweep_csv(buffer.str());
            std::map<std::string, std::vector<std::pair<double, double>>> points;
            for (const auto& row : rows) {
                if (!fit_alg.empty() && row.algorithm != fit_alg) continue;
                points[row.algorithm].emplace_back(static_cast<double>(row.n), row.charged_total);
            }
            if (points.empty()) throw std::runtime_error("no matching rows in " + fit_csv);
            nlohmann::json out = nlohmann::json::array();
            for (const auto& [algorithm, pts] : points) {
                const qtri::ScalingFit f = qtri::fit_slope(pts);
                out.push_back({{"algorithm", algorithm},
                               {"slope", f.slope},
                               {"intercept", f.intercept},
                               {"residual", f.residual},
                               {"points", f.point_count}});
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*validate) {
            if (validate_grid != "default") throw std::runtime_error("unknown grid: " + validate_grid);
            return cmd_validate(validate_lemma);
        }
        if (*exact) {
            std::vector<int> values;
            if (exact_values.empty()) {
                values.resize(static_cast<std::size_t>(exact_n));
                for (int i = 0; i < exact_n; ++i) values[static_cast<std::size_t>(i)] = i;
                if (exact_n >= 2) values[static_cast<std::size_t>(exact_n - 1)] = 0;  // one colliding pair
            } else {
                values = parse_int_list(exact_values);
            }
            const auto instance = qtri::element_distinctness_instance(values);
            const auto sweep_result = qtri::generic_exact_sweep(instance, exact_r, exact_t1, exact_t2);
            nlohmann::json grid = nlohmann::json::array();
            for (const auto& point : sweep_result.grid) {
                grid.push_back({{"t1", point.t1}, {"t2", point.t2}, {"p", point.success_probability}});
            }
            nlohmann::json out = {
                {"n", exact_n},
                {"r", exact_r},
                {"instance", instance.description},
                {"baseline", sweep_result.baseline},
                {"best",
                 {{"t1", sweep_result.best.t1},
                  {"t2", sweep_result.best.t2},
                  {"p", sweep_result.best.success_probability}}},
                {"grid", grid}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const qtri::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
