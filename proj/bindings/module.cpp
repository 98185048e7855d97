#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qtri/collision.hpp"
#include "qtri/combinatorial.hpp"
#include "qtri/graph.hpp"
#include "qtri/hypergeom.hpp"
#include "qtri/report.hpp"
#include "qtri/statevector.hpp"
#include "qtri/validate.hpp"
#include "qtri/walk.hpp"
#include "qtri/walk_algorithms.hpp"

namespace py = pybind11;

namespace {

qtri::RunRequest make_request(const std::string& algorithm, int n, std::uint64_t seed,
                              const std::string& family, double p, const std::string& graph_file,
                              const std::string& pattern_file) {
    qtri::RunRequest request;
    request.algorithm = algorithm;
    request.n = n;
    request.seed = seed;
    request.family = qtri::parse_family(family);
    request.edge_probability = p;
    if (!graph_file.empty()) request.graph_file = graph_file;
    if (!pattern_file.empty()) request.pattern_file = pattern_file;
    return request;
}

}  // namespace

PYBIND11_MODULE(_qtri, m) {
    m.doc() = "exact simulation and charged-query cost models for triangle finding";

    py::class_<qtri::Graph>(m, "Graph")
        .def(py::init<int>(), py::arg("n"))
        .def_property_readonly("n", &qtri::Graph::n)
        .def_property_readonly("edge_count", &qtri::Graph::edge_count)
        .def("adjacent", &qtri::Graph::adjacent)
        .def("add_edge", &qtri::Graph::add_edge)
        .def("remove_edge", &qtri::Graph::remove_edge)
        .def("degree", &qtri::Graph::degree)
        .def("neighbors", &qtri::Graph::neighbors)
        .def("edges", &qtri::Graph::edges)
        .def("__repr__", [](const qtri::Graph& g) {
            std::ostringstream out;
            out << "Graph(n=" << g.n() << ", m=" << g.edge_count() << ")";
            return out.str();
        });

    m.def("gen_graph",
          [](const std::string& family, int n, std::uint64_t seed, double p) {
              return qtri::gen_graph(qtri::parse_family(family), n, seed, p);
          },
          py::arg("family"), py::arg("n"), py::arg("seed"), py::arg("p") = 0.5);
    m.def("read_edge_list", &qtri::read_edge_list_file, py::arg("path"));
    m.def("write_edge_list", &qtri::write_edge_list_file, py::arg("graph"), py::arg("path"));

    m.def("two_path_count", &qtri::two_path_count);
    m.def("threshold_graph", &qtri::threshold_graph);
    m.def("triangle_count", &qtri::triangle_count);
    m.def("brute_find_triangle", [](const qtri::Graph& g) -> py::object {
        if (auto t = qtri::brute_find_triangle(g)) return py::make_tuple((*t)[0], (*t)[1], (*t)[2]);
        return py::none();
    });
    m.def("brute_find_copy", [](const qtri::Graph& g, const qtri::Graph& h) -> py::object {
        if (auto copy = qtri::brute_find_copy(g, h)) return py::cast(*copy);
        return py::none();
    });

    m.def("grover_success_prob",
          static_cast<double (*)(std::int64_t, std::int64_t, int)>(&qtri::grover_success_prob),
          py::arg("domain_size"), py::arg("marked_count"), py::arg("iterations"));
    m.def("diffusion",
          [](const std::vector<std::complex<double>>& amplitudes, const std::vector<std::size_t>& subset) {
              qtri::StateVector state(amplitudes.size());
              state.amp = amplitudes;
              return qtri::diffusion(state, subset).amp;
          },
          py::arg("amplitudes"), py::arg("subset"));

    m.def("element_distinctness_sweep",
          [](const std::vector<int>& values, int r, int t1_max, int t2_max) {
              const auto instance = qtri::element_distinctness_instance(values);
              const auto sweep = qtri::generic_exact_sweep(instance, r, t1_max, t2_max);
              py::dict out;
              out["baseline"] = sweep.baseline;
              out["best"] = py::make_tuple(sweep.best.t1, sweep.best.t2, sweep.best.success_probability);
              py::list grid;
              for (const auto& point : sweep.grid) {
                  grid.append(py::make_tuple(point.t1, point.t2, point.success_probability));
              }
              out["grid"] = grid;
              return out;
          },
          py::arg("values"), py::arg("r"), py::arg("t1_max"), py::arg("t2_max"));

    m.def("generic_cost",
          [](int n, int arity, int r, double s, double u, double c) {
              qtri::DatabaseModel db{[s](double) { return s; }, [u](double) { return u; },
                                     [c](double) { return c; }};
              return qtri::generic_cost(n, arity, r, db);
          },
          py::arg("n"), py::arg("arity"), py::arg("r"), py::arg("setup"), py::arg("update"),
          py::arg("check"), "generic walk cost with constant-valued cost functions");
    m.def("element_distinctness_cost", [](int n, int r) {
        return qtri::generic_cost(n, 2, r, qtri::element_distinctness_costs());
    });
    m.def("triangle_walk_cost",
          [](int n, int r) { return qtri::generic_cost(n, 2, r, qtri::triangle_walk_costs(n)); });

    m.def("hypergeom_disjoint", &qtri::hypergeom_disjoint, py::arg("n"), py::arg("p"), py::arg("q"));
    m.def("fit_slope", [](const std::vector<std::pair<double, double>>& points) {
        const auto fit = qtri::fit_slope(points);
        return py::make_tuple(fit.slope, fit.intercept, fit.residual);
    });

    m.def("run_json",
          [](const std::string& algorithm, int n, std::uint64_t seed, const std::string& family, double p,
             const std::string& graph_file, const std::string& pattern_file) {
              return qtri::report_to_json(
                  qtri::execute_run(make_request(algorithm, n, seed, family, p, graph_file, pattern_file)));
          },
          py::arg("algorithm"), py::arg("n"), py::arg("seed"), py::arg("family") = "erdos_renyi",
          py::arg("p") = 0.5, py::arg("graph_file") = "", py::arg("pattern_file") = "");

    m.def("sweep_csv",
          [](const std::string& algorithm, const std::vector<int>& n_values, int seeds, std::uint64_t seed0,
             const std::string& family, double p) {
              qtri::RunRequest base;
              base.algorithm = algorithm;
              base.seed = seed0;
              base.family = qtri::parse_family(family);
              base.edge_probability = p;
              return qtri::sweep_to_csv(qtri::run_sweep(base, n_values, seeds));
          },
          py::arg("algorithm"), py::arg("n_values"), py::arg("seeds") = 10, py::arg("seed0") = 1,
          py::arg("family") = "erdos_renyi", py::arg("p") = 0.5);
}
