#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rydfact/bdd.hpp"
#include "rydfact/builtin.hpp"
#include "rydfact/error.hpp"
#include "rydfact/estimate.hpp"
#include "rydfact/pipeline.hpp"
#include "rydfact/sim.hpp"

namespace py = pybind11;
using namespace rydfact;

namespace {

// Structured values cross the boundary as JSON text and come back as dicts.
py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_python(const py::object& o) {
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

std::optional<Widths> widths_arg(const std::optional<std::pair<int, int>>& w) {
  if (!w) return std::nullopt;
  return Widths{w->first, w->second};
}

Bdd pruned(std::uint64_t n, const std::optional<std::pair<int, int>>& widths) {
  return prune(build_bdd(create_instance(n, widths_arg(widths))));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Semiprime factoring via BDD, 3-SAT and maximum independent set reductions";

  py::register_exception<Error>(m, "RydfactError", PyExc_RuntimeError);

  m.def("create_instance", [](std::uint64_t n, std::optional<std::pair<int, int>> widths) {
    return to_python(to_json(create_instance(n, widths_arg(widths))));
  }, py::arg("n"), py::arg("widths") = py::none());

  m.def("divisor_pairs", [](std::uint64_t n, std::optional<std::pair<int, int>> widths) {
    return divisor_pairs(create_instance(n, widths_arg(widths)));
  }, py::arg("n"), py::arg("widths") = py::none());

  m.def("estimate", [](int n_bits) { return to_python(to_json(estimate(n_bits))); }, py::arg("n_bits"));

  m.def("failed_path_cnf", [](std::uint64_t n, std::optional<std::pair<int, int>> widths) {
    return to_python(to_json(cnf_failed_paths(pruned(n, widths))));
  }, py::arg("n"), py::arg("widths") = py::none(), "Failed-path CNF of n as a formula dict");

  m.def("dimacs", [](std::uint64_t n, std::optional<std::pair<int, int>> widths, const std::string& encoder) {
    const Bdd b = pruned(n, widths);
    return export_dimacs(to_three_sat(parse_encoder(encoder) == Encoder::failed_path ? cnf_failed_paths(b)
                                                                                      : encode_generic(b)));
  }, py::arg("n"), py::arg("widths") = py::none(), py::arg("encoder") = "failed_path");

  m.def("factor_pairs", [](std::uint64_t n, std::optional<std::pair<int, int>> widths, const std::string& encoder) {
    const ProblemInstance inst = create_instance(n, widths_arg(widths));
    const Bdd b = prune(build_bdd(inst));
    const CnfFormula f = parse_encoder(encoder) == Encoder::failed_path ? cnf_failed_paths(b) : encode_generic(b);
    return factor_projection(f, inst.Np, inst.Nq);
  }, py::arg("n"), py::arg("widths") = py::none(), py::arg("encoder") = "failed_path",
     "Factor pairs read off the models of the CNF");

  m.def("builtin_names", [] {
    std::vector<std::string> out;
    for (const auto& [name, b] : builtin_instances()) out.push_back(name);
    return out;
  });

  m.def("builtin_graph", [](const std::string& name) { return to_python(to_json(builtin(name).graph)); },
        py::arg("name"));

  m.def("maximum_independent_sets", [](const std::string& name) {
    const MisGraph& g = builtin(name).graph;
    const MisResult r = solve_mis_exact(g);
    std::vector<std::vector<std::string>> sets;
    for (const auto& s : r.sets) {
      std::vector<std::string> names;
      for (int v : s) names.push_back(g.vertices[v].name());
      sets.push_back(names);
    }
    return py::make_tuple(r.size, sets);
  }, py::arg("name"));

  m.def("evolve_builtin", [](const std::string& name, double delta_f_mhz, double dt, double stretch) {
    const MisGraph& g = builtin(name).graph;
    const StateVector s = evolve(HamiltonianSpec{g}, paper_schedule(kTwoPi * delta_f_mhz).stretched(stretch), dt);
    return to_python(probabilities_json(s, g));
  }, py::arg("name"), py::arg("delta_f_mhz") = 3.5, py::arg("dt") = 1e-3, py::arg("stretch") = 1.0,
     "Final-state probabilities after the sweep, blockade subspace");

  m.def("preset_names", [] {
    std::vector<std::string> out;
    for (const auto& [name, cfg] : presets()) out.push_back(name);
    return out;
  });

  m.def("preset_config", [](const std::string& name) { return to_python(config_to_json(preset(name), false)); },
        py::arg("name"));

  m.def("run_pipeline", [](const py::object& config, const std::string& output_dir) {
    PipelineConfig cfg = py::isinstance<py::str>(config) ? preset(config.cast<std::string>())
                                                         : config_from_json(from_python(config));
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    PipelineResult r;
    {
      py::gil_scoped_release release;
      r = run_pipeline(cfg);
    }
    return py::make_tuple(r.exit_code, to_python(r.report));
  }, py::arg("config"), py::arg("output_dir") = "",
     "Run the pipeline from a preset name or config dict; returns (exit_code, report)");
}
