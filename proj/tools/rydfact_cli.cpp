// rydfact: factor an integer through BDD -> CNF -> MIS -> Rydberg simulation -> decode.

#include <CLI11.hpp>

#include <iostream>

#include "rydfact/pipeline.hpp"

using namespace rydfact;

namespace {

struct Options {
  std::string preset_name;
  std::string config_path;
  std::string save_config;
  std::uint64_t n = 0;
  std::vector<int> widths;
  std::string encoder;
  std::string stage;
  std::string out;
  std::string dimacs;
  std::string graph;
  std::string events;
  int bits = 0;
  std::optional<double> dt, delta_f, u_factor;
  std::optional<int> stretch;
  std::optional<std::uint64_t> shots, seed;
  std::string mode;
};

void add_problem_flags(CLI::App* app, Options& o) {
  auto* p = app->add_option("--preset", o.preset_name, "Start from a named preset")
                ->check(CLI::IsMember({"paper-6", "paper-15", "paper-15-exp", "paper-35", "paper-35-exp"}));
  app->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile)->excludes(p);
  app->add_option("--n", o.n, "Integer to factor");
  app->add_option("--widths", o.widths, "Bit widths Np Nq")->expected(2);
  app->add_option("--encoder", o.encoder, "CNF encoder")->check(CLI::IsMember({"failed_path", "generic"}));
  app->add_option("--save-config", o.save_config, "Write the effective config to this path");
}

void add_sim_flags(CLI::App* app, Options& o) {
  app->add_option("--dt", o.dt, "Integration step in microseconds")->check(CLI::PositiveNumber);
  app->add_option("--shots", o.shots, "Number of measurement shots");
  app->add_option("--seed", o.seed, "Sampling seed");
  app->add_option("--delta-f", o.delta_f, "Final detuning in MHz (multiplied by 2 pi)");
  app->add_option("--mode", o.mode, "Simulation space")->check(CLI::IsMember({"blockade", "full"}));
  app->add_option("--stretch", o.stretch, "Stretch schedule durations by k")->check(CLI::PositiveNumber);
  app->add_option("--u-factor", o.u_factor, "Full mode interaction as a multiple of max |detuning|");
}

void add_out_flag(CLI::App* app, Options& o) {
  app->add_option("--out,-o", o.out, "Output directory (default $RYDFACT_OUT or ./rydfact-out)");
}

void add_stage_flag(CLI::App* app, Options& o, const std::vector<std::string>& allowed) {
  app->add_option("--stage", o.stage, "Last stage to run")->check(CLI::IsMember(allowed));
}

PipelineConfig build_config(const Options& o, Stage default_stop) {
  PipelineConfig cfg;
  if (!o.config_path.empty()) cfg = config_from_json(read_json(o.config_path));
  else if (!o.preset_name.empty()) cfg = preset(o.preset_name);
  else cfg.stop_after = default_stop;
  if (o.n) {
    if (cfg.n != o.n) cfg.graph_source = "compiled", cfg.layout.clear(), cfg.wires.clear(), cfg.deferred_edges.clear();
    cfg.n = o.n;
    if (o.preset_name.empty() && o.config_path.empty()) cfg.name = "n" + std::to_string(o.n);
  }
  if (cfg.n == 0) throw Error(ErrorKind::invalid_argument, "give --n, --preset or --config");
  if (!o.widths.empty()) cfg.widths = Widths{o.widths[0], o.widths[1]};
  if (!o.encoder.empty()) cfg.encoder = parse_encoder(o.encoder);
  if (o.dt) cfg.sim.dt = *o.dt;
  if (o.shots) cfg.sim.shots = *o.shots;
  if (o.seed) cfg.sim.seed = *o.seed;
  if (o.delta_f) cfg.sim.delta_f = *o.delta_f;
  if (!o.mode.empty()) cfg.sim.mode = parse_mode(o.mode);
  if (o.stretch) cfg.sim.stretch = *o.stretch;
  if (o.u_factor) cfg.sim.u_factor = *o.u_factor;
  if (!o.stage.empty()) cfg.stop_after = parse_stage(o.stage);
  else if (o.config_path.empty()) cfg.stop_after = default_stop;
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (cfg.output_dir.empty()) cfg.output_dir = default_output_dir();
  return cfg;
}

int report(const PipelineResult& r) {
  for (const auto& a : r.artifacts) std::cout << "wrote " << a << "\n";
  if (r.exit_code == 2) std::cerr << "unsatisfiable: " << r.message << "\n";
  else std::cout << "status: " << r.status << "\n";
  return r.exit_code;
}

int run_config(const Options& o, Stage default_stop) {
  const PipelineConfig cfg = build_config(o, default_stop);
  if (!o.save_config.empty()) write_json(o.save_config, config_to_json(cfg, true));
  const PipelineResult r = run_pipeline(cfg);
  if (!o.dimacs.empty() && r.exit_code == 0 && cfg.stop_after >= Stage::cnf)
    std::filesystem::copy_file(std::filesystem::path(cfg.output_dir) / "formula.cnf", o.dimacs,
                               std::filesystem::copy_options::overwrite_existing);
  return report(r);
}

int cmd_estimate(const Options& o) {
  json out;
  if (o.bits) {
    out["estimate"] = to_json(estimate(o.bits));
  } else {
    PipelineConfig cfg = build_config(o, Stage::estimate);
    const ProblemInstance inst = create_instance(cfg.n, cfg.widths);
    out["instance"] = to_json(inst);
    out["estimate"] = to_json(estimate(inst.N));
    try {
      const Bdd bdd = prune(build_bdd(inst));
      out["audit"] = to_json(audit_against_build(inst, bdd, encode_generic(bdd)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::fully_dead_diagram) throw;
      out["audit"] = nullptr;
      out["status"] = "unsatisfiable";
    }
  }
  const std::string text = out.dump(2) + "\n";
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    write_text(std::filesystem::path(o.out) / "estimate.json", text);
  }
  std::cout << text;
  return out.contains("status") ? 2 : 0;
}

SimulationSettings sim_settings(const Options& o) {
  SimulationSettings s;
  if (!o.preset_name.empty()) s = preset(o.preset_name).sim;
  if (!o.config_path.empty()) s = config_from_json(read_json(o.config_path)).sim;
  if (o.dt) s.dt = *o.dt;
  if (o.shots) s.shots = *o.shots;
  if (o.seed) s.seed = *o.seed;
  if (o.delta_f) s.delta_f = *o.delta_f;
  if (!o.mode.empty()) s.mode = parse_mode(o.mode);
  if (o.stretch) s.stretch = *o.stretch;
  if (o.u_factor) s.u_factor = *o.u_factor;
  return s;
}

std::filesystem::path out_dir(const Options& o) {
  std::filesystem::path dir = o.out.empty() ? default_output_dir() : o.out;
  std::filesystem::create_directories(dir);
  return dir;
}

int cmd_simulate(const Options& o) {
  if (o.graph.empty()) return run_config(o, Stage::simulate);
  const GraphBundle b = bundle_from_json(read_json(o.graph));
  const auto dir = out_dir(o);
  const SimulationOutput sim = simulate_stage(b.graph, sim_settings(o));
  write_simulation(dir, b.graph, sim);
  std::cout << "wrote " << (dir / "events.csv").string() << "\nwrote " << (dir / "probabilities.json").string()
            << "\n";
  return 0;
}

int cmd_decode(const Options& o) {
  const GraphBundle b = bundle_from_json(read_json(o.graph));
  const auto dir = out_dir(o);
  const Histogram h = decode_stage(b, parse_events_csv(read_text(o.events)));
  write_histogram(dir, h);
  std::cout << "wrote " << (dir / "histogram.csv").string() << "\nwrote " << (dir / "histogram.svg").string()
            << "\n"
            << histogram_csv(h);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer factorization via Rydberg-atom maximum independent sets"};
  app.require_subcommand(1);
  Options o;

  auto* est = app.add_subcommand("estimate", "Resource estimate for an n-bit semiprime, or audit a concrete n");
  est->add_option("--bits", o.bits, "Bit length of n");
  add_problem_flags(est, o);
  add_out_flag(est, o);

  auto* comp = app.add_subcommand("compile", "Build BDD, CNF and the MIS graph");
  add_problem_flags(comp, o);
  add_stage_flag(comp, o, {"bdd", "cnf", "mis", "embed", "estimate"});
  comp->add_option("--dimacs", o.dimacs, "Also write the DIMACS formula to this path");
  add_out_flag(comp, o);

  auto* sim = app.add_subcommand("simulate", "Simulate a graph.json, or compile and simulate");
  sim->add_option("--graph", o.graph, "graph.json produced by compile")->check(CLI::ExistingFile);
  add_problem_flags(sim, o);
  add_sim_flags(sim, o);
  add_out_flag(sim, o);

  auto* dec = app.add_subcommand("decode", "Decode measurement events into a factor histogram");
  dec->add_option("--graph", o.graph, "graph.json produced by compile")->required()->check(CLI::ExistingFile);
  dec->add_option("--events", o.events, "events CSV (bitstring,count)")->required()->check(CLI::ExistingFile);
  add_out_flag(dec, o);

  auto* run = app.add_subcommand("run", "Run the full pipeline");
  add_problem_flags(run, o);
  add_sim_flags(run, o);
  add_stage_flag(run, o, {"bdd", "cnf", "mis", "embed", "estimate", "simulate", "decode"});
  run->add_option("--dimacs", o.dimacs, "Also write the DIMACS formula to this path");
  add_out_flag(run, o);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*est) return cmd_estimate(o);
    if (*comp) return run_config(o, Stage::embed);
    if (*sim) return cmd_simulate(o);
    if (*dec) return cmd_decode(o);
    return run_config(o, Stage::decode);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
