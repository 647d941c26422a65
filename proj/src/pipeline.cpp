#include "rydfact/pipeline.hpp"

#include <cstdlib>

namespace rydfact {

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::bdd: return "bdd";
    case Stage::cnf: return "cnf";
    case Stage::mis: return "mis";
    case Stage::embed: return "embed";
    case Stage::estimate: return "estimate";
    case Stage::simulate: return "simulate";
    case Stage::decode: return "decode";
  }
  return "?";
}

Stage parse_stage(std::string_view s) {
  for (Stage st : {Stage::bdd, Stage::cnf, Stage::mis, Stage::embed, Stage::estimate, Stage::simulate, Stage::decode})
    if (s == stage_name(st)) return st;
  throw Error(ErrorKind::invalid_argument, "unknown stage '" + std::string(s) + "'");
}

const char* encoder_name(Encoder e) { return e == Encoder::failed_path ? "failed_path" : "generic"; }

Encoder parse_encoder(std::string_view s) {
  if (s == "failed_path") return Encoder::failed_path;
  if (s == "generic") return Encoder::generic;
  throw Error(ErrorKind::invalid_argument, "unknown encoder '" + std::string(s) + "'");
}

const char* mode_name(SimMode m) { return m == SimMode::blockade ? "blockade" : "full"; }

SimMode parse_mode(std::string_view s) {
  if (s == "blockade") return SimMode::blockade;
  if (s == "full") return SimMode::full;
  throw Error(ErrorKind::invalid_argument, "unknown mode '" + std::string(s) + "'");
}

json config_to_json(const PipelineConfig& cfg, bool with_output_dir) {
  json wires = json::array();
  for (const auto& w : cfg.wires) wires.push_back({{"u", w.u}, {"v", w.v}, {"interior", w.interior}});
  json deferred = json::array();
  for (const auto& [u, v] : cfg.deferred_edges) deferred.push_back({u, v});
  json j = {{"name", cfg.name},
            {"n", cfg.n},
            {"widths", cfg.widths ? json::array({cfg.widths->first, cfg.widths->second}) : json(nullptr)},
            {"encoder", encoder_name(cfg.encoder)},
            {"strict_units", cfg.strict_units},
            {"graph_source", cfg.graph_source},
            {"layout", cfg.layout},
            {"wires", wires},
            {"deferred_edges", deferred},
            {"simulation",
             {{"delta_f_mhz", cfg.sim.delta_f},
              {"dt_us", cfg.sim.dt},
              {"stretch", cfg.sim.stretch},
              {"mode", mode_name(cfg.sim.mode)},
              {"u_factor", cfg.sim.u_factor},
              {"shots", cfg.sim.shots},
              {"seed", cfg.sim.seed}}},
            {"stop_after", stage_name(cfg.stop_after)}};
  if (with_output_dir) j["output_dir"] = cfg.output_dir;
  return j;
}

PipelineConfig config_from_json(const json& j) {
  try {
    PipelineConfig cfg;
    if (j.contains("preset")) cfg = preset(j.at("preset").get<std::string>());
    cfg.name = j.value("name", cfg.name);
    cfg.n = j.value("n", cfg.n);
    if (j.contains("widths")) {
      const auto& w = j.at("widths");
      if (w.is_null()) cfg.widths.reset();
      else cfg.widths = Widths{w.at(0).get<int>(), w.at(1).get<int>()};
    }
    if (j.contains("encoder")) cfg.encoder = parse_encoder(j.at("encoder").get<std::string>());
    cfg.strict_units = j.value("strict_units", cfg.strict_units);
    cfg.graph_source = j.value("graph_source", cfg.graph_source);
    cfg.layout = j.value("layout", cfg.layout);
    if (j.contains("wires")) {
      cfg.wires.clear();
      for (const auto& w : j.at("wires"))
        cfg.wires.push_back({w.at("u").get<std::string>(), w.at("v").get<std::string>(), w.value("interior", 2)});
    }
    if (j.contains("deferred_edges")) {
      cfg.deferred_edges.clear();
      for (const auto& e : j.at("deferred_edges"))
        cfg.deferred_edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    }
    if (j.contains("simulation")) {
      const auto& s = j.at("simulation");
      cfg.sim.delta_f = s.value("delta_f_mhz", cfg.sim.delta_f);
      cfg.sim.dt = s.value("dt_us", cfg.sim.dt);
      cfg.sim.stretch = s.value("stretch", cfg.sim.stretch);
      if (s.contains("mode")) cfg.sim.mode = parse_mode(s.at("mode").get<std::string>());
      cfg.sim.u_factor = s.value("u_factor", cfg.sim.u_factor);
      cfg.sim.shots = s.value("shots", cfg.sim.shots);
      cfg.sim.seed = s.value("seed", cfg.sim.seed);
    }
    if (j.contains("stop_after")) cfg.stop_after = parse_stage(j.at("stop_after").get<std::string>());
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    return cfg;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("config: ") + e.what());
  }
}

const std::map<std::string, PipelineConfig>& presets() {
  static const std::map<std::string, PipelineConfig> all = [] {
    std::map<std::string, PipelineConfig> m;
    PipelineConfig p6;
    p6.name = "paper-6";
    p6.n = 6;
    p6.widths = Widths{2, 2};
    p6.strict_units = true;
    p6.sim.delta_f = 3.5;
    m[p6.name] = p6;

    PipelineConfig p15 = p6;
    p15.name = "paper-15";
    p15.n = 15;
    p15.widths = Widths{3, 3};
    p15.strict_units = false;
    p15.sim.shots = 12575;
    m[p15.name] = p15;

    PipelineConfig p15x = p15;
    p15x.name = "paper-15-exp";
    p15x.graph_source = "G15";
    p15x.layout = "G15Exp";
    p15x.wires = {{"p2^(1)", "~p2^(1)", 2}, {"q2^(1)", "~q2^(2)", 2}, {"q2^(1)", "~q2^(1)", 6}};
    m[p15x.name] = p15x;

    PipelineConfig p35 = p15;
    p35.name = "paper-35";
    p35.n = 35;
    p35.sim.delta_f = 3.9;
    p35.sim.shots = 9383;
    m[p35.name] = p35;

    PipelineConfig p35x = p35;
    p35x.name = "paper-35-exp";
    p35x.graph_source = "G35";
    p35x.layout = "G35Exp";
    p35x.deferred_edges = {
        {"p1^(1)", "~p1^(1)"}, {"p1^(1)", "~p1^(2)"}, {"p1^(2)", "~p1^(3)"}, {"p1^(3)", "~p1^(1)"}};
    p35x.wires = {{"p1^(2)", "~p1^(2)", 4}, {"p1^(3)", "~p1^(2)", 4}};
    m[p35x.name] = p35x;
    return m;
  }();
  return all;
}

PipelineConfig preset(std::string_view name) {
  const auto& all = presets();
  auto it = all.find(std::string(name));
  if (it == all.end()) throw Error(ErrorKind::invalid_argument, "unknown preset '" + std::string(name) + "'");
  return it->second;
}

std::string default_output_dir() {
  const char* env = std::getenv("RYDFACT_OUT");
  return env && *env ? env : "rydfact-out";
}

json bundle_to_json(const GraphBundle& b) {
  json j = to_json(b.graph);
  j["source"] = b.source;
  j["instance"] = to_json(b.instance);
  j["formula"] = to_json(b.formula);
  return j;
}

GraphBundle bundle_from_json(const json& j) {
  GraphBundle b;
  b.graph = graph_from_json(j);
  b.source = j.value("source", "");
  try {
    const auto& inst = j.at("instance");
    const auto& w = inst.at("widths");
    b.instance = create_instance(inst.at("n").get<std::uint64_t>(), Widths{w.at(0).get<int>(), w.at(1).get<int>()});
    b.formula = formula_from_json(j.at("formula"));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("graph json needs instance and formula: ") + e.what());
  }
  return b;
}

SimulationOutput simulate_stage(const MisGraph& g, const SimulationSettings& s) {
  const DriveSchedule sched = paper_schedule(kTwoPi * s.delta_f).stretched(s.stretch);
  HamiltonianSpec spec{g, s.mode};
  if (s.mode == SimMode::full) spec.interaction_u = s.u_factor * sched.max_abs_detuning();
  SimulationOutput out{evolve(spec, sched, s.dt), {}, {}};
  out.events = sample(out.state, s.shots, s.seed);
  out.summary = {{"mode", mode_name(s.mode)},
                 {"atoms", g.size()},
                 {"dimension", out.state.basis->size()},
                 {"norm", out.state.norm()},
                 {"dt_us", s.dt},
                 {"stretch", s.stretch},
                 {"delta_f_mhz", s.delta_f},
                 {"total_time_us", sched.total_time()},
                 {"shots", s.shots},
                 {"seed", s.seed}};
  if (s.mode == SimMode::full) out.summary["interaction_u"] = spec.interaction_u;
  return out;
}

void write_simulation(const std::filesystem::path& dir, const MisGraph& g, const SimulationOutput& out) {
  write_text(dir / "events.csv", events_csv(out.events));
  write_json(dir / "probabilities.json", probabilities_json(out.state, g));
}

Histogram decode_stage(const GraphBundle& b, const std::vector<MeasurementEvent>& events) {
  return process_events(b.graph, b.formula, b.instance, events);
}

void write_histogram(const std::filesystem::path& dir, const Histogram& h) {
  export_histogram(h, dir / "histogram.csv", dir / "histogram.svg");
}

namespace {

template <class F>
auto in_stage(Stage s, F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("stage ") + stage_name(s) + ": " + e.detail());
  }
}

int vertex(const MisGraph& g, const std::string& name) {
  const int k = g.index_of(name);
  if (k < 0) throw Error(ErrorKind::invalid_argument, "no atom named " + name);
  return k;
}

json mis_summary(const MisGraph& g) {
  if (g.size() > kMisCap) return {{"solved", false}, {"reason", "too many vertices for the exact solver"}};
  const MisResult r = solve_mis_exact(g);
  return {{"solved", true},
          {"size", r.size},
          {"count", r.sets.size()},
          {"target", g.clause_count + g.wire_offset()}};
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  PipelineResult res;
  const std::filesystem::path dir = cfg.output_dir.empty() ? default_output_dir() : cfg.output_dir;
  std::filesystem::create_directories(dir);
  json& report = res.report;
  report["config"] = config_to_json(cfg, false);
  auto emit = [&](const std::string& name) { res.artifacts.push_back((dir / name).string()); };
  auto finish = [&] {
    report["status"] = res.status;
    if (!res.message.empty()) report["message"] = res.message;
    write_json(dir / "report.json", report);
    emit("report.json");
    return res;
  };
  res.status = "ok";

  const ProblemInstance inst = in_stage(Stage::bdd, [&] { return create_instance(cfg.n, cfg.widths); });
  report["instance"] = to_json(inst);
  Bdd bdd = in_stage(Stage::bdd, [&] { return build_bdd(inst); });
  try {
    bdd = prune(std::move(bdd));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::fully_dead_diagram) throw;
    res.exit_code = 2;
    res.status = "unsatisfiable";
    res.message = e.what();
    return finish();
  }
  write_json(dir / "bdd.json", to_json(bdd));
  emit("bdd.json");
  report["bdd"] = {{"nodes_live", live_node_count(bdd)},
                   {"units_bit_columns", unit_count(bdd, false)},
                   {"units_all_columns", unit_count(bdd, true)}};
  if (cfg.stop_after == Stage::bdd) return finish();

  const CnfFormula formula = in_stage(Stage::cnf, [&] {
    return to_three_sat(cfg.encoder == Encoder::failed_path ? cnf_failed_paths(bdd) : encode_generic(bdd));
  });
  write_text(dir / "formula.cnf", export_dimacs(formula));
  write_json(dir / "formula.json", to_json(formula));
  emit("formula.cnf");
  emit("formula.json");
  report["cnf"] = {{"encoder", encoder_name(cfg.encoder)},
                   {"clauses", formula.clauses.size()},
                   {"ledger_units", formula.units.size()},
                   {"variables", formula.variables().size()},
                   {"text", formula.to_string()}};
  const bool sat = in_stage(Stage::cnf, [&] { return satisfiable(formula); });
  report["cnf"]["satisfiable"] = sat;
  if (!sat) {
    res.exit_code = 2;
    res.status = "unsatisfiable";
    res.message = std::to_string(inst.n) + " has no factor pair within widths (" + std::to_string(inst.Np) + ", " +
                  std::to_string(inst.Nq) + "): the formula is unsatisfiable";
    return finish();
  }
  if (cfg.stop_after == Stage::cnf) return finish();

  GraphBundle bundle = in_stage(Stage::mis, [&] {
    if (cfg.graph_source == "compiled") return GraphBundle{"compiled", inst, formula, graph_from_cnf(formula, cfg.strict_units)};
    const BuiltinInstance& b = builtin(cfg.graph_source);
    if (b.instance.n != inst.n || b.instance.Np != inst.Np || b.instance.Nq != inst.Nq)
      throw Error(ErrorKind::invalid_argument, "graph " + b.name + " belongs to a different instance");
    return GraphBundle{b.name, b.instance, b.formula, b.graph};
  });
  report["graph"] = {{"source", bundle.source}, {"atoms", bundle.graph.size()}, {"clause_count", bundle.graph.clause_count}};
  report["mis"] = in_stage(Stage::mis, [&] { return mis_summary(bundle.graph); });
  write_json(dir / "graph.json", bundle_to_json(bundle));
  emit("graph.json");
  if (cfg.stop_after == Stage::mis) return finish();

  in_stage(Stage::embed, [&] {
    MisGraph& g = bundle.graph;
    std::vector<Edge> deferred, wired;
    std::vector<int> lengths;
    for (const auto& [u, v] : cfg.deferred_edges) deferred.push_back({vertex(g, u), vertex(g, v)});
    g = defer_edges(g, deferred);
    for (const auto& w : cfg.wires) {
      wired.push_back({vertex(g, w.u), vertex(g, w.v)});
      lengths.push_back(w.interior);
    }
    g = expand_wires(g, wired, lengths);
    if (!cfg.layout.empty()) {
      const MisGraph& ref = builtin(cfg.layout).graph;
      if (ref.coordinates.empty()) throw Error(ErrorKind::invalid_argument, cfg.layout + " has no coordinates");
      g.coordinates.assign(g.size(), Point{0, 0, 0});
      g.dimension = ref.dimension;
      for (int k = 0; k < g.size(); ++k) g.coordinates[k] = ref.coordinates[vertex(ref, g.vertices[k].name())];
    }
    report["embed"] = {{"atoms", g.size()},
                       {"wire_atoms", g.wire_atom_count()},
                       {"wires", g.wires.size()},
                       {"deferred_edges", g.deferred_edges.size()},
                       {"mis", mis_summary(g)}};
    if (!g.coordinates.empty()) report["embed"]["layout"] = to_json(validate_layout(g, g.coordinates), g);
    return 0;
  });
  write_json(dir / "graph.json", bundle_to_json(bundle));
  if (cfg.stop_after == Stage::embed) return finish();

  in_stage(Stage::estimate, [&] {
    report["estimate"] = to_json(estimate(inst.N));
    report["audit"] = to_json(audit_against_build(inst, bdd, encode_generic(bdd)));
    return 0;
  });
  if (cfg.stop_after == Stage::estimate) return finish();

  const SimulationOutput sim = in_stage(Stage::simulate, [&] { return simulate_stage(bundle.graph, cfg.sim); });
  write_simulation(dir, bundle.graph, sim);
  emit("events.csv");
  emit("probabilities.json");
  report["simulation"] = sim.summary;
  if (cfg.stop_after == Stage::simulate) return finish();

  const Histogram h = in_stage(Stage::decode, [&] { return decode_stage(bundle, sim.events); });
  write_histogram(dir, h);
  emit("histogram.csv");
  emit("histogram.svg");
  report["histogram"] = to_json(h);
  res.histogram = h;
  return finish();
}

}  // namespace rydfact
