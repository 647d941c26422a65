#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rydfact/builtin.hpp"
#include "rydfact/serialize.hpp"

namespace rydfact {

enum class Encoder { failed_path, generic };
enum class Stage { bdd, cnf, mis, embed, estimate, simulate, decode };

const char* stage_name(Stage s);
Stage parse_stage(std::string_view s);
const char* encoder_name(Encoder e);
Encoder parse_encoder(std::string_view s);
const char* mode_name(SimMode m);
SimMode parse_mode(std::string_view s);

struct WirePlanEntry {
  std::string u;
  std::string v;
  int interior = 2;
};

struct SimulationSettings {
  double delta_f = 3.5;  // MHz; the drive ends at +2pi * delta_f
  double dt = 1e-3;      // us
  double stretch = 1.0;
  SimMode mode = SimMode::blockade;
  double u_factor = 50.0;  // full space: U = u_factor * max |Delta|
  std::uint64_t shots = 1000;
  std::uint64_t seed = 1;
};

struct PipelineConfig {
  std::string name = "custom";
  std::uint64_t n = 0;
  std::optional<Widths> widths;
  Encoder encoder = Encoder::failed_path;
  bool strict_units = false;
  std::string graph_source = "compiled";  // or G6, G15, G35
  std::string layout;                     // builtin graph supplying coordinates by atom name
  std::vector<WirePlanEntry> wires;
  std::vector<std::pair<std::string, std::string>> deferred_edges;
  SimulationSettings sim;
  Stage stop_after = Stage::decode;
  std::string output_dir;
};

json config_to_json(const PipelineConfig& cfg, bool with_output_dir = true);
PipelineConfig config_from_json(const json& j);

const std::map<std::string, PipelineConfig>& presets();
PipelineConfig preset(std::string_view name);

// $RYDFACT_OUT when set, otherwise "rydfact-out".
std::string default_output_dir();

// graph.json carries the instance and the formula that labels the atoms so
// later stages can run from the file alone.
struct GraphBundle {
  std::string source;
  ProblemInstance instance;
  CnfFormula formula;
  MisGraph graph;
};

json bundle_to_json(const GraphBundle& b);
GraphBundle bundle_from_json(const json& j);

struct SimulationOutput {
  StateVector state;
  std::vector<MeasurementEvent> events;
  json summary;
};

SimulationOutput simulate_stage(const MisGraph& g, const SimulationSettings& s);
void write_simulation(const std::filesystem::path& dir, const MisGraph& g, const SimulationOutput& out);
Histogram decode_stage(const GraphBundle& b, const std::vector<MeasurementEvent>& events);
void write_histogram(const std::filesystem::path& dir, const Histogram& h);

struct PipelineResult {
  int exit_code = 0;
  std::string status;  // "ok" or "unsatisfiable"
  std::string message;
  std::vector<std::string> artifacts;
  json report;
  std::optional<Histogram> histogram;
};

// Stage errors are rethrown as Error with the stage name prefixed.
PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace rydfact
