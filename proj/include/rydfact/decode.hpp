#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rydfact/sim.hpp"

namespace rydfact {

enum class Classification { solution, unsat, undecidable, discarded_wire };
const char* classification_name(Classification c);

// Keep iff every wire path is independent, its interior is maximal given the
// endpoints, and the two endpoints are not both excited.
bool compile_wires(const MisGraph& g, const std::string& bits);
std::string strip_wires(const MisGraph& g, const std::string& bits);

// Discard iff both ends of some deferred edge are excited.
bool post_select_edges(const MisGraph& g, const std::string& bits, const std::vector<Edge>& deferred);

struct DecodedEvent {
  Assignment assignment;
  Classification classification = Classification::undecidable;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> factor_pair;
};

// bits may cover every atom or only the non-wire atoms.
DecodedEvent decode_event(const MisGraph& g, const CnfFormula& f, const ProblemInstance& inst,
                          const std::string& bits);

struct Bucket {
  std::string label;  // "(p,q)", "unsat(p,q)", "unsat" or "undecidable"
  Classification cls = Classification::undecidable;
  std::uint64_t count = 0;
  double probability = 0;
};

struct Histogram {
  std::vector<Bucket> buckets;
  std::uint64_t total_events = 0;
  std::uint64_t usable_events = 0;
  std::uint64_t discarded_wire = 0;
  std::uint64_t discarded_edges = 0;

  double probability(const std::string& label) const;
  double mass(Classification c) const;
};

Histogram decode_events(const MisGraph& g, const CnfFormula& f, const ProblemInstance& inst,
                        const std::vector<MeasurementEvent>& events);

using EventFilter = std::function<std::vector<MeasurementEvent>(std::vector<MeasurementEvent>)>;

// Stand-in for hardware readout mitigation; returns the events unchanged.
std::vector<MeasurementEvent> passthrough_mitigation(std::vector<MeasurementEvent> events);

// Mitigation, wire compilation, deferred-edge post-selection, then decoding.
Histogram process_events(const MisGraph& g, const CnfFormula& f, const ProblemInstance& inst,
                         const std::vector<MeasurementEvent>& raw, const EventFilter& mitigation = passthrough_mitigation);

std::string histogram_csv(const Histogram& h);
std::string histogram_svg(const Histogram& h);
void export_histogram(const Histogram& h, const std::filesystem::path& csv_path,
                      const std::optional<std::filesystem::path>& svg_path = std::nullopt);

std::string events_csv(const std::vector<MeasurementEvent>& events);
std::vector<MeasurementEvent> parse_events_csv(const std::string& text);

}  // namespace rydfact
