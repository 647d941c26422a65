#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "rydfact/decode.hpp"
#include "rydfact/estimate.hpp"

namespace rydfact {

using json = nlohmann::ordered_json;

json to_json(const ProblemInstance& inst);
json to_json(const Bdd& bdd);
json to_json(const CnfFormula& f);
json to_json(const MisGraph& g);
json to_json(const ResourceEstimate& e);
json to_json(const AuditReport& r);
json to_json(const LayoutReport& r, const MisGraph& g);
json to_json(const Histogram& h);
json probabilities_json(const StateVector& state, const MisGraph& g, double floor = 1e-12);

CnfFormula formula_from_json(const json& j);
MisGraph graph_from_json(const json& j);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
json read_json(const std::filesystem::path& path);
// Two-space indent with a trailing newline.
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace rydfact
