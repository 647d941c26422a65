#include "rydfact/serialize.hpp"

#include <fstream>
#include <sstream>

namespace rydfact {

json to_json(const ProblemInstance& inst) {
  return {{"n", inst.n}, {"N", inst.N}, {"n_bits", inst.n_bits}, {"widths", {inst.Np, inst.Nq}}};
}

namespace {

const char* status_name(NodeStatus s) {
  switch (s) {
    case NodeStatus::open: return "open";
    case NodeStatus::accepting: return "accepting";
    case NodeStatus::dead: return "dead";
  }
  return "?";
}

json literal_list(const std::vector<Literal>& lits) {
  json a = json::array();
  for (const auto& l : lits) a.push_back(l.name());
  return a;
}

}  // namespace

json to_json(const Bdd& bdd) {
  json j;
  j["instance"] = to_json(bdd.instance);
  json terms = json::array();
  for (const auto& t : bdd.terms) terms.push_back({t.i, t.j});
  j["terms"] = terms;
  j["pruned"] = bdd.pruned;
  j["root"] = bdd.root;
  j["accepting"] = bdd.accepting ? json(*bdd.accepting) : json(nullptr);
  j["units"] = {{"bit_columns", unit_count(bdd, false)}, {"all_columns", unit_count(bdd, true)}};
  json nodes = json::array();
  for (std::size_t k = 0; k < bdd.nodes.size(); ++k) {
    const auto& n = bdd.nodes[k];
    nodes.push_back({{"id", k},
                     {"position", n.position},
                     {"column", n.column},
                     {"term", n.term.i < 0 ? json(nullptr) : json::array({n.term.i, n.term.j})},
                     {"value", n.value},
                     {"status", status_name(n.status)}});
  }
  j["nodes"] = nodes;
  json edges = json::array();
  for (const auto& c : bdd.cells) {
    edges.push_back({{"from", c.top}, {"to", c.left}, {"branch", 0}});
    edges.push_back({{"from", c.top}, {"to", c.right}, {"branch", 1}});
  }
  j["edges"] = edges;
  return j;
}

json to_json(const CnfFormula& f) {
  json vars = json::array();
  for (const auto& v : f.variables()) vars.push_back(v.name());
  json clauses = json::array();
  for (const auto& c : f.clauses) clauses.push_back(literal_list(c));
  return {{"variables", vars}, {"units", literal_list(f.units)}, {"clauses", clauses}, {"three_sat", f.three_sat}};
}

CnfFormula formula_from_json(const json& j) {
  try {
    CnfFormula f;
    for (const auto& u : j.at("units")) f.units.push_back(Literal::parse(u.get<std::string>()));
    for (const auto& c : j.at("clauses")) {
      Clause cl;
      for (const auto& l : c) cl.push_back(Literal::parse(l.get<std::string>()));
      f.add(std::move(cl));
    }
    f.three_sat = j.value("three_sat", f.max_clause_size() <= 3);
    return f;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("formula json: ") + e.what());
  }
}

json to_json(const MisGraph& g) {
  json atoms = json::array();
  for (int k = 0; k < g.size(); ++k) {
    const auto& v = g.vertices[k];
    json a = {{"name", v.name()}};
    a["clause"] = v.wire ? json(nullptr) : json(v.clause);
    if (!g.coordinates.empty()) {
      json p = json::array();
      for (int d = 0; d < std::max(g.dimension, 1); ++d) p.push_back(g.coordinates[k][d]);
      a["position"] = p;
    }
    atoms.push_back(a);
  }
  json wires = json::array();
  for (const auto& w : g.wires) wires.push_back({{"u", w.u}, {"v", w.v}, {"interior", w.interior}});
  json edges = json::array(), deferred = json::array();
  for (auto [u, v] : g.edges) edges.push_back({u, v});
  for (auto [u, v] : g.deferred_edges) deferred.push_back({u, v});
  return {{"atoms", atoms},         {"edges", edges},           {"deferred_edges", deferred},
          {"wires", wires},         {"clause_count", g.clause_count}, {"dimension", g.dimension},
          {"units", literal_list(g.units)}};
}

MisGraph graph_from_json(const json& j) {
  try {
    MisGraph g;
    bool has_pos = false;
    for (const auto& a : j.at("atoms")) {
      VertexLabel v = VertexLabel::parse(a.at("name").get<std::string>());
      if (!v.wire) v.clause = a.at("clause").get<int>();
      g.vertices.push_back(v);
      has_pos = has_pos || a.contains("position");
    }
    g.dimension = j.value("dimension", 0);
    if (has_pos) {
      for (const auto& a : j.at("atoms")) {
        Point p{0, 0, 0};
        const auto& pj = a.at("position");
        for (std::size_t d = 0; d < pj.size() && d < 3; ++d) p[d] = pj[d].get<double>();
        g.coordinates.push_back(p);
      }
    }
    for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    for (const auto& e : j.value("deferred_edges", json::array()))
      g.deferred_edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    for (const auto& w : j.value("wires", json::array()))
      g.wires.push_back({w.at("u").get<int>(), w.at("v").get<int>(), w.at("interior").get<std::vector<int>>()});
    g.clause_count = j.value("clause_count", 0);
    for (const auto& u : j.value("units", json::array())) g.units.push_back(Literal::parse(u.get<std::string>()));
    for (auto [u, v] : g.edges)
      if (u < 0 || v >= g.size()) throw Error(ErrorKind::parse_error, "edge index out of range");
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("graph json: ") + e.what());
  }
}

json to_json(const ResourceEstimate& e) {
  return {{"n_bits", e.n_bits}, {"convention", e.convention}, {"N0", e.N0},       {"Bn_low", e.Bn_low},
          {"Bn_high", e.Bn_high}, {"Nc", e.Nc},               {"Natom", e.Natom}, {"steps", e.steps},
          {"memory", e.memory}};
}

json to_json(const AuditReport& r) {
  json items = json::array();
  for (const auto& it : r.items)
    items.push_back({{"name", it.name}, {"built", it.built}, {"expected", it.expected}, {"drift", it.drift}});
  json j = {{"convention", r.convention},
            {"tolerance", r.tolerance},
            {"units_bit_columns", r.units_bits},
            {"units_all_columns", r.units_all},
            {"nodes", r.nodes},
            {"clauses", r.clauses}};
  if (r.band_applicable) {
    j["node_band"] = {r.band_low, r.band_high};
    j["nodes_in_band"] = r.nodes_in_band;
  }
  j["items"] = items;
  return j;
}

json to_json(const LayoutReport& r, const MisGraph& g) {
  auto pairs = [&](const std::vector<Edge>& es) {
    json a = json::array();
    for (auto [u, v] : es) a.push_back({g.vertices[u].name(), g.vertices[v].name()});
    return a;
  };
  return {{"feasible", r.feasible},
          {"max_edge_distance", r.max_edge},
          {"min_non_edge_distance", r.min_non_edge},
          {"radius_window", {r.r_low, r.r_high}},
          {"violations", pairs(r.violations)},
          {"unrealized_deferred_edges", pairs(r.unrealized_deferred)}};
}

json to_json(const Histogram& h) {
  json buckets = json::array();
  for (const auto& b : h.buckets)
    buckets.push_back({{"label", b.label},
                       {"class", classification_name(b.cls)},
                       {"count", b.count},
                       {"probability", b.probability}});
  return {{"total_events", h.total_events},
          {"usable_events", h.usable_events},
          {"discarded_wire", h.discarded_wire},
          {"discarded_edges", h.discarded_edges},
          {"usable_fraction", h.total_events ? static_cast<double>(h.usable_events) / h.total_events : 0.0},
          {"buckets", buckets}};
}

json probabilities_json(const StateVector& state, const MisGraph& g, double floor) {
  json atoms = json::array();
  for (const auto& v : g.vertices) atoms.push_back(v.name());
  json entries = json::array();
  const auto p = state.probabilities();
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] >= floor) entries.push_back({state.basis->bitstring(k), p[k]});
  return {{"atoms", atoms}, {"dimension", state.basis->size()}, {"norm", state.norm()}, {"floor", floor},
          {"probabilities", entries}};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_error, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io_error, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorKind::io_error, "write failed for " + path.string());
}

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse_error, path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace rydfact
