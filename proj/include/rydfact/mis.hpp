#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rydfact/cnf.hpp"

namespace rydfact {

// Literal occurrence "p1^(2)" / "~p1^(1)" or wire atom "w^(3)".
struct VertexLabel {
  bool wire = false;
  VariableId var;
  bool negated = false;
  int duplicate = 1;  // occurrence index per (var, polarity); k of w^(k) for wires
  int clause = -1;    // owning gadget, -1 for wire atoms

  std::string name() const;
  static VertexLabel parse(std::string_view text);
  Literal literal() const { return {var, negated}; }
};

struct WireSpec {
  int u = 0;
  int v = 0;
  std::vector<int> interior;  // ordered from u to v
  int m() const { return static_cast<int>(interior.size()) / 2; }
};

using Point = std::array<double, 3>;
using Edge = std::pair<int, int>;

struct MisGraph {
  std::vector<VertexLabel> vertices;
  std::vector<Edge> edges;           // physical edges, u < v, sorted
  std::vector<WireSpec> wires;
  std::vector<Edge> deferred_edges;  // conflict edges enforced by post-selection only
  std::vector<Point> coordinates;    // empty, or one point per vertex
  int dimension = 0;
  int clause_count = 0;
  std::vector<Literal> units;        // ledger assignments without a gadget

  int size() const { return static_cast<int>(vertices.size()); }
  bool has_edge(int u, int v) const;
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  int index_of(std::string_view name) const;  // -1 if absent
  std::vector<std::vector<int>> adjacency() const;
  int wire_atom_count() const;
  int wire_offset() const;  // sum of m over wires
};

// One K_|C| gadget per clause, complete bipartite conflict edges per variable.
// strict_units materializes ledger units as K1 gadgets ahead of the clauses.
MisGraph graph_from_cnf(const CnfFormula& f, bool strict_units = false);

// Replaces each listed edge with a path through `interior` new wire atoms.
MisGraph expand_wires(const MisGraph& g, const std::vector<Edge>& edges, const std::vector<int>& interior);

// Moves the listed edges from the physical set to the post-selected set.
MisGraph defer_edges(const MisGraph& g, const std::vector<Edge>& edges);

// Physical edges plus deferred edges.
MisGraph logical_graph(const MisGraph& g);

// Vertices permuted into the given name order.
MisGraph reorder(const MisGraph& g, const std::vector<std::string>& names);

inline constexpr int kMisCap = 40;

struct MisResult {
  int size = 0;
  std::vector<std::vector<int>> sets;  // ascending vertex lists, lexicographic order
};

MisResult solve_mis_exact(const MisGraph& g);

enum class Bit { zero, one, undecidable };

struct Assignment {
  std::map<VariableId, Bit> values;
  Bit get(const VariableId& v) const;
  bool decidable() const;
  std::optional<std::uint64_t> number(VarKind kind, int width) const;
};

Assignment decode_set(const MisGraph& g, const std::vector<bool>& chosen);
Assignment decode_set(const MisGraph& g, const std::vector<int>& chosen);

struct LayoutReport {
  bool feasible = false;
  double max_edge = 0;  // longest physical edge
  double min_non_edge = std::numeric_limits<double>::infinity();
  double r_low = 0;
  double r_high = 0;
  std::vector<Edge> violations;             // non-edges no farther than the longest edge
  std::vector<Edge> unrealized_deferred;    // deferred edges outside every feasible radius
};

LayoutReport validate_layout(const MisGraph& g, const std::vector<Point>& coords, double r_min = 0.0,
                             double r_max = std::numeric_limits<double>::infinity());

}  // namespace rydfact
