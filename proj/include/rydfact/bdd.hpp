#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rydfact/problem.hpp"

namespace rydfact {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0xffffffffu;

enum class NodeStatus { open, accepting, dead };

// Product term p_i q_j with weight i + j.
struct Term {
  int i = -1;
  int j = -1;
  int weight() const { return i + j; }
  bool operator==(const Term&) const = default;
};

struct BddNode {
  int position = 0;  // index into the term traversal; == terms.size() for terminal nodes
  int column = 0;    // weight of the term read at this node (terminal: last weight + 1)
  Term term;         // term read at this node, {-1,-1} for terminals
  std::uint64_t value = 0;
  NodeStatus status = NodeStatus::open;
};

// One decision on p_i q_j: left keeps the running value, right adds 2^(i+j).
struct UnitBdd {
  NodeId top = kNoNode;
  NodeId left = kNoNode;
  NodeId right = kNoNode;
};

struct Bdd {
  ProblemInstance instance;
  std::vector<Term> terms;
  std::vector<BddNode> nodes;
  std::vector<std::vector<NodeId>> layers;  // per position, ascending value
  std::vector<UnitBdd> cells;
  std::vector<std::vector<std::size_t>> columns;  // cell indices per weight
  std::vector<int> column_start;                  // first position of each weight
  std::vector<std::int64_t> cell_of;              // node -> cell index, -1 if unexpanded
  NodeId root = 0;
  std::optional<NodeId> accepting;
  bool pruned = false;

  int position_count() const { return static_cast<int>(terms.size()); }
  int column_count() const { return static_cast<int>(column_start.size()); }
  int column_end(int weight) const;
  NodeId find(int position, std::uint64_t value) const;
  bool live(NodeId id) const { return nodes[id].status != NodeStatus::dead; }
  const UnitBdd* cell(NodeId top) const;
};

// Materializes every running value reachable from the root. Nodes whose value
// already exceeds n are kept as sinks and not expanded further.
Bdd build_bdd(const ProblemInstance& inst);

// Marks column-end nodes that disagree with n mod 2^(w+1), then propagates
// deadness backward. Throws FullyDeadDiagram if the root dies.
Bdd prune(Bdd bdd);

struct TermLiteral {
  Term term;
  bool value = false;
  bool operator==(const TermLiteral&) const = default;
};

struct ColumnPath {
  std::uint64_t entry = 0;
  std::vector<TermLiteral> steps;
  std::uint64_t end_value = 0;
  bool failed = false;
};

// Paths through one column from a live entry node, depth first with the
// 0-branch before the 1-branch. A path stops at the first dead node.
std::vector<ColumnPath> column_paths_from(const Bdd& bdd, NodeId entry);

// Live nodes at the start of a column, ascending value.
std::vector<NodeId> column_entries(const Bdd& bdd, int weight);

struct FailedPath {
  int column = 0;
  std::uint64_t entry = 0;
  std::vector<TermLiteral> conjunction;
};

std::vector<FailedPath> failed_paths(const Bdd& bdd);

// Closed-form node-count band for Np = Nq.
std::pair<long long, long long> node_bounds(int Np);

// Live cells; the bit columns only (weight < N) unless overflow is requested.
std::size_t unit_count(const Bdd& bdd, bool include_overflow = false);
std::size_t live_node_count(const Bdd& bdd);

}  // namespace rydfact
