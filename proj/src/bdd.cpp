#include "rydfact/bdd.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace rydfact {

int Bdd::column_end(int weight) const {
  return weight + 1 < column_count() ? column_start[weight + 1] : position_count();
}

NodeId Bdd::find(int position, std::uint64_t value) const {
  const auto& layer = layers[position];
  auto it = std::lower_bound(layer.begin(), layer.end(), value,
                             [&](NodeId id, std::uint64_t v) { return nodes[id].value < v; });
  if (it == layer.end() || nodes[*it].value != value) return kNoNode;
  return *it;
}

const UnitBdd* Bdd::cell(NodeId top) const {
  if (top >= cell_of.size() || cell_of[top] < 0) return nullptr;
  return &cells[cell_of[top]];
}

Bdd build_bdd(const ProblemInstance& inst) {
  Bdd bdd;
  bdd.instance = inst;
  const int max_weight = inst.Np + inst.Nq - 2;
  for (int w = 0; w <= max_weight; ++w) {
    bdd.column_start.push_back(static_cast<int>(bdd.terms.size()));
    for (int i = 0; i < inst.Np; ++i) {
      const int j = w - i;
      if (j >= 0 && j < inst.Nq) bdd.terms.push_back({i, j});
    }
  }
  const int L = bdd.position_count();
  bdd.columns.resize(bdd.column_count());
  bdd.layers.resize(L + 1);

  auto add_node = [&](int pos, std::uint64_t value) {
    BddNode node;
    node.position = pos;
    node.value = value;
    if (pos < L) {
      node.term = bdd.terms[pos];
      node.column = node.term.weight();
    } else {
      node.column = max_weight + 1;
    }
    bdd.nodes.push_back(node);
    bdd.cell_of.push_back(-1);
    return static_cast<NodeId>(bdd.nodes.size() - 1);
  };

  bdd.root = add_node(0, 0);
  bdd.layers[0].push_back(bdd.root);
  for (int pos = 0; pos < L; ++pos) {
    std::map<std::uint64_t, NodeId> next;
    const Term t = bdd.terms[pos];
    const std::uint64_t step = std::uint64_t{1} << t.weight();
    for (NodeId top : bdd.layers[pos]) {
      const std::uint64_t v = bdd.nodes[top].value;
      if (v > inst.n) continue;
      UnitBdd cell{top, kNoNode, kNoNode};
      for (int b = 0; b < 2; ++b) {
        const std::uint64_t cv = v + (b ? step : 0);
        auto [it, inserted] = next.try_emplace(cv, kNoNode);
        if (inserted) it->second = add_node(pos + 1, cv);
        (b ? cell.right : cell.left) = it->second;
      }
      bdd.cell_of[top] = static_cast<std::int64_t>(bdd.cells.size());
      bdd.columns[t.weight()].push_back(bdd.cells.size());
      bdd.cells.push_back(cell);
    }
    for (auto& [v, id] : next) bdd.layers[pos + 1].push_back(id);
  }
  return bdd;
}

Bdd prune(Bdd bdd) {
  const auto& inst = bdd.instance;
  const int L = bdd.position_count();
  for (int pos = L; pos >= 0; --pos) {
    const bool column_end = pos == L || (pos > 0 && bdd.terms[pos].weight() != bdd.terms[pos - 1].weight());
    for (NodeId id : bdd.layers[pos]) {
      auto& node = bdd.nodes[id];
      bool alive = node.value <= inst.n;
      if (alive && column_end && pos > 0) {
        const int w = bdd.terms[pos - 1].weight();
        const std::uint64_t mask = w + 1 >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (w + 1)) - 1;
        alive = (node.value & mask) == (inst.n & mask);
      }
      if (alive && pos == L) alive = node.value == inst.n;
      if (alive && pos < L) {
        const UnitBdd* c = bdd.cell(id);
        alive = c && (bdd.live(c->left) || bdd.live(c->right));
      }
      node.status = !alive ? NodeStatus::dead : (pos == L ? NodeStatus::accepting : NodeStatus::open);
    }
  }
  bdd.pruned = true;
  bdd.accepting.reset();
  NodeId acc = bdd.find(L, inst.n);
  if (acc != kNoNode && bdd.live(acc)) bdd.accepting = acc;
  if (!bdd.live(bdd.root))
    throw Error(ErrorKind::fully_dead_diagram,
                "n=" + std::to_string(inst.n) + " has no factor pair within widths (" +
                    std::to_string(inst.Np) + "," + std::to_string(inst.Nq) + ")");
  return bdd;
}

std::vector<ColumnPath> column_paths_from(const Bdd& bdd, NodeId entry) {
  std::vector<ColumnPath> out;
  const int end = bdd.column_end(bdd.nodes[entry].column);
  ColumnPath path;
  path.entry = bdd.nodes[entry].value;
  auto rec = [&](auto&& self, NodeId id) -> void {
    const UnitBdd* c = bdd.cell(id);
    const Term t = bdd.nodes[id].term;
    for (int b = 0; b < 2; ++b) {
      const NodeId child = b ? c->right : c->left;
      path.steps.push_back({t, b == 1});
      const BddNode& cn = bdd.nodes[child];
      if (!bdd.live(child) || cn.position == end) {
        path.end_value = cn.value;
        path.failed = !bdd.live(child);
        out.push_back(path);
      } else {
        self(self, child);
      }
      path.steps.pop_back();
    }
  };
  rec(rec, entry);
  return out;
}

std::vector<NodeId> column_entries(const Bdd& bdd, int weight) {
  std::vector<NodeId> out;
  for (NodeId id : bdd.layers[bdd.column_start[weight]])
    if (bdd.live(id)) out.push_back(id);
  return out;
}

std::vector<FailedPath> failed_paths(const Bdd& bdd) {
  if (!bdd.pruned) throw Error(ErrorKind::invalid_argument, "failed_paths needs a pruned diagram");
  std::vector<FailedPath> out;
  for (int w = 0; w < bdd.column_count(); ++w)
    for (NodeId e : column_entries(bdd, w))
      for (auto& p : column_paths_from(bdd, e))
        if (p.failed) out.push_back({w, p.entry, p.steps});
  return out;
}

std::pair<long long, long long> node_bounds(int Np) {
  if (Np < 2) throw Error(ErrorKind::invalid_argument, "node_bounds needs Np >= 2");
  const long long h = Np;
  return {2 * h * h * h - 2 * h * h - 2 * h + 5, 2 * h * h * h - 4 * h + 5};
}

std::size_t unit_count(const Bdd& bdd, bool include_overflow) {
  std::size_t count = 0;
  for (const auto& c : bdd.cells) {
    const auto& top = bdd.nodes[c.top];
    if (bdd.live(c.top) && (include_overflow || top.column < bdd.instance.N)) ++count;
  }
  return count;
}

std::size_t live_node_count(const Bdd& bdd) {
  return std::count_if(bdd.nodes.begin(), bdd.nodes.end(),
                       [](const BddNode& n) { return n.status != NodeStatus::dead; });
}

}  // namespace rydfact
