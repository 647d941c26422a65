#include "rydfact/cnf.hpp"

namespace rydfact {

std::vector<Clause> encode_unit_bdd(Term t, std::uint64_t value) {
  const auto v = static_cast<std::int64_t>(value);
  const VariableId up = VariableId::up(t.i, t.j, v);
  const VariableId left = VariableId::left(t.i, t.j, v);
  const VariableId right = VariableId::right(t.i, t.j, v);
  const VariableId p = VariableId::p(t.i);
  const VariableId q = VariableId::q(t.j);
  return {
      {pos(up), neg(left)},
      {neg(p), neg(q), neg(left)},
      {pos(p), neg(up), pos(left)},
      {pos(q), neg(up), pos(left)},
      {pos(right), neg(up), pos(left)},
      {neg(right), pos(up)},
      {neg(right), neg(left)},
  };
}

std::vector<Clause> encode_unit_bdd(const Bdd& bdd, const UnitBdd& cell) {
  const BddNode& top = bdd.nodes[cell.top];
  return encode_unit_bdd(top.term, top.value);
}

std::vector<Clause> encode_connection(VariableId child_up, std::optional<VariableId> left_parent,
                                      std::optional<VariableId> right_parent) {
  // l_up = l_left(parent) + l_right(parent'); an absent parent is constant false
  Clause first{neg(child_up)};
  if (left_parent) first.push_back(pos(*left_parent));
  if (right_parent) first.push_back(pos(*right_parent));
  std::vector<Clause> out{first};
  if (left_parent) out.push_back({pos(child_up), neg(*left_parent)});
  if (right_parent) out.push_back({pos(child_up), neg(*right_parent)});
  return out;
}

namespace {

VariableId up_var(const Bdd& bdd, NodeId id) {
  const BddNode& n = bdd.nodes[id];
  if (n.position == bdd.position_count()) return VariableId::accept();
  return VariableId::up(n.term.i, n.term.j, static_cast<std::int64_t>(n.value));
}

}  // namespace

std::vector<Clause> encode_connection(const Bdd& bdd, NodeId child) {
  const BddNode& n = bdd.nodes[child];
  if (n.position == 0) throw Error(ErrorKind::invalid_argument, "the root has no parents");
  const int pp = n.position - 1;
  const Term t = bdd.terms[pp];
  const std::uint64_t step = std::uint64_t{1} << t.weight();
  std::optional<VariableId> left, right;
  const NodeId lp = bdd.find(pp, n.value);
  if (lp != kNoNode && bdd.live(lp) && bdd.cell(lp))
    left = VariableId::left(t.i, t.j, static_cast<std::int64_t>(n.value));
  if (n.value >= step) {
    const NodeId rp = bdd.find(pp, n.value - step);
    if (rp != kNoNode && bdd.live(rp) && bdd.cell(rp))
      right = VariableId::right(t.i, t.j, static_cast<std::int64_t>(n.value - step));
  }
  return encode_connection(up_var(bdd, child), left, right);
}

CnfFormula encode_generic(const Bdd& bdd) {
  if (!bdd.pruned) throw Error(ErrorKind::invalid_argument, "encode_generic needs a pruned diagram");
  CnfFormula f;
  f.clauses.push_back({pos(up_var(bdd, bdd.root))});
  const int L = bdd.position_count();
  for (int pos_ = 0; pos_ <= L; ++pos_) {
    for (NodeId id : bdd.layers[pos_]) {
      if (!bdd.live(id)) continue;
      if (pos_ > 0)
        for (auto& c : encode_connection(bdd, id)) f.clauses.push_back(std::move(c));
      if (const UnitBdd* cell = bdd.cell(id))
        for (auto& c : encode_unit_bdd(bdd, *cell)) f.clauses.push_back(std::move(c));
    }
  }
  if (bdd.accepting) f.clauses.push_back({pos(VariableId::accept())});
  else f.clauses.push_back({});
  f.three_sat = true;
  return f;
}

}  // namespace rydfact
