#include <algorithm>
#include <map>
#include <memory>

#include "rydfact/cnf.hpp"

namespace rydfact {

namespace {

// Chronological DPLL with two watched literals. Literals are 2*var + sign.
class Dpll {
public:
  explicit Dpll(int nvars) : nvars_(nvars), assign_(nvars, -1), watches_(2 * nvars) {}

  void add_clause(std::vector<int> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t k = 0; k + 1 < lits.size(); ++k)
      if ((lits[k] ^ 1) == lits[k + 1]) return;
    if (lits.empty()) {
      trivially_unsat_ = true;
      return;
    }
    if (lits.size() == 1) {
      units_.push_back(lits[0]);
      return;
    }
    const int id = static_cast<int>(clauses_.size());
    clauses_.push_back(std::move(lits));
    watches_[clauses_[id][0]].push_back(id);
    watches_[clauses_[id][1]].push_back(id);
  }

  // order: branching order over variables; unlisted variables follow by index.
  bool solve(const std::vector<int>& order) {
    reset();
    if (trivially_unsat_) return false;
    for (int u : units_)
      if (!enqueue(u)) return false;
    if (!propagate()) return false;
    std::vector<int> branch = order;
    std::vector<bool> listed(nvars_, false);
    for (int v : order) listed[v] = true;
    for (int v = 0; v < nvars_; ++v)
      if (!listed[v]) branch.push_back(v);

    struct Decision {
      std::size_t trail_size;
      int lit;
      bool flipped;
    };
    std::vector<Decision> stack;
    std::size_t cursor = 0;
    while (true) {
      while (cursor < branch.size() && assign_[branch[cursor]] >= 0) ++cursor;
      if (cursor == branch.size()) return true;
      const int lit = 2 * branch[cursor] + 1;  // try false first
      stack.push_back({trail_.size(), lit, false});
      bool ok = enqueue(lit) && propagate();
      while (!ok) {
        while (!stack.empty() && stack.back().flipped) stack.pop_back();
        if (stack.empty()) return false;
        auto& d = stack.back();
        undo(d.trail_size);
        d.flipped = true;
        d.lit ^= 1;
        ok = enqueue(d.lit) && propagate();
        cursor = 0;
      }
    }
  }

  int value(int var) const { return assign_[var]; }

private:
  int lit_value(int lit) const {
    const int a = assign_[lit >> 1];
    if (a < 0) return -1;
    return (lit & 1) ? 1 - a : a;
  }

  bool enqueue(int lit) {
    const int v = lit_value(lit);
    if (v == 1) return true;
    if (v == 0) return false;
    assign_[lit >> 1] = (lit & 1) ? 0 : 1;
    trail_.push_back(lit);
    return true;
  }

  bool propagate() {
    while (qhead_ < trail_.size()) {
      const int falsified = trail_[qhead_++] ^ 1;
      auto& ws = watches_[falsified];
      for (std::size_t k = 0; k < ws.size();) {
        auto& c = clauses_[ws[k]];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (lit_value(c[0]) == 1) {
          ++k;
          continue;
        }
        bool moved = false;
        for (std::size_t m = 2; m < c.size(); ++m) {
          if (lit_value(c[m]) != 0) {
            std::swap(c[1], c[m]);
            watches_[c[1]].push_back(ws[k]);
            ws[k] = ws.back();
            ws.pop_back();
            moved = true;
            break;
          }
        }
        if (moved) continue;
        if (!enqueue(c[0])) {
          qhead_ = trail_.size();
          return false;
        }
        ++k;
      }
    }
    return true;
  }

  void undo(std::size_t size) {
    while (trail_.size() > size) {
      assign_[trail_.back() >> 1] = -1;
      trail_.pop_back();
    }
    qhead_ = trail_.size();
  }

  void reset() { undo(0); }

  int nvars_;
  std::vector<int> assign_;
  std::vector<std::vector<int>> watches_;
  std::vector<std::vector<int>> clauses_;
  std::vector<int> units_;
  std::vector<int> trail_;
  std::size_t qhead_ = 0;
  bool trivially_unsat_ = false;
};

struct Encoded {
  std::vector<VariableId> vars;
  std::map<VariableId, int> index;
};

Encoded encode(const CnfFormula& f, const std::vector<VariableId>& extra, Dpll*& solver,
               std::vector<std::unique_ptr<Dpll>>& hold) {
  Encoded e;
  e.vars = f.variables();
  for (const auto& v : extra) e.vars.push_back(v);
  std::sort(e.vars.begin(), e.vars.end());
  e.vars.erase(std::unique(e.vars.begin(), e.vars.end()), e.vars.end());
  for (std::size_t k = 0; k < e.vars.size(); ++k) e.index[e.vars[k]] = static_cast<int>(k);
  hold.push_back(std::make_unique<Dpll>(static_cast<int>(e.vars.size())));
  solver = hold.back().get();
  for (const auto& c : f.effective_clauses()) {
    std::vector<int> lits;
    for (const auto& l : c) lits.push_back(2 * e.index[l.var] + (l.negated ? 1 : 0));
    solver->add_clause(std::move(lits));
  }
  return e;
}

}  // namespace

std::optional<std::vector<Assumption>> find_model(const CnfFormula& f,
                                                  const std::vector<Assumption>& assumptions) {
  std::vector<VariableId> extra;
  for (const auto& [v, b] : assumptions) extra.push_back(v);
  Dpll* solver = nullptr;
  std::vector<std::unique_ptr<Dpll>> hold;
  Encoded e = encode(f, extra, solver, hold);
  for (const auto& [v, b] : assumptions) solver->add_clause({2 * e.index[v] + (b ? 0 : 1)});
  if (!solver->solve({})) return std::nullopt;
  std::vector<Assumption> model;
  for (std::size_t k = 0; k < e.vars.size(); ++k) model.emplace_back(e.vars[k], solver->value(k) == 1);
  return model;
}

bool satisfiable(const CnfFormula& f, const std::vector<Assumption>& assumptions) {
  return find_model(f, assumptions).has_value();
}

SolutionSet project_solutions(const CnfFormula& f, const std::vector<VariableId>& vars) {
  Dpll* solver = nullptr;
  std::vector<std::unique_ptr<Dpll>> hold;
  Encoded e = encode(f, vars, solver, hold);
  std::vector<int> order;
  for (const auto& v : vars) order.push_back(e.index[v]);
  SolutionSet out;
  out.variables = vars;
  while (solver->solve(order)) {
    std::vector<bool> row;
    std::vector<int> block;
    for (int v : order) {
      const bool b = solver->value(v) == 1;
      row.push_back(b);
      block.push_back(2 * v + (b ? 1 : 0));
    }
    out.rows.push_back(std::move(row));
    if (block.empty()) break;
    solver->add_clause(std::move(block));
  }
  std::sort(out.rows.begin(), out.rows.end());
  return out;
}

std::set<std::pair<std::uint64_t, std::uint64_t>> factor_projection(const CnfFormula& f, int Np, int Nq) {
  std::vector<VariableId> vars;
  for (int i = 0; i < Np; ++i) vars.push_back(VariableId::p(i));
  for (int j = 0; j < Nq; ++j) vars.push_back(VariableId::q(j));
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& row : project_solutions(f, vars).rows) {
    std::uint64_t p = 0, q = 0;
    for (int i = 0; i < Np; ++i) p |= std::uint64_t{row[i]} << i;
    for (int j = 0; j < Nq; ++j) q |= std::uint64_t{row[Np + j]} << j;
    out.emplace(p, q);
  }
  return out;
}

}  // namespace rydfact
