#include <algorithm>
#include <map>
#include <variant>

#include "rydfact/cnf.hpp"

namespace rydfact {

namespace {

using Path = std::vector<TermLiteral>;

struct Unconditional {};
struct PathGuard {
  std::vector<Path> paths;  // entry is live iff one of these paths was taken
};
using Guard = std::variant<Unconditional, PathGuard, VariableId>;

// Clause over x_ij = p_i q_j literals, expanded to p/q by distribution.
// Each step (t, b) contributes the literal "x_t == !b".
std::vector<Clause> expand_negated(const std::vector<const Path*>& paths, const std::vector<Literal>& extra) {
  Clause fixed = extra;
  std::vector<Term> choices;
  for (const Path* p : paths)
    for (const auto& s : *p) {
      if (s.value) {
        fixed.push_back(neg(VariableId::p(s.term.i)));
        fixed.push_back(neg(VariableId::q(s.term.j)));
      } else {
        choices.push_back(s.term);
      }
    }
  std::vector<Clause> out;
  const std::size_t k = choices.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Clause c = fixed;
    for (std::size_t m = 0; m < k; ++m) {
      const Term t = choices[m];
      const bool take_q = (mask >> (k - 1 - m)) & 1;
      c.push_back(take_q ? pos(VariableId::q(t.j)) : pos(VariableId::p(t.i)));
    }
    Clause d;
    for (const auto& l : c)
      if (std::find(d.begin(), d.end(), l) == d.end()) d.push_back(l);
    if (!is_tautology(d)) out.push_back(std::move(d));
  }
  return out;
}

void append(std::vector<Clause>& dst, std::vector<Clause> src) {
  for (auto& c : src) dst.push_back(std::move(c));
}

}  // namespace

CnfFormula cnf_failed_paths(const Bdd& bdd, const FailedPathOptions& opts) {
  if (!bdd.pruned) throw Error(ErrorKind::invalid_argument, "cnf_failed_paths needs a pruned diagram");
  const int N = bdd.instance.N;
  std::vector<std::pair<std::uint64_t, Guard>> cur{{0, Unconditional{}}};
  std::vector<Clause> main, overflow;

  for (int w = 0; w < bdd.column_count(); ++w) {
    if (static_cast<int>(cur.size()) > opts.max_entries)
      throw Error(ErrorKind::too_many_entry_nodes,
                  "column " + std::to_string(w) + " has " + std::to_string(cur.size()) + " live entries");
    const int start = bdd.column_start[w];
    // successful paths grouped by end value, in discovery order
    std::vector<std::pair<std::uint64_t, std::vector<std::pair<std::size_t, Path>>>> next;
    std::map<std::uint64_t, std::size_t> next_index;
    std::vector<std::vector<Path>> fails(cur.size());
    for (std::size_t e = 0; e < cur.size(); ++e) {
      const NodeId id = bdd.find(start, cur[e].first);
      for (auto& p : column_paths_from(bdd, id)) {
        if (p.failed) {
          fails[e].push_back(std::move(p.steps));
          continue;
        }
        auto [it, fresh] = next_index.try_emplace(p.end_value, next.size());
        if (fresh) next.push_back({p.end_value, {}});
        next[it->second].second.emplace_back(e, std::move(p.steps));
      }
    }

    auto& target = w >= N ? overflow : main;
    for (std::size_t e = 0; e < cur.size(); ++e) {
      const Guard& g = cur[e].second;
      for (const auto& f : fails[e]) {
        if (std::holds_alternative<Unconditional>(g)) {
          append(target, expand_negated({&f}, {}));
        } else if (auto* pg = std::get_if<PathGuard>(&g)) {
          for (const auto& gp : pg->paths) append(target, expand_negated({&gp, &f}, {}));
        } else {
          append(target, expand_negated({&f}, {neg(std::get<VariableId>(g))}));
        }
      }
    }

    std::vector<std::pair<std::uint64_t, Guard>> upcoming;
    if (next.size() == 1) {
      upcoming.push_back({next[0].first, Unconditional{}});
    } else {
      const bool substitute = cur.size() == 1 && next.size() <= 2;
      for (auto& [value, arrivals] : next) {
        if (substitute) {
          PathGuard pg;
          for (auto& [e, p] : arrivals) pg.paths.push_back(p);
          upcoming.push_back({value, std::move(pg)});
          continue;
        }
        // named guard: l is implied by every successful arrival
        const VariableId l = VariableId::named(w + 1, static_cast<std::int64_t>(value));
        for (auto& [e, p] : arrivals) {
          const Guard& g = cur[e].second;
          if (std::holds_alternative<Unconditional>(g)) {
            append(main, expand_negated({&p}, {pos(l)}));
          } else if (auto* vg = std::get_if<VariableId>(&g)) {
            append(main, expand_negated({&p}, {neg(*vg), pos(l)}));
          } else {
            for (const auto& gp : std::get<PathGuard>(g).paths) append(main, expand_negated({&gp, &p}, {pos(l)}));
          }
        }
        upcoming.push_back({value, l});
      }
    }
    cur = std::move(upcoming);
  }

  CnfFormula f;
  f.clauses = std::move(main);
  f = simplify(f);
  // Overflow columns only contribute what the bit columns do not already imply.
  for (const auto& c : overflow) {
    std::vector<Assumption> falsify;
    bool entailed = false;
    for (const auto& l : c) {
      auto it = std::find_if(f.units.begin(), f.units.end(), [&](const Literal& u) { return u.var == l.var; });
      if (it != f.units.end() && it->negated == l.negated) {
        entailed = true;
        break;
      }
      falsify.emplace_back(l.var, l.negated);
    }
    if (entailed || !satisfiable(f, falsify)) continue;
    f.clauses.push_back(c);
    f = simplify(f);
  }
  return f;
}

}  // namespace rydfact
