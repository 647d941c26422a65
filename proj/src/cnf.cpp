#include "rydfact/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace rydfact {

std::string VariableId::name() const {
  auto triple = [&](const char* tag) {
    return std::string(tag) + "(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(v) + ")";
  };
  switch (kind) {
    case VarKind::p_bit: return "p" + std::to_string(a);
    case VarKind::q_bit: return "q" + std::to_string(a);
    case VarKind::aux_up: return triple("lup");
    case VarKind::aux_left: return triple("lleft");
    case VarKind::aux_right: return triple("lright");
    case VarKind::aux_accept: return "lacc";
    case VarKind::aux_named: return "l(" + std::to_string(a) + ";" + std::to_string(v) + ")";
    case VarKind::dummy: return "s" + std::to_string(a);
  }
  return "?";
}

namespace {

[[noreturn]] void bad_name(std::string_view s) {
  throw Error(ErrorKind::parse_error, "unrecognized variable name '" + std::string(s) + "'");
}

std::int64_t to_int(std::string_view s, std::string_view whole) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) bad_name(whole);
  return out;
}

}  // namespace

VariableId VariableId::parse(std::string_view s) {
  if (s == "lacc") return accept();
  for (auto [tag, kind] : {std::pair{"lup(", VarKind::aux_up}, std::pair{"lleft(", VarKind::aux_left},
                           std::pair{"lright(", VarKind::aux_right}}) {
    std::string_view t(tag);
    if (s.substr(0, t.size()) == t && s.back() == ')') {
      auto body = s.substr(t.size(), s.size() - t.size() - 1);
      auto comma = body.find(','), semi = body.find(';');
      if (comma == std::string_view::npos || semi == std::string_view::npos || semi < comma) bad_name(s);
      return {kind, static_cast<int>(to_int(body.substr(0, comma), s)),
              static_cast<int>(to_int(body.substr(comma + 1, semi - comma - 1), s)),
              to_int(body.substr(semi + 1), s)};
    }
  }
  if (s.substr(0, 2) == "l(" && s.back() == ')') {
    auto body = s.substr(2, s.size() - 3);
    auto semi = body.find(';');
    if (semi == std::string_view::npos) bad_name(s);
    return named(static_cast<int>(to_int(body.substr(0, semi), s)), to_int(body.substr(semi + 1), s));
  }
  if (s.size() >= 2) {
    const int idx = static_cast<int>(to_int(s.substr(1), s));
    if (s[0] == 'p') return p(idx);
    if (s[0] == 'q') return q(idx);
    if (s[0] == 's') return dummy(idx);
  }
  bad_name(s);
}

Literal Literal::parse(std::string_view text) {
  if (!text.empty() && (text[0] == '~' || text[0] == '!' || text[0] == '-'))
    return {VariableId::parse(text.substr(1)), true};
  return {VariableId::parse(text), false};
}

Clause canonical(const Clause& c) {
  Clause out = c;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_tautology(const Clause& c) {
  for (const auto& l : c)
    if (std::find(c.begin(), c.end(), ~l) != c.end()) return true;
  return false;
}

std::string clause_to_string(const Clause& c) {
  std::string s = "(";
  for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "+" : "") + c[k].name();
  return s + ")";
}

std::vector<VariableId> CnfFormula::variables() const {
  std::vector<VariableId> vars;
  for (const auto& c : clauses)
    for (const auto& l : c) vars.push_back(l.var);
  for (const auto& l : units) vars.push_back(l.var);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

std::vector<Clause> CnfFormula::effective_clauses() const {
  std::vector<Clause> out;
  for (const auto& u : units) out.push_back({u});
  out.insert(out.end(), clauses.begin(), clauses.end());
  return out;
}

std::size_t CnfFormula::max_clause_size() const {
  std::size_t m = units.empty() ? 0 : 1;
  for (const auto& c : clauses) m = std::max(m, c.size());
  return m;
}

void CnfFormula::add(Clause c) {
  Clause out;
  for (const auto& l : c)
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  clauses.push_back(std::move(out));
}

std::string CnfFormula::to_string() const {
  std::string s;
  for (const auto& u : units) s += clause_to_string({u});
  for (const auto& c : clauses) s += clause_to_string(c);
  return s;
}

std::set<Clause> clause_set(const CnfFormula& f) {
  std::set<Clause> out;
  for (const auto& c : f.effective_clauses()) out.insert(canonical(c));
  return out;
}

CnfFormula to_three_sat(const CnfFormula& f) {
  int serial = 0;
  for (const auto& v : f.variables())
    if (v.kind == VarKind::dummy) serial = std::max(serial, v.a);
  CnfFormula out;
  out.units = f.units;
  for (const auto& c : f.clauses) {
    if (c.size() <= 3) {
      out.clauses.push_back(c);
      continue;
    }
    // (l1+l2+s1)(~s1+l3+s2)...(~s_{k-3}+l_{k-1}+l_k)
    const std::size_t k = c.size();
    VariableId s = VariableId::dummy(++serial);
    out.clauses.push_back({c[0], c[1], pos(s)});
    for (std::size_t m = 2; m + 2 < k; ++m) {
      VariableId next = VariableId::dummy(++serial);
      out.clauses.push_back({neg(s), c[m], pos(next)});
      s = next;
    }
    out.clauses.push_back({c[k - 2], c[k - 1], neg(s)});
  }
  out.three_sat = true;
  return out;
}

namespace {

// Literal order used when looking for a resolution partner.
bool merge_order(const Literal& x, const Literal& y) {
  if (x.var != y.var) return x.var < y.var;
  return x.negated && !y.negated;
}

void dedupe(std::vector<Clause>& cls) {
  std::set<Clause> seen;
  std::vector<Clause> out;
  for (auto& c : cls)
    if (seen.insert(canonical(c)).second) out.push_back(std::move(c));
  cls = std::move(out);
}

}  // namespace

CnfFormula simplify(const CnfFormula& f) {
  std::vector<Clause> cls;
  for (const auto& c : f.clauses) {
    Clause d;
    for (const auto& l : c)
      if (std::find(d.begin(), d.end(), l) == d.end()) d.push_back(l);
    if (!is_tautology(d)) cls.push_back(std::move(d));
  }
  dedupe(cls);
  std::vector<Literal> ledger = f.units;
  std::map<VariableId, bool> value;
  for (const auto& u : ledger) value.emplace(u.var, !u.negated);

  auto finish = [&](std::vector<Clause> c) {
    CnfFormula out;
    out.clauses = std::move(c);
    out.units = ledger;
    out.three_sat = out.max_clause_size() <= 3;
    return out;
  };

  while (true) {
    const std::vector<Clause> before = cls;
    // unit propagation, starting from whatever the ledger already holds
    while (true) {
      std::vector<Clause> out;
      bool empty = false;
      for (const auto& c : cls) {
        bool sat = false;
        Clause r;
        for (const auto& l : c) {
          auto it = value.find(l.var);
          if (it == value.end()) r.push_back(l);
          else if (it->second != l.negated) sat = true;
        }
        if (sat) continue;
        if (r.empty()) empty = true;
        out.push_back(std::move(r));
      }
      dedupe(out);
      cls = std::move(out);
      if (empty) return finish({Clause{}});
      bool fresh = false;
      for (const auto& c : cls) {
        if (c.size() != 1 || value.count(c[0].var)) continue;
        value.emplace(c[0].var, !c[0].negated);
        ledger.push_back(c[0]);
        fresh = true;
      }
      if (!fresh) break;
    }
    // absorption A(A+B) = A
    {
      std::vector<Clause> keys;
      for (const auto& c : cls) keys.push_back(canonical(c));
      std::vector<Clause> out;
      for (std::size_t k = 0; k < cls.size(); ++k) {
        bool absorbed = false;
        for (std::size_t m = 0; m < cls.size() && !absorbed; ++m)
          absorbed = keys[m].size() < keys[k].size() &&
                     std::includes(keys[k].begin(), keys[k].end(), keys[m].begin(), keys[m].end());
        if (!absorbed) out.push_back(cls[k]);
      }
      cls = std::move(out);
    }
    // ordered merge (A+B)(A+~B) = A
    {
      std::map<Clause, std::size_t> index;
      for (std::size_t k = 0; k < cls.size(); ++k) index.emplace(canonical(cls[k]), k);
      std::vector<bool> used(cls.size(), false);
      std::vector<Clause> out;
      for (std::size_t k = 0; k < cls.size(); ++k) {
        if (used[k]) continue;
        Clause lits = cls[k];
        std::sort(lits.begin(), lits.end(), merge_order);
        bool merged = false;
        for (const auto& l : lits) {
          Clause partner;
          for (const auto& x : cls[k]) partner.push_back(x == l ? ~l : x);
          auto it = index.find(canonical(partner));
          if (it == index.end() || it->second <= k || used[it->second]) continue;
          used[it->second] = true;
          Clause reduced;
          for (const auto& x : cls[k])
            if (!(x == l)) reduced.push_back(x);
          out.push_back(std::move(reduced));
          merged = true;
          break;
        }
        if (!merged) out.push_back(cls[k]);
      }
      dedupe(out);
      cls = std::move(out);
    }
    if (cls == before) break;
  }
  return finish(std::move(cls));
}

SolutionSet solve_brute_force(const CnfFormula& f) {
  SolutionSet out;
  out.variables = f.variables();
  const int k = static_cast<int>(out.variables.size());
  if (k > kBruteForceCap)
    throw Error(ErrorKind::too_large, std::to_string(k) + " variables exceed the brute-force cap of " +
                                          std::to_string(kBruteForceCap));
  std::map<VariableId, int> bit;
  for (int idx = 0; idx < k; ++idx) bit[out.variables[idx]] = k - 1 - idx;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;
  for (const auto& c : f.effective_clauses()) {
    std::uint64_t pm = 0, nm = 0;
    for (const auto& l : c) (l.negated ? nm : pm) |= std::uint64_t{1} << bit[l.var];
    masks.emplace_back(pm, nm);
  }
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t x = 0; x < total; ++x) {
    bool ok = true;
    for (const auto& [pm, nm] : masks)
      if (!((x & pm) | (~x & nm))) {
        ok = false;
        break;
      }
    if (!ok) continue;
    std::vector<bool> row(k);
    for (int idx = 0; idx < k; ++idx) row[idx] = (x >> (k - 1 - idx)) & 1;
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string export_dimacs(const CnfFormula& f) {
  const auto vars = f.variables();
  std::map<VariableId, int> id;
  for (std::size_t k = 0; k < vars.size(); ++k) id[vars[k]] = static_cast<int>(k) + 1;
  const auto cls = f.effective_clauses();
  std::ostringstream os;
  for (const auto& v : vars) os << "c " << id[v] << " " << v.name() << "\n";
  os << "p cnf " << vars.size() << " " << cls.size() << "\n";
  for (const auto& c : cls) {
    for (const auto& l : c) os << (l.negated ? -id[l.var] : id[l.var]) << " ";
    os << "0\n";
  }
  return os.str();
}

}  // namespace rydfact
