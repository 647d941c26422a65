#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rydfact/bdd.hpp"

namespace rydfact {

enum class VarKind { p_bit, q_bit, aux_up, aux_left, aux_right, aux_accept, aux_named, dummy };

// Names: p0, q1, lup(i,j;v), lleft(i,j;v), lright(i,j;v), lacc, l(c;v), s1.
struct VariableId {
  VarKind kind = VarKind::p_bit;
  int a = 0;
  int b = 0;
  std::int64_t v = 0;

  auto operator<=>(const VariableId&) const = default;

  static VariableId p(int i) { return {VarKind::p_bit, i, 0, 0}; }
  static VariableId q(int j) { return {VarKind::q_bit, j, 0, 0}; }
  static VariableId up(int i, int j, std::int64_t v) { return {VarKind::aux_up, i, j, v}; }
  static VariableId left(int i, int j, std::int64_t v) { return {VarKind::aux_left, i, j, v}; }
  static VariableId right(int i, int j, std::int64_t v) { return {VarKind::aux_right, i, j, v}; }
  static VariableId accept() { return {VarKind::aux_accept, 0, 0, 0}; }
  static VariableId named(int column, std::int64_t value) { return {VarKind::aux_named, column, 0, value}; }
  static VariableId dummy(int serial) { return {VarKind::dummy, serial, 0, 0}; }

  std::string name() const;
  static VariableId parse(std::string_view name);
};

struct Literal {
  VariableId var;
  bool negated = false;

  auto operator<=>(const Literal&) const = default;
  Literal operator~() const { return {var, !negated}; }
  std::string name() const { return (negated ? "~" : "") + var.name(); }
  static Literal parse(std::string_view text);
};

inline Literal pos(VariableId v) { return {v, false}; }
inline Literal neg(VariableId v) { return {v, true}; }

// Literals in written order; duplicates are not stored.
using Clause = std::vector<Literal>;

Clause canonical(const Clause& c);
bool is_tautology(const Clause& c);
std::string clause_to_string(const Clause& c);

struct CnfFormula {
  std::vector<Clause> clauses;
  std::vector<Literal> units;  // ledger of propagated unit assignments
  bool three_sat = false;

  // Sorted variables of clauses and ledger.
  std::vector<VariableId> variables() const;
  // Ledger units as unit clauses followed by the clause list.
  std::vector<Clause> effective_clauses() const;
  std::size_t max_clause_size() const;
  void add(Clause c);
  std::string to_string() const;
};

// Clause sets compared after canonicalization, ledger units included.
std::set<Clause> clause_set(const CnfFormula& f);

struct FailedPathOptions {
  // Columns with more live entries than this are rejected.
  int max_entries = 64;
};

CnfFormula cnf_failed_paths(const Bdd& bdd, const FailedPathOptions& opts = {});

std::vector<Clause> encode_unit_bdd(Term t, std::uint64_t value);
std::vector<Clause> encode_unit_bdd(const Bdd& bdd, const UnitBdd& cell);
std::vector<Clause> encode_connection(VariableId child_up, std::optional<VariableId> left_parent,
                                      std::optional<VariableId> right_parent);
std::vector<Clause> encode_connection(const Bdd& bdd, NodeId child);
CnfFormula encode_generic(const Bdd& bdd);

CnfFormula to_three_sat(const CnfFormula& f);
CnfFormula simplify(const CnfFormula& f);

struct SolutionSet {
  std::vector<VariableId> variables;
  std::vector<std::vector<bool>> rows;  // ascending, first variable most significant
};

inline constexpr int kBruteForceCap = 30;
SolutionSet solve_brute_force(const CnfFormula& f);

using Assumption = std::pair<VariableId, bool>;
bool satisfiable(const CnfFormula& f, const std::vector<Assumption>& assumptions = {});
std::optional<std::vector<Assumption>> find_model(const CnfFormula& f,
                                                  const std::vector<Assumption>& assumptions = {});
// All assignments of vars that extend to a model, ascending as in SolutionSet.
SolutionSet project_solutions(const CnfFormula& f, const std::vector<VariableId>& vars);
std::set<std::pair<std::uint64_t, std::uint64_t>> factor_projection(const CnfFormula& f, int Np,
                                                                     int Nq);

std::string export_dimacs(const CnfFormula& f);

}  // namespace rydfact
