#pragma once

#include <string>

#include "rydfact/cnf.hpp"

namespace rydfact {

// Scaling estimates with the convention Np = Nq = n_bits / 2 (real valued).
struct ResourceEstimate {
  int n_bits = 0;
  double half = 0;  // Np under the convention
  double N0 = 0;
  double Bn_low = 0;
  double Bn_high = 0;
  double Nc = 0;
  double Natom = 0;
  double steps = 0;
  double memory = 0;
  std::string convention;
};

ResourceEstimate estimate(int n_bits);
double atoms_for_clauses(double Nc);
// Bounds evaluated at real h; agrees with node_bounds for integer h.
std::pair<double, double> node_bounds_real(double h);

struct AuditItem {
  std::string name;
  double built = 0;
  double expected = 0;
  bool drift = false;  // |built/expected - 1| > tolerance
};

struct AuditReport {
  std::string convention;
  double tolerance = 0.2;
  std::size_t units_bits = 0;    // live cells in bit columns
  std::size_t units_all = 0;     // live cells including overflow columns
  std::size_t nodes = 0;
  bool nodes_in_band = false;
  bool band_applicable = false;
  long long band_low = 0;
  long long band_high = 0;
  std::size_t clauses = 0;
  std::vector<AuditItem> items;
};

AuditReport audit_against_build(const ProblemInstance& inst, const Bdd& built, const CnfFormula& f);

}  // namespace rydfact
