#include "rydfact/estimate.hpp"

#include <cmath>
#include <tuple>

namespace rydfact {

double atoms_for_clauses(double Nc) { return Nc <= 0 ? 0.0 : 4.88 * std::pow(Nc, 1.8); }

std::pair<double, double> node_bounds_real(double h) {
  return {2 * h * h * h - 2 * h * h - 2 * h + 5, 2 * h * h * h - 4 * h + 5};
}

ResourceEstimate estimate(int n_bits) {
  if (n_bits < 2) throw Error(ErrorKind::invalid_argument, "estimate needs n_bits >= 2");
  ResourceEstimate e;
  e.n_bits = n_bits;
  e.half = n_bits / 2.0;
  e.N0 = e.half * e.half * e.half;
  std::tie(e.Bn_low, e.Bn_high) = node_bounds_real(e.half);
  e.Nc = 10.0 * e.N0;
  e.Natom = atoms_for_clauses(e.Nc);
  e.steps = e.N0;
  e.memory = e.N0;
  e.convention = "Np = Nq = n_bits/2 = " + std::to_string(e.half);
  return e;
}

AuditReport audit_against_build(const ProblemInstance& inst, const Bdd& built, const CnfFormula& f) {
  AuditReport r;
  r.units_bits = unit_count(built, false);
  r.units_all = unit_count(built, true);
  r.nodes = live_node_count(built);
  r.clauses = f.clauses.size() + f.units.size();
  const double h = inst.Np;
  r.band_applicable = inst.Np == inst.Nq;
  if (r.band_applicable) {
    r.convention = "instance widths Np = Nq = " + std::to_string(inst.Np);
    std::tie(r.band_low, r.band_high) = node_bounds(inst.Np);
    r.nodes_in_band = static_cast<long long>(r.nodes) >= r.band_low &&
                      static_cast<long long>(r.nodes) <= r.band_high;
  } else {
    r.convention = "widths differ (Np=" + std::to_string(inst.Np) + ", Nq=" + std::to_string(inst.Nq) +
                   "); closed forms not applied";
  }
  auto item = [&](std::string name, double built_v, double expected) {
    AuditItem it{std::move(name), built_v, expected, false};
    it.drift = expected > 0 ? std::abs(built_v / expected - 1.0) > r.tolerance : built_v != 0;
    r.items.push_back(it);
  };
  if (r.band_applicable) {
    item("units_vs_N0", static_cast<double>(r.units_bits), h * h * h);
    item("nodes_vs_band_mid", static_cast<double>(r.nodes), 0.5 * (r.band_low + r.band_high));
  }
  item("clauses_vs_10_units", static_cast<double>(r.clauses), 10.0 * static_cast<double>(r.units_all));
  return r;
}

}  // namespace rydfact
