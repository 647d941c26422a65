#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "rydfact/mis.hpp"

namespace rydfact {

// Frequencies are angular (rad/us), times in us, hbar = 1.
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Ramp {
  double start = 0;
  double end = 0;
  double at(double frac) const { return start + (end - start) * frac; }
};

struct Segment {
  double duration = 0;
  Ramp rabi;
  Ramp detuning;
};

struct DriveSchedule {
  std::vector<Segment> segments;

  double total_time() const;
  double rabi(double t) const;
  double detuning(double t) const;
  double max_abs_detuning() const;
  DriveSchedule stretched(double k) const;
  static DriveSchedule constant(double duration, double rabi, double detuning);
};

// Omega 0 -> 2pi*1.5 over 0.3 us at Delta = -2pi*3.5, Delta -> +delta_f over
// 2.4 us, then Omega -> 0 over 0.3 us. delta_f is angular.
DriveSchedule paper_schedule(double delta_f);

enum class SimMode { blockade, full };

struct HamiltonianSpec {
  MisGraph graph;
  SimMode mode = SimMode::blockade;
  double interaction_u = std::numeric_limits<double>::infinity();

  void validate() const;
};

inline constexpr int kBlockadeAtomCap = 28;
inline constexpr int kFullAtomCap = 16;

struct Basis {
  int atoms = 0;
  std::vector<std::uint64_t> configs;  // bit k = atom k; ordered by popcount then value

  std::size_t size() const { return configs.size(); }
  std::int64_t index(std::uint64_t config) const;
  std::string bitstring(std::size_t k) const;
};

Basis blockade_basis(const MisGraph& g);
Basis full_basis(int atoms);
Basis basis_for(const HamiltonianSpec& spec);

std::string config_bits(std::uint64_t config, int atoms);
std::uint64_t parse_bits(const std::string& bits);

Eigen::SparseMatrix<double> hamiltonian_at(const HamiltonianSpec& spec, const DriveSchedule& sched, double t);
Eigen::SparseMatrix<double> hamiltonian_at(const HamiltonianSpec& spec, const Basis& basis, double rabi,
                                           double detuning);

struct StateVector {
  std::shared_ptr<const Basis> basis;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
  std::vector<double> probabilities() const;
  std::complex<double> amplitude(std::uint64_t config) const;
};

struct EvolveOptions {
  double krylov_tol = 1e-12;
  int max_krylov = 40;
  int dense_cutoff = 64;
};

StateVector evolve(const HamiltonianSpec& spec, const DriveSchedule& sched, double dt,
                   const EvolveOptions& opts = {});

// Uniform superposition over the ground space of -Delta * popcount (Omega = 0).
StateVector ground_state(const HamiltonianSpec& spec, double detuning);

struct MeasurementEvent {
  std::string bits;  // one character per atom, atom 0 first
  std::uint64_t count = 0;
};

// Sorted by bitstring; counts sum to shots.
std::vector<MeasurementEvent> sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed);

}  // namespace rydfact
