#include "rydfact/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>

namespace rydfact {

double DriveSchedule::total_time() const {
  double t = 0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

namespace {

template <class F>
double lookup(const DriveSchedule& s, double t, F pick) {
  const double total = s.total_time();
  if (t < 0 || t > total * (1 + 1e-12) + 1e-12)
    throw Error(ErrorKind::out_of_range, "t=" + std::to_string(t) + " outside [0, " + std::to_string(total) + "]");
  double t0 = 0;
  for (std::size_t k = 0; k < s.segments.size(); ++k) {
    const auto& seg = s.segments[k];
    if (t <= t0 + seg.duration || k + 1 == s.segments.size()) {
      const double frac = seg.duration > 0 ? std::clamp((t - t0) / seg.duration, 0.0, 1.0) : 1.0;
      return pick(seg).at(frac);
    }
    t0 += seg.duration;
  }
  return 0.0;
}

}  // namespace

double DriveSchedule::rabi(double t) const {
  return lookup(*this, t, [](const Segment& s) { return s.rabi; });
}

double DriveSchedule::detuning(double t) const {
  return lookup(*this, t, [](const Segment& s) { return s.detuning; });
}

double DriveSchedule::max_abs_detuning() const {
  double m = 0;
  for (const auto& s : segments) m = std::max({m, std::abs(s.detuning.start), std::abs(s.detuning.end)});
  return m;
}

DriveSchedule DriveSchedule::stretched(double k) const {
  if (!(k > 0)) throw Error(ErrorKind::invalid_argument, "stretch factor must be positive");
  DriveSchedule out = *this;
  for (auto& s : out.segments) s.duration *= k;
  return out;
}

DriveSchedule DriveSchedule::constant(double duration, double rabi, double detuning) {
  return {{{duration, {rabi, rabi}, {detuning, detuning}}}};
}

DriveSchedule paper_schedule(double delta_f) {
  if (!(delta_f > 0)) throw Error(ErrorKind::invalid_argument, "final detuning must be positive");
  const double omega0 = kTwoPi * 1.5;
  const double delta0 = -kTwoPi * 3.5;
  return {{{0.3, {0, omega0}, {delta0, delta0}},
           {2.4, {omega0, omega0}, {delta0, delta_f}},
           {0.3, {omega0, 0}, {delta_f, delta_f}}}};
}

void HamiltonianSpec::validate() const {
  if (mode == SimMode::blockade) {
    if (!std::isinf(interaction_u))
      throw Error(ErrorKind::invalid_argument, "blockade mode requires infinite interaction");
    if (graph.size() > kBlockadeAtomCap)
      throw Error(ErrorKind::too_large, std::to_string(graph.size()) + " atoms exceed the blockade cap of " +
                                            std::to_string(kBlockadeAtomCap));
  } else {
    if (!std::isfinite(interaction_u))
      throw Error(ErrorKind::invalid_argument, "full-space mode requires a finite interaction");
    if (graph.size() > kFullAtomCap)
      throw Error(ErrorKind::too_large, std::to_string(graph.size()) + " atoms exceed the full-space cap of " +
                                            std::to_string(kFullAtomCap));
  }
}

namespace {

bool config_less(std::uint64_t a, std::uint64_t b) {
  const int pa = std::popcount(a), pb = std::popcount(b);
  return pa != pb ? pa < pb : a < b;
}

constexpr std::size_t kMaxDimension = std::size_t{1} << 22;

std::vector<std::uint64_t> neighbour_masks(const MisGraph& g) {
  std::vector<std::uint64_t> nb(g.size(), 0);
  for (auto [u, v] : g.edges) {
    nb[u] |= std::uint64_t{1} << v;
    nb[v] |= std::uint64_t{1} << u;
  }
  return nb;
}

}  // namespace

std::int64_t Basis::index(std::uint64_t config) const {
  auto it = std::lower_bound(configs.begin(), configs.end(), config, config_less);
  if (it == configs.end() || *it != config) return -1;
  return it - configs.begin();
}

std::string config_bits(std::uint64_t config, int atoms) {
  std::string s(atoms, '0');
  for (int a = 0; a < atoms; ++a)
    if ((config >> a) & 1) s[a] = '1';
  return s;
}

std::uint64_t parse_bits(const std::string& bits) {
  if (bits.size() > 64) throw Error(ErrorKind::too_large, "bitstring longer than 64 atoms");
  std::uint64_t c = 0;
  for (std::size_t a = 0; a < bits.size(); ++a) {
    if (bits[a] == '1') c |= std::uint64_t{1} << a;
    else if (bits[a] != '0') throw Error(ErrorKind::parse_error, "bitstring must contain only 0 and 1");
  }
  return c;
}

std::string Basis::bitstring(std::size_t k) const { return config_bits(configs[k], atoms); }

Basis blockade_basis(const MisGraph& g) {
  if (g.size() > kBlockadeAtomCap)
    throw Error(ErrorKind::too_large, std::to_string(g.size()) + " atoms exceed the blockade cap of " +
                                          std::to_string(kBlockadeAtomCap));
  const auto nb = neighbour_masks(g);
  Basis b;
  b.atoms = g.size();
  auto rec = [&](auto&& self, int atom, std::uint64_t cur, std::uint64_t blocked) -> void {
    if (atom == b.atoms) {
      b.configs.push_back(cur);
      if (b.configs.size() > kMaxDimension) throw Error(ErrorKind::too_large, "blockade subspace too large");
      return;
    }
    self(self, atom + 1, cur, blocked);
    if (!((blocked >> atom) & 1)) self(self, atom + 1, cur | (std::uint64_t{1} << atom), blocked | nb[atom]);
  };
  rec(rec, 0, 0, 0);
  std::sort(b.configs.begin(), b.configs.end(), config_less);
  return b;
}

Basis full_basis(int atoms) {
  if (atoms > kFullAtomCap)
    throw Error(ErrorKind::too_large, std::to_string(atoms) + " atoms exceed the full-space cap");
  Basis b;
  b.atoms = atoms;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << atoms); ++c) b.configs.push_back(c);
  std::sort(b.configs.begin(), b.configs.end(), config_less);
  return b;
}

Basis basis_for(const HamiltonianSpec& spec) {
  spec.validate();
  return spec.mode == SimMode::blockade ? blockade_basis(spec.graph) : full_basis(spec.graph.size());
}

namespace {

// H = (Omega/2) A + diag(-Delta * n + U * violations), A the single-flip adjacency.
struct Operator {
  std::vector<int> row_ptr{0};
  std::vector<int> cols;
  Eigen::VectorXd excited;
  Eigen::VectorXd violations;

  Operator(const HamiltonianSpec& spec, const Basis& basis) {
    const auto nb = neighbour_masks(spec.graph);
    const std::size_t dim = basis.size();
    excited.resize(dim);
    violations.setZero(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      const std::uint64_t c = basis.configs[k];
      excited[k] = std::popcount(c);
      if (spec.mode == SimMode::full) {
        int bad = 0;
        for (auto [u, v] : spec.graph.edges) bad += ((c >> u) & 1) && ((c >> v) & 1);
        violations[k] = bad;
      }
      for (int a = 0; a < basis.atoms; ++a) {
        const std::int64_t j = basis.index(c ^ (std::uint64_t{1} << a));
        if (j >= 0) cols.push_back(static_cast<int>(j));
      }
      row_ptr.push_back(static_cast<int>(cols.size()));
    }
  }

  Eigen::VectorXd diagonal(const HamiltonianSpec& spec, double detuning) const {
    Eigen::VectorXd d = -detuning * excited;
    if (spec.mode == SimMode::full) d += spec.interaction_u * violations;
    return d;
  }

  template <class In>
  void apply(double half_rabi, const Eigen::VectorXd& diag, const In& x, Eigen::VectorXcd& y) const {
    const Eigen::Index n = x.size();
    y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      std::complex<double> s = 0;
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += x[cols[k]];
      y[i] = diag[i] * x[i] + half_rabi * s;
    }
  }

  Eigen::MatrixXd dense(double half_rabi, const Eigen::VectorXd& diag) const {
    const Eigen::Index n = diag.size();
    Eigen::MatrixXd h = diag.asDiagonal();
    for (Eigen::Index i = 0; i < n; ++i)
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) h(i, cols[k]) += half_rabi;
    return h;
  }
};

// exp(-i h T) e1 for a real symmetric tridiagonal T given by (alpha, beta).
Eigen::VectorXcd tridiagonal_exp(const std::vector<double>& alpha, const std::vector<double>& beta, double h) {
  const int m = static_cast<int>(alpha.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    t(k, k) = alpha[k];
    if (k + 1 < m) t(k, k + 1) = t(k + 1, k) = beta[k];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  Eigen::VectorXcd phase(m);
  for (int k = 0; k < m; ++k) phase[k] = std::polar(1.0, -h * es.eigenvalues()[k]) * es.eigenvectors()(0, k);
  return es.eigenvectors().cast<std::complex<double>>() * phase;
}

// Lanczos approximation of exp(-i h H) psi; false if not converged within max_krylov.
// v is scratch space for the Krylov basis, reused across calls.
bool krylov_step(const Operator& op, double half_rabi, const Eigen::VectorXd& diag, Eigen::VectorXcd& psi,
                 double h, const EvolveOptions& opts, Eigen::MatrixXcd& v) {
  const double beta0 = psi.norm();
  if (beta0 == 0) return true;
  const Eigen::Index dim = psi.size();
  if (v.rows() != dim || v.cols() < opts.max_krylov + 1) v.resize(dim, opts.max_krylov + 1);
  v.col(0) = psi / beta0;
  std::vector<double> alpha, beta;
  Eigen::VectorXcd w(dim), overlap;
  for (int j = 0; j < opts.max_krylov; ++j) {
    op.apply(half_rabi, diag, v.col(j), w);
    alpha.push_back(v.col(j).dot(w).real());
    w -= alpha[j] * v.col(j);
    if (j > 0) w -= beta[j - 1] * v.col(j - 1);
    overlap.noalias() = v.leftCols(j + 1).adjoint() * w;
    w.noalias() -= v.leftCols(j + 1) * overlap;
    const double b = w.norm();
    const Eigen::VectorXcd c = tridiagonal_exp(alpha, beta, h);
    if (b * std::abs(c[j]) < opts.krylov_tol || b < 1e-14) {
      psi.noalias() = v.leftCols(j + 1) * (beta0 * c);
      return true;
    }
    beta.push_back(b);
    v.col(j + 1) = w / b;
  }
  return false;
}

void advance(const Operator& op, double half_rabi, const Eigen::VectorXd& diag, Eigen::VectorXcd& psi, double h,
             const EvolveOptions& opts, Eigen::MatrixXcd& scratch) {
  if (krylov_step(op, half_rabi, diag, psi, h, opts, scratch)) return;
  advance(op, half_rabi, diag, psi, h / 2, opts, scratch);
  advance(op, half_rabi, diag, psi, h / 2, opts, scratch);
}

}  // namespace

Eigen::SparseMatrix<double> hamiltonian_at(const HamiltonianSpec& spec, const Basis& basis, double rabi,
                                           double detuning) {
  Operator op(spec, basis);
  const Eigen::VectorXd diag = op.diagonal(spec, detuning);
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (diag[i] != 0) trip.emplace_back(i, i, diag[i]);
    if (rabi != 0)
      for (int k = op.row_ptr[i]; k < op.row_ptr[i + 1]; ++k) trip.emplace_back(i, op.cols[k], rabi / 2);
  }
  Eigen::SparseMatrix<double> h(basis.size(), basis.size());
  h.setFromTriplets(trip.begin(), trip.end());
  return h;
}

Eigen::SparseMatrix<double> hamiltonian_at(const HamiltonianSpec& spec, const DriveSchedule& sched, double t) {
  const double rabi = sched.rabi(t);
  const double detuning = sched.detuning(t);
  return hamiltonian_at(spec, basis_for(spec), rabi, detuning);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amplitudes.size());
  for (Eigen::Index k = 0; k < amplitudes.size(); ++k) p[k] = std::norm(amplitudes[k]);
  return p;
}

std::complex<double> StateVector::amplitude(std::uint64_t config) const {
  const std::int64_t k = basis->index(config);
  return k < 0 ? std::complex<double>{0, 0} : amplitudes[k];
}

StateVector evolve(const HamiltonianSpec& spec, const DriveSchedule& sched, double dt, const EvolveOptions& opts) {
  if (!(dt > 0)) throw Error(ErrorKind::invalid_argument, "dt must be positive");
  auto basis = std::make_shared<const Basis>(basis_for(spec));
  const Operator op(spec, *basis);
  StateVector state{basis, Eigen::VectorXcd::Zero(basis->size())};
  state.amplitudes[0] = 1.0;  // empty configuration sorts first
  const bool dense = static_cast<int>(basis->size()) <= opts.dense_cutoff;
  Eigen::MatrixXcd scratch;
  for (const auto& seg : sched.segments) {
    const long steps = std::max(1L, static_cast<long>(std::ceil(seg.duration / dt - 1e-9)));
    const double h = seg.duration / steps;
    for (long s = 0; s < steps; ++s) {
      const double frac = (s + 0.5) / steps;
      const double half_rabi = seg.rabi.at(frac) / 2;
      const Eigen::VectorXd diag = op.diagonal(spec, seg.detuning.at(frac));
      if (dense) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense(half_rabi, diag));
        const auto& vecs = es.eigenvectors();
        Eigen::VectorXcd coeff = vecs.transpose().cast<std::complex<double>>() * state.amplitudes;
        for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff[k] *= std::polar(1.0, -h * es.eigenvalues()[k]);
        state.amplitudes = vecs.cast<std::complex<double>>() * coeff;
      } else {
        advance(op, half_rabi, diag, state.amplitudes, h, opts, scratch);
      }
    }
  }
  return state;
}

StateVector ground_state(const HamiltonianSpec& spec, double detuning) {
  if (spec.mode != SimMode::blockade) throw Error(ErrorKind::invalid_argument, "ground_state needs blockade mode");
  if (!(detuning > 0)) throw Error(ErrorKind::invalid_argument, "ground_state needs positive detuning");
  auto basis = std::make_shared<const Basis>(basis_for(spec));
  int best = 0;
  for (auto c : basis->configs) best = std::max(best, std::popcount(c));
  StateVector state{basis, Eigen::VectorXcd::Zero(basis->size())};
  for (std::size_t k = 0; k < basis->size(); ++k)
    if (std::popcount(basis->configs[k]) == best) state.amplitudes[k] = 1.0;
  state.amplitudes /= state.amplitudes.norm();
  return state;
}

std::vector<MeasurementEvent> sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw Error(ErrorKind::invalid_argument, "shots must be >= 1");
  const auto p = state.probabilities();
  std::vector<double> cum(p.size());
  double acc = 0;
  for (std::size_t k = 0; k < p.size(); ++k) cum[k] = acc += p[k];
  std::mt19937_64 rng(seed);
  std::map<std::size_t, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    std::size_t k = std::min<std::size_t>(it - cum.begin(), p.size() - 1);
    ++counts[k];
  }
  std::vector<MeasurementEvent> out;
  for (auto [k, c] : counts) out.push_back({state.basis->bitstring(k), c});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.bits < b.bits; });
  return out;
}

}  // namespace rydfact
