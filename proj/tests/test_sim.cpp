#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "oracles.hpp"
#include "rydfact/builtin.hpp"
#include "rydfact/error.hpp"
#include "rydfact/sim.hpp"

using namespace rydfact;

namespace {

MisGraph path_graph(int n, std::vector<Edge> edges) {
  MisGraph g;
  for (int k = 0; k < n; ++k) g.vertices.push_back(VertexLabel::parse("p" + std::to_string(k) + "^(1)"));
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

double prob(const StateVector& s, const std::string& bits) { return std::norm(s.amplitude(parse_bits(bits))); }

const std::string kSolA = "011110";  // |0111;10>
const std::string kSolB = "110101";  // |1101;01>

double solution_probability(double stretch, double dt = 1e-3) {
  const HamiltonianSpec spec{builtin("G6").graph};
  const StateVector s = evolve(spec, paper_schedule(kTwoPi * 3.5).stretched(stretch), dt);
  return prob(s, kSolA) + prob(s, kSolB);
}

}  // namespace

TEST(Basis, Counts) {
  const MisGraph& g6 = builtin("G6").graph;
  EXPECT_EQ(blockade_basis(g6).size(), 28u);
  EXPECT_EQ(blockade_basis(g6).size(), oracle::count_independent_sets(g6));
  EXPECT_EQ(blockade_basis(path_graph(3, {})).size(), 8u);
  const Basis k2 = blockade_basis(path_graph(2, {{0, 1}}));
  ASSERT_EQ(k2.size(), 3u);
  EXPECT_EQ(k2.bitstring(0), "00");
  EXPECT_EQ(k2.bitstring(1), "10");
  EXPECT_EQ(k2.bitstring(2), "01");
  EXPECT_EQ(blockade_basis(builtin("G15Exp").graph).size(), oracle::count_independent_sets(builtin("G15Exp").graph));
}

TEST(Basis, Caps) {
  try {
    blockade_basis(path_graph(kBlockadeAtomCap + 1, {}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::too_large);
  }
  HamiltonianSpec full{path_graph(kFullAtomCap + 1, {}), SimMode::full, 1.0};
  EXPECT_THROW(full.validate(), Error);
  HamiltonianSpec bad{path_graph(2, {}), SimMode::blockade, 5.0};
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Hamiltonian, SingleAtomRabi) {
  const HamiltonianSpec spec{path_graph(1, {})};
  const Eigen::MatrixXd h = Eigen::MatrixXd(hamiltonian_at(spec, basis_for(spec), kTwoPi * 1.5, 0.0));
  ASSERT_EQ(h.rows(), 2);
  EXPECT_NEAR(h(0, 1), std::numbers::pi * 1.5, 1e-12);
  EXPECT_NEAR(h(1, 0), std::numbers::pi * 1.5, 1e-12);
  EXPECT_EQ(h(0, 0), 0);
  EXPECT_EQ(h(1, 1), 0);
}

TEST(Hamiltonian, BlockadePair) {
  const HamiltonianSpec spec{path_graph(2, {{0, 1}})};
  const double delta = 3.0;
  const Eigen::MatrixXd h = Eigen::MatrixXd(hamiltonian_at(spec, basis_for(spec), 2.0, delta));
  ASSERT_EQ(h.rows(), 3);
  EXPECT_EQ(h(0, 0), 0);
  EXPECT_EQ(h(1, 1), -delta);
  EXPECT_EQ(h(2, 2), -delta);
  EXPECT_EQ(h(0, 1), 1.0);
  EXPECT_EQ(h(0, 2), 1.0);
  EXPECT_EQ(h(1, 2), 0.0);
  EXPECT_TRUE(h.isApprox(h.transpose()));
}

TEST(Hamiltonian, FullModePenalty) {
  const HamiltonianSpec spec{path_graph(2, {{0, 1}}), SimMode::full, 100.0};
  const Basis b = basis_for(spec);
  const Eigen::MatrixXd h = Eigen::MatrixXd(hamiltonian_at(spec, b, 0.0, 1.0));
  EXPECT_EQ(h(b.index(3), b.index(3)), -2.0 + 100.0);
}

TEST(Hamiltonian, SixGroundSpaceAtPositiveDetuning) {
  const HamiltonianSpec spec{builtin("G6").graph};
  const Basis b = basis_for(spec);
  const double delta = kTwoPi * 3.5;
  const Eigen::MatrixXd h = Eigen::MatrixXd(hamiltonian_at(spec, b, 0.0, delta));
  const double emin = h.diagonal().minCoeff();
  std::set<std::string> ground;
  for (std::size_t k = 0; k < b.size(); ++k) {
    EXPECT_DOUBLE_EQ(h(k, k), -delta * std::popcount(b.configs[k]));
    if (h(k, k) == emin) ground.insert(b.bitstring(k));
  }
  EXPECT_EQ(ground, (std::set<std::string>{kSolA, kSolB}));
  EXPECT_EQ(ground.size(), solve_mis_exact(builtin("G6").graph).sets.size());
}

TEST(Hamiltonian, OutOfRangeTime) {
  const HamiltonianSpec spec{path_graph(1, {})};
  EXPECT_THROW(hamiltonian_at(spec, paper_schedule(kTwoPi * 3.5), 3.01), Error);
  EXPECT_NO_THROW(hamiltonian_at(spec, paper_schedule(kTwoPi * 3.5), 3.0));
}

TEST(Schedule, SweepShape) {
  const DriveSchedule s = paper_schedule(kTwoPi * 3.9);
  ASSERT_EQ(s.segments.size(), 3u);
  EXPECT_NEAR(s.total_time(), 3.0, 1e-12);
  EXPECT_NEAR(s.rabi(0), 0, 1e-12);
  EXPECT_NEAR(s.detuning(0), -kTwoPi * 3.5, 1e-12);
  for (double t : {0.3, 2.7}) {
    EXPECT_NEAR(s.rabi(t - 1e-12), s.rabi(t + 1e-12), 1e-9);
    EXPECT_NEAR(s.detuning(t - 1e-12), s.detuning(t + 1e-12), 1e-9);
  }
  EXPECT_NEAR(s.rabi(1.5), kTwoPi * 1.5, 1e-12);
  EXPECT_NEAR(s.detuning(2.7), kTwoPi * 3.9, 1e-12);
  EXPECT_NEAR(s.rabi(3.0), 0, 1e-12);
  EXPECT_NEAR(s.max_abs_detuning(), kTwoPi * 3.9, 1e-12);
  EXPECT_NEAR(s.stretched(2).total_time(), 6.0, 1e-12);
  EXPECT_THROW(paper_schedule(0), Error);
  EXPECT_THROW(s.rabi(-0.1), Error);
}

TEST(Evolve, RabiPiPulse) {
  const HamiltonianSpec spec{path_graph(1, {})};
  const double omega = kTwoPi * 1.5;
  const StateVector s = evolve(spec, DriveSchedule::constant(std::numbers::pi / omega, omega, 0), 1e-3);
  EXPECT_NEAR(prob(s, "1"), 1.0, 1e-6);
}

TEST(Evolve, NoDriveStaysEmpty) {
  const HamiltonianSpec spec{builtin("G15").graph};
  const StateVector s = evolve(spec, DriveSchedule::constant(0.5, 0, kTwoPi * 2), 1e-2);
  EXPECT_NEAR(std::abs(s.amplitudes[0]), 1.0, 1e-12);
}

TEST(Evolve, NormPreserved) {
  for (const char* name : {"G6", "G15"}) {
    const HamiltonianSpec spec{builtin(name).graph};
    const StateVector s = evolve(spec, paper_schedule(kTwoPi * 3.5), 1e-3);
    EXPECT_NEAR(s.norm(), 1.0, 1e-6) << name;
  }
}

TEST(Evolve, KrylovMatchesDense) {
  const HamiltonianSpec spec{builtin("G15").graph};
  DriveSchedule sched{{{0.05, {0, kTwoPi * 1.5}, {-kTwoPi * 3.5, -kTwoPi}}, {0.05, {kTwoPi * 1.5, kTwoPi}, {-kTwoPi, kTwoPi * 2}}}};
  EvolveOptions dense;
  dense.dense_cutoff = 1 << 20;
  const StateVector a = evolve(spec, sched, 2e-3);
  const StateVector b = evolve(spec, sched, 2e-3, dense);
  EXPECT_LT((a.amplitudes - b.amplitudes).norm(), 1e-9);
}

TEST(Evolve, Reproducible) {
  const HamiltonianSpec spec{builtin("G15").graph};
  const StateVector a = evolve(spec, paper_schedule(kTwoPi * 3.5), 5e-3);
  const StateVector b = evolve(spec, paper_schedule(kTwoPi * 3.5), 5e-3);
  EXPECT_TRUE(a.amplitudes == b.amplitudes);
}

TEST(Evolve, SixSolutionsLead) {
  const HamiltonianSpec spec{builtin("G6").graph};
  const StateVector s = evolve(spec, paper_schedule(kTwoPi * 3.5), 1e-3);
  auto p = s.probabilities();
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return p[x] > p[y]; });
  std::set<std::string> top{s.basis->bitstring(order[0]), s.basis->bitstring(order[1])};
  EXPECT_EQ(top, (std::set<std::string>{kSolA, kSolB}));
}

TEST(Evolve, StretchingApproachesAdiabatic) {
  double last = 0;
  for (double k : {1, 2, 4, 8}) {
    const double p = solution_probability(k);
    EXPECT_GE(p, last - 1e-9) << k;
    last = p;
  }
  EXPECT_GT(last, 0.9);
}

TEST(Evolve, FullSpaceAgreesWithBlockade) {
  const MisGraph& g = builtin("G6").graph;
  const DriveSchedule sched = paper_schedule(kTwoPi * 3.5);
  const StateVector blockade = evolve(HamiltonianSpec{g}, sched, 1e-3);
  const StateVector full = evolve(HamiltonianSpec{g, SimMode::full, 50 * sched.max_abs_detuning()}, sched, 1e-3);
  double tv = 0;
  for (std::size_t k = 0; k < full.basis->size(); ++k) {
    const std::uint64_t c = full.basis->configs[k];
    tv += std::abs(std::norm(full.amplitudes[k]) - std::norm(blockade.amplitude(c)));
  }
  EXPECT_LT(0.5 * tv, 0.05);
}

TEST(GroundState, Six) {
  const StateVector s = ground_state(HamiltonianSpec{builtin("G6").graph}, kTwoPi * 3.5);
  EXPECT_NEAR(std::abs(s.amplitude(parse_bits(kSolA)) - 1 / std::sqrt(2.0)), 0, 1e-9);
  EXPECT_NEAR(std::abs(s.amplitude(parse_bits(kSolB)) - 1 / std::sqrt(2.0)), 0, 1e-9);
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(GroundState, PairAndFifteen) {
  const StateVector k2 = ground_state(HamiltonianSpec{path_graph(2, {{0, 1}})}, 1.0);
  EXPECT_NEAR(prob(k2, "10"), 0.5, 1e-12);
  EXPECT_NEAR(prob(k2, "01"), 0.5, 1e-12);
  const MisGraph& g = builtin("G15").graph;
  const StateVector s = ground_state(HamiltonianSpec{g}, 1.0);
  std::set<std::uint64_t> support, mis;
  for (std::size_t k = 0; k < s.basis->size(); ++k)
    if (std::norm(s.amplitudes[k]) > 0) support.insert(s.basis->configs[k]);
  for (const auto& set : solve_mis_exact(g).sets) {
    std::uint64_t c = 0;
    for (int v : set) c |= std::uint64_t{1} << v;
    mis.insert(c);
  }
  EXPECT_EQ(support, mis);
  EXPECT_THROW(ground_state(HamiltonianSpec{g}, -1.0), Error);
}

TEST(Sample, UniformPair) {
  const StateVector k2 = ground_state(HamiltonianSpec{path_graph(2, {{0, 1}})}, 1.0);
  const auto ev = sample(k2, 10000, 42);
  ASSERT_EQ(ev.size(), 2u);
  for (const auto& e : ev) EXPECT_NEAR(static_cast<double>(e.count), 5000.0, 200.0) << e.bits;
}

TEST(Sample, BasisStateAndDeterminism) {
  const HamiltonianSpec spec{builtin("G6").graph};
  StateVector s{std::make_shared<const Basis>(basis_for(spec)), Eigen::VectorXcd::Zero(28)};
  s.amplitudes[5] = 1.0;
  const auto ev = sample(s, 777, 1);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_EQ(ev[0].count, 777u);
  EXPECT_EQ(ev[0].bits, s.basis->bitstring(5));
  EXPECT_THROW(sample(s, 0, 1), Error);
  const StateVector g = evolve(spec, paper_schedule(kTwoPi * 3.5), 1e-3);
  const auto a = sample(g, 5000, 9), b = sample(g, 5000, 9);
  ASSERT_EQ(a.size(), b.size());
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].bits, b[k].bits);
    EXPECT_EQ(a[k].count, b[k].count);
    total += a[k].count;
  }
  EXPECT_EQ(total, 5000u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end(), [](auto& x, auto& y) { return x.bits < y.bits; }));
}

TEST(Sample, SixShotsMatchProbabilities) {
  const HamiltonianSpec spec{builtin("G6").graph};
  const StateVector s = evolve(spec, paper_schedule(kTwoPi * 3.5), 1e-3);
  const double p = prob(s, kSolA) + prob(s, kSolB);
  const std::uint64_t shots = 12575;
  std::uint64_t hits = 0;
  for (const auto& e : sample(s, shots, 2024))
    if (e.bits == kSolA || e.bits == kSolB) hits += e.count;
  const double sigma = std::sqrt(shots * p * (1 - p));
  EXPECT_NEAR(static_cast<double>(hits), shots * p, 5 * sigma);
}

TEST(Evolve, StepConvergence) {
  const HamiltonianSpec spec{builtin("G6").graph};
  const DriveSchedule sched = paper_schedule(kTwoPi * 3.5);
  const auto a = evolve(spec, sched, 1e-3).probabilities();
  const auto b = evolve(spec, sched, 5e-4).probabilities();
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LT(std::abs(a[k] - b[k]), 1e-4);
}
