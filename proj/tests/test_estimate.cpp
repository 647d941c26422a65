#include <gtest/gtest.h>

#include <cmath>

#include "rydfact/bdd.hpp"
#include "rydfact/cnf.hpp"
#include "rydfact/error.hpp"
#include "rydfact/estimate.hpp"

using namespace rydfact;

TEST(Estimate, FourBits) {
  const ResourceEstimate e = estimate(4);
  EXPECT_DOUBLE_EQ(e.N0, 8);
  EXPECT_DOUBLE_EQ(e.Nc, 80);
  EXPECT_DOUBLE_EQ(e.steps, 8);
  EXPECT_DOUBLE_EQ(e.memory, 8);
  EXPECT_DOUBLE_EQ(e.Bn_low, 2 * 8 - 2 * 4 - 2 * 2 + 5);
  EXPECT_DOUBLE_EQ(e.Bn_high, 2 * 8 - 4 * 2 + 5);
  EXPECT_NEAR(e.Natom / (4.88 * std::pow(80.0, 1.8)), 1.0, 1e-12);
}

TEST(Estimate, LargeKeyScale) {
  const ResourceEstimate e = estimate(2048);
  EXPECT_DOUBLE_EQ(e.Nc, 10.0 * 1024.0 * 1024.0 * 1024.0);
  EXPECT_NEAR(e.Nc, 1.07e10, 0.01e10);
  EXPECT_TRUE(std::isfinite(e.Natom));
  EXPECT_GT(e.Natom, 1e18);
}

TEST(Estimate, OddBitsUseRealHalf) {
  const ResourceEstimate e = estimate(5);
  EXPECT_DOUBLE_EQ(e.N0, 2.5 * 2.5 * 2.5);
  EXPECT_LE(e.Bn_low, e.Bn_high);
}

TEST(Estimate, Monotone) {
  EXPECT_EQ(atoms_for_clauses(0), 0);
  double last = 0;
  for (double nc = 1; nc < 1e12; nc *= 3) {
    const double a = atoms_for_clauses(nc);
    EXPECT_GT(a, last);
    last = a;
  }
  for (int b = 2; b <= 1000000; b = b * 7 + 1) {
    const ResourceEstimate e = estimate(b);
    EXPECT_TRUE(std::isfinite(e.Natom)) << b;
    EXPECT_GE(e.Bn_low, 0);
  }
  EXPECT_THROW(estimate(1), Error);
}

TEST(Audit, Fifteen) {
  const auto inst = create_instance(15, Widths{3, 3});
  const Bdd b = prune(build_bdd(inst));
  const AuditReport r = audit_against_build(inst, b, encode_generic(b));
  ASSERT_FALSE(r.items.empty());
  EXPECT_EQ(r.items[0].name, "units_vs_N0");
  EXPECT_EQ(r.items[0].built, 14);
  EXPECT_TRUE(r.band_applicable);
  EXPECT_FALSE(r.convention.empty());
}

TEST(Audit, SixAndFour) {
  for (std::uint64_t n : {4, 6}) {
    const auto inst = create_instance(n, Widths{2, 2});
    const Bdd b = prune(build_bdd(inst));
    const AuditReport r = audit_against_build(inst, b, encode_generic(b));
    EXPECT_EQ(r.clauses, encode_generic(b).clauses.size());
    EXPECT_EQ(r.tolerance, 0.2);
  }
}

TEST(Audit, AsymmetricWidthsSkipBand) {
  const auto inst = create_instance(35, Widths{3, 4});
  const Bdd b = prune(build_bdd(inst));
  EXPECT_FALSE(audit_against_build(inst, b, encode_generic(b)).band_applicable);
}
