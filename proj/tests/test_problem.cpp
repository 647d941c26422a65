#include <gtest/gtest.h>

#include "rydfact/error.hpp"
#include "rydfact/problem.hpp"

using namespace rydfact;

TEST(CreateInstance, SixHasThreeBitsAndTwoBitFactors) {
  const auto inst = create_instance(6);
  EXPECT_EQ(inst.N, 3);
  EXPECT_EQ(inst.n_bits, (std::vector<std::uint8_t>{0, 1, 1}));
  EXPECT_EQ(inst.Np, 2);
  EXPECT_EQ(inst.Nq, 2);
}

TEST(CreateInstance, FifteenWithOverride) {
  const auto inst = create_instance(15, Widths{3, 3});
  EXPECT_EQ(inst.N, 4);
  EXPECT_EQ(inst.n_bits, (std::vector<std::uint8_t>{1, 1, 1, 1}));
  EXPECT_EQ(inst.Np, 3);
  EXPECT_EQ(inst.Nq, 3);
}

TEST(CreateInstance, FourIsSmallestLegal) {
  const auto inst = create_instance(4);
  EXPECT_EQ(inst.N, 3);
  EXPECT_EQ(inst.n_bits, (std::vector<std::uint8_t>{0, 0, 1}));
  EXPECT_EQ(inst.Np, 2);
  EXPECT_EQ(inst.Nq, 2);
}

TEST(CreateInstance, Errors) {
  try {
    create_instance(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_instance);
  }
  try {
    create_instance(35, Widths{2, 2});  // Nq < N - Np
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::width_error);
  }
}

TEST(CreateInstance, BitsReconstructN) {
  for (std::uint64_t n = 4; n <= (1u << 20); ++n) {
    const auto inst = create_instance(n);
    std::uint64_t back = 0;
    for (int k = 0; k < inst.N; ++k) back |= std::uint64_t{inst.n_bits[k]} << k;
    ASSERT_EQ(back, n);
    ASSERT_EQ(inst.n_bits.back(), 1);
  }
}

TEST(CheckFactorPair, Examples) {
  EXPECT_TRUE(check_factor_pair(create_instance(6), FactorPair::from_values(2, 3, 2, 2)));
  EXPECT_FALSE(check_factor_pair(create_instance(6), FactorPair::from_values(3, 3, 2, 2)));
  EXPECT_TRUE(check_factor_pair(create_instance(35, Widths{3, 3}), FactorPair::from_values(5, 7, 3, 3)));
}

TEST(CheckFactorPair, RoundTrip) {
  for (int Np = 2; Np <= 5; ++Np)
    for (int Nq = 2; Nq <= 5; ++Nq)
      for (std::uint64_t p = 0; p < (1u << Np); ++p)
        for (std::uint64_t q = 0; q < (1u << Nq); ++q) {
          if (p * q < 4 || bit_length(p * q) > Np + Nq) continue;
          const auto inst = create_instance(p * q, Widths{Np, Nq});
          ASSERT_TRUE(check_factor_pair(inst, FactorPair::from_values(p, q, Np, Nq))) << p << "*" << q;
        }
}

TEST(CheckFactorPair, RejectsTooWide) {
  EXPECT_THROW(FactorPair::from_values(4, 1, 2, 2), Error);
}

TEST(DivisorPairs, MatchesProducts) {
  const auto inst = create_instance(36, Widths{4, 4});
  std::vector<std::pair<std::uint64_t, std::uint64_t>> want{{3, 12}, {4, 9}, {6, 6}, {9, 4}, {12, 3}};
  EXPECT_EQ(divisor_pairs(inst), want);
  EXPECT_TRUE(divisor_pairs(create_instance(13)).empty());
}
