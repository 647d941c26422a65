#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rydfact/error.hpp"

namespace rydfact {

// n together with its LSB-first bits and the widths allotted to p and q.
struct ProblemInstance {
  std::uint64_t n = 0;
  int N = 0;
  std::vector<std::uint8_t> n_bits;
  int Np = 0;
  int Nq = 0;
};

struct FactorPair {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  std::vector<std::uint8_t> p_bits;
  std::vector<std::uint8_t> q_bits;

  static FactorPair from_values(std::uint64_t p, std::uint64_t q, int Np, int Nq);
};

using Widths = std::pair<int, int>;

// Default widths are floor(N/2)+1 for both factors.
ProblemInstance create_instance(std::uint64_t n, std::optional<Widths> widths = std::nullopt);

bool check_factor_pair(const ProblemInstance& inst, const FactorPair& pair);

int bit_length(std::uint64_t n);

// Trial division: all (p, q) with p*q = n, 2 <= p < 2^Np, 2 <= q < 2^Nq, ordered by p.
std::vector<std::pair<std::uint64_t, std::uint64_t>> divisor_pairs(const ProblemInstance& inst);

}  // namespace rydfact
