#include "rydfact/problem.hpp"

#include <string>

namespace rydfact {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_instance: return "InvalidInstance";
    case ErrorKind::width_error: return "WidthError";
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::fully_dead_diagram: return "FullyDeadDiagram";
    case ErrorKind::too_many_entry_nodes: return "TooManyEntryNodes";
    case ErrorKind::too_large: return "TooLarge";
    case ErrorKind::clause_too_large: return "ClauseTooLarge";
    case ErrorKind::odd_wire_length: return "OddWireLength";
    case ErrorKind::missing_edge: return "MissingEdge";
    case ErrorKind::out_of_range: return "OutOfRange";
    case ErrorKind::length_mismatch: return "LengthMismatch";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::io_error: return "IOError";
  }
  return "Error";
}

int bit_length(std::uint64_t n) {
  int len = 0;
  while (n) {
    ++len;
    n >>= 1;
  }
  return len;
}

namespace {

std::vector<std::uint8_t> to_bits(std::uint64_t v, int width) {
  std::vector<std::uint8_t> bits(width);
  for (int k = 0; k < width; ++k) bits[k] = (v >> k) & 1u;
  return bits;
}

}  // namespace

FactorPair FactorPair::from_values(std::uint64_t p, std::uint64_t q, int Np, int Nq) {
  if (Np < 1 || Nq < 1 || Np > 63 || Nq > 63)
    throw Error(ErrorKind::width_error, "factor widths must be in [1, 63]");
  if (bit_length(p) > Np || bit_length(q) > Nq)
    throw Error(ErrorKind::width_error, "factor " + std::to_string(p) + "x" + std::to_string(q) +
                                            " does not fit widths");
  return FactorPair{p, q, to_bits(p, Np), to_bits(q, Nq)};
}

ProblemInstance create_instance(std::uint64_t n, std::optional<Widths> widths) {
  if (n < 4) throw Error(ErrorKind::invalid_instance, "n must be >= 4, got " + std::to_string(n));
  ProblemInstance inst;
  inst.n = n;
  inst.N = bit_length(n);
  inst.n_bits = to_bits(n, inst.N);
  if (widths) {
    inst.Np = widths->first;
    inst.Nq = widths->second;
  } else {
    inst.Np = inst.Nq = inst.N / 2 + 1;
  }
  if (inst.Np < 2 || inst.Nq < 2)
    throw Error(ErrorKind::width_error, "widths must be at least 2");
  if (inst.Nq < inst.N - inst.Np)
    throw Error(ErrorKind::width_error, "Nq must be >= N - Np (N=" + std::to_string(inst.N) + ")");
  if (inst.Np + inst.Nq > 63)
    throw Error(ErrorKind::width_error, "Np + Nq must not exceed 63");
  return inst;
}

bool check_factor_pair(const ProblemInstance& inst, const FactorPair& pair) {
  if (static_cast<int>(pair.p_bits.size()) > inst.Np || static_cast<int>(pair.q_bits.size()) > inst.Nq)
    throw Error(ErrorKind::width_error, "factor pair wider than instance widths");
  unsigned __int128 sum = 0;
  for (std::size_t i = 0; i < pair.p_bits.size(); ++i)
    for (std::size_t j = 0; j < pair.q_bits.size(); ++j)
      if (pair.p_bits[i] && pair.q_bits[j]) sum += static_cast<unsigned __int128>(1) << (i + j);
  return sum == inst.n;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> divisor_pairs(const ProblemInstance& inst) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  const std::uint64_t pmax = std::uint64_t{1} << inst.Np;
  const std::uint64_t qmax = std::uint64_t{1} << inst.Nq;
  for (std::uint64_t p = 2; p < pmax && p <= inst.n; ++p) {
    if (inst.n % p) continue;
    std::uint64_t q = inst.n / p;
    if (q >= 2 && q < qmax) out.emplace_back(p, q);
  }
  return out;
}

}  // namespace rydfact
