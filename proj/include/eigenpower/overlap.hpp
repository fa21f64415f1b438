#pragma once

// Overlaps between pipeline states: exact inner products, or shot-sampled
// Hadamard tests on the ancilla-controlled superposition of two preparations.

#include <cstdint>

#include "eigenpower/circuit.hpp"
#include "eigenpower/powerpipe.hpp"

namespace eigenpower {

struct OverlapEstimate {
  Complex value;
  // 0 means exact.
  std::uint64_t shots = 0;
  // Standard errors of the real and imaginary parts.
  double std_error = 0.0;
  double std_error_imag = 0.0;
  std::uint64_t seed = 0;
};

// <a|b> over the full pipeline states. LayoutMismatch unless both states use
// the same backend and ancilla count.
OverlapEstimate exact_overlap(const PipelineState& a, const PipelineState& b);

enum class Basis { kX, kY };

struct HadamardEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

// P(ancilla = 0) for (|0>U_a|0..0> + |1>U_b|0..0>)/sqrt2 measured in `basis`:
// (1 + Re<a|b>)/2 for X, (1 + Im<a|b>)/2 for Y.
double hadamard_zero_probability(const Circuit& prep_a, const Circuit& prep_b, Basis basis,
                                 unsigned qubit_cap = default_qubit_cap());

// (n0 - n1) / shots with std_error sqrt((1 - estimate^2) / shots).
HadamardEstimate sample_hadamard(double p_zero, std::uint64_t shots, std::uint64_t seed);

HadamardEstimate hadamard_test(const Circuit& prep_a, const Circuit& prep_b, std::uint64_t shots,
                               Basis basis, std::uint64_t seed,
                               unsigned qubit_cap = default_qubit_cap());

// Exact when shots == 0; otherwise X and Y Hadamard tests on seeds derived
// from `seed` (streams 0 and 1).
OverlapEstimate estimate_overlap(const PipelineState& a, const PipelineState& b,
                                 std::uint64_t shots, std::uint64_t seed,
                                 unsigned qubit_cap = default_qubit_cap());

struct PairOverlaps {
  // <Phi'_{k+1}|Phi'_k> and <Phi'_k|Phi''_k>.
  OverlapEstimate numerator;
  OverlapEstimate denominator;
  // Cost of one k-application state.
  ResourceCounters counters;
  unsigned qubits = 0;
};

// Builds Phi'_{k+1} (second flag), Phi'_k (first flag) and Phi''_k (second
// flag), each with k + 1 ancillas, and estimates both overlaps. Shot mode uses
// streams 0 and 1 of `seed` for the numerator and denominator.
PairOverlaps estimate_pair_overlaps(const PipelineContext& ctx, std::uint64_t shots,
                                    std::uint64_t seed);

}  // namespace eigenpower
