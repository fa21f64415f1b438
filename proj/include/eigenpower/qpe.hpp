#pragma once

// Phase estimation for Hermitian A with a signed (two's-complement) clock.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "eigenpower/linalg.hpp"
#include "eigenpower/statevector.hpp"

namespace eigenpower {

enum class ClockState { kUniform, kSine };

std::string_view clock_state_name(ClockState c);
// Accepts "uniform" and "sine"; InvalidConfig otherwise.
ClockState parse_clock_state(std::string_view name);

struct PhaseConfig {
  unsigned bits = 6;
  double t0 = 0.0;
  // Spectral bound: every |lambda| < bound.
  double bound = 1.0;
  ClockState clock = ClockState::kUniform;

  std::uint64_t clock_dimension() const { return std::uint64_t{1} << bits; }
};

// t0 defaults to pi / bound.
PhaseConfig make_phase_config(unsigned bits, double bound, std::optional<double> t0 = std::nullopt,
                              ClockState clock = ClockState::kUniform);

// InvalidConfig unless bits >= 2, bound > 0, t0 > 0 and t0 * bound / 2pi <= 1/2.
void validate(const PhaseConfig& cfg);

// Clock amplitudes indexed by tau. Sine: sqrt(2/T) sin(pi (tau + 1/2) / T).
// Uniform: 1/sqrt(T). Any bits >= 1.
CVector clock_amplitudes(unsigned bits, ClockState kind);

// The clock register alone, prepared from |0>.
StateVector prepare_clock_state(const PhaseConfig& cfg);

// Unitary taking |0> to the clock state.
ComplexMatrix clock_preparation_unitary(const PhaseConfig& cfg);

// exp(-i A tau t0) for tau = 0 .. T-1 (sign flipped when `inverse`).
std::vector<ComplexMatrix> evolution_unitaries(const EigenDecomposition& eig,
                                               const PhaseConfig& cfg, bool inverse = false);

// Applies exp(-i A tau t0) to `system` on every clock branch tau. The system
// register must span exactly dim(A) states.
StateVector controlled_evolution(StateVector s, const HermitianMatrix& a, const PhaseConfig& cfg,
                                 const Register& clock, const Register& system);

// round(lambda t0 T / 2pi) mod T. OutOfBound when |lambda| >= bound.
std::uint64_t phase_index_of_eigenvalue(double lambda, const PhaseConfig& cfg);
// Inverse of the above; indices >= T/2 decode to negative values.
double eigenvalue_of_phase_index(std::uint64_t idx, const PhaseConfig& cfg);

// Clock preparation, controlled evolution, then QFT on the clock. `input`
// holds a single "system" register; the result has layout {system, clock}.
StateVector run_qpe(const HermitianMatrix& a, const StateVector& input, const PhaseConfig& cfg);

// Qubits needed to hold a system of dimension n; at least one.
unsigned system_qubits(std::size_t n);
// Zero-pads A to 2^system_qubits(n).
HermitianMatrix pad_to_system_register(const HermitianMatrix& a);

}  // namespace eigenpower
