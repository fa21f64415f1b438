#pragma once

// Dense statevector simulation.
//
// Amplitudes are a flat array indexed by computational basis state. Registers
// are contiguous qubit ranges; register 0 occupies the least significant bits
// and a register's value is read little-endian from its qubits.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eigenpower/linalg.hpp"

namespace eigenpower {

inline constexpr unsigned kDefaultQubitCap = 26;

// 26, or the value of EIGENPOWER_QUBIT_CAP when set to a positive integer.
unsigned default_qubit_cap();

struct Register {
  std::string name;
  unsigned offset = 0;
  unsigned width = 0;

  // The single-qubit register for qubit `i` of this register.
  Register qubit(unsigned i) const;
  std::uint64_t mask() const;
  std::uint64_t dimension() const { return std::uint64_t{1} << width; }
  unsigned global_qubit(unsigned i) const { return offset + i; }

  bool operator==(const Register&) const = default;
};

class RegisterLayout {
 public:
  // Appends a register above every existing one.
  const Register& add(std::string name, unsigned width);
  const Register& at(std::string_view name) const;
  bool contains(std::string_view name) const;

  unsigned total_qubits() const { return total_; }
  const std::vector<Register>& registers() const { return registers_; }

  bool operator==(const RegisterLayout&) const = default;

 private:
  std::vector<Register> registers_;
  unsigned total_ = 0;
};

// A control on one global qubit; `value` is the bit it must hold (false for
// an anti-control).
struct Control {
  unsigned qubit = 0;
  bool value = true;
};

class StateVector {
 public:
  // Requires a unit-norm amplitude vector of length 2^q (within 1e-9).
  StateVector(RegisterLayout layout, CVector amplitudes);

  const RegisterLayout& layout() const { return layout_; }
  unsigned num_qubits() const { return layout_.total_qubits(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  double norm() const { return norm2(amplitudes_); }

  // Unchecked in-place kernels; the free functions below validate first.
  void apply_gate(const ComplexMatrix& u, const Register& target,
                  std::span<const Control> controls);
  void apply_multiplexed(std::span<const ComplexMatrix> unitaries, const Register& selector,
                         const Register& target, std::span<const Control> controls);
  void apply_phase(std::uint64_t ones_mask, Complex phase, std::span<const Control> controls);
  void apply_swap(unsigned qubit_a, unsigned qubit_b, std::span<const Control> controls);
  void apply_qft(const Register& target, bool inverse, std::span<const Control> controls);

  // Rebinds the same amplitudes to a layout with extra registers on top;
  // new qubits start in |0>.
  StateVector extended(const RegisterLayout& wider) const;

 private:
  RegisterLayout layout_;
  CVector amplitudes_;
};

StateVector init_zero(const RegisterLayout& layout, unsigned qubit_cap = default_qubit_cap());

// u must be 2^width x 2^width and unitary within 1e-8.
StateVector apply_unitary(StateVector s, const ComplexMatrix& u, const Register& target);
StateVector apply_controlled_unitary(StateVector s, const ComplexMatrix& u, const Register& target,
                                     std::span<const Control> controls);
// Applies unitaries[v] to `target` on the branch where `selector` holds v.
StateVector apply_multiplexed_unitary(StateVector s, std::span<const ComplexMatrix> unitaries,
                                      const Register& selector, const Register& target,
                                      std::span<const Control> controls = {});

// QFT|j> = T^{-1/2} sum_k exp(2 pi i j k / T) |k>, built from H, controlled
// phases and swaps.
StateVector qft(StateVector s, const Register& target, bool inverse);

// Marginal distribution of `target`, indexed by register value.
std::vector<double> marginal_probabilities(const StateVector& s, const Register& target);

using Histogram = std::map<std::uint64_t, std::uint64_t>;
Histogram measure_register(const StateVector& s, const Register& target, std::uint64_t shots,
                           std::uint64_t seed);
// Draws `shots` outcomes from an explicit distribution (same sampler as above).
Histogram sample_distribution(std::span<const double> probabilities, std::uint64_t shots,
                              std::uint64_t seed);

Complex inner_product(const StateVector& a, const StateVector& b);

// Debug dump: {"q": int, "amps": [[re, im], ...]}.
std::string dump_state_json(const StateVector& s);

// Common single-qubit gates.
ComplexMatrix pauli_x();
ComplexMatrix hadamard();
ComplexMatrix phase_gate(double angle);

// Unitary whose first column is `v` (unit norm); a phase-adjusted Householder
// reflection. Used to load x0 and the clock state from |0>.
ComplexMatrix state_preparation_unitary(std::span<const Complex> v);

}  // namespace eigenpower
