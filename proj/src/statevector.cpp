#include "eigenpower/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "eigenpower/error.hpp"
#include "eigenpower/matrix_io.hpp"
#include "eigenpower/random.hpp"

namespace eigenpower {

namespace {

constexpr double kNormTolerance = 1e-9;
constexpr double kUnitaryTolerance = 1e-8;

struct ControlPattern {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;

  bool matches(std::uint64_t index) const { return (index & mask) == value; }
};

ControlPattern make_pattern(std::span<const Control> controls, unsigned num_qubits) {
  ControlPattern p;
  for (const auto& c : controls) {
    if (c.qubit >= num_qubits) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "control qubit " + std::to_string(c.qubit) + " outside the state");
    }
    const std::uint64_t bit = std::uint64_t{1} << c.qubit;
    if ((p.mask & bit) && (((p.value & bit) != 0) != c.value)) {
      throw Error(ErrorCode::kOverlappingRegisters, "contradictory controls on one qubit");
    }
    p.mask |= bit;
    if (c.value) p.value |= bit;
  }
  return p;
}

void check_register(const Register& r, unsigned num_qubits) {
  if (r.width == 0 || r.offset + r.width > num_qubits) {
    throw Error(ErrorCode::kDimensionMismatch,
                "register '" + r.name + "' does not fit in a " + std::to_string(num_qubits) +
                    "-qubit state");
  }
}

void check_disjoint(std::uint64_t a, std::uint64_t b, const char* what) {
  if (a & b) throw Error(ErrorCode::kOverlappingRegisters, what);
}

void check_gate(const ComplexMatrix& u, const Register& target) {
  if (u.dim() != target.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "gate of dimension " + std::to_string(u.dim()) + " on register '" +
                    target.name + "' of dimension " + std::to_string(target.dimension()));
  }
  const double residual = unitarity_residual(u);
  if (!(residual <= kUnitaryTolerance)) {
    throw Error(ErrorCode::kNotUnitary,
                "gate is not unitary (residual " + std::to_string(residual) + ")");
  }
}

}  // namespace

unsigned default_qubit_cap() {
  if (const char* env = std::getenv("EIGENPOWER_QUBIT_CAP")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0 && value <= 40) return static_cast<unsigned>(value);
  }
  return kDefaultQubitCap;
}

Register Register::qubit(unsigned i) const {
  if (i >= width) {
    throw Error(ErrorCode::kDimensionMismatch,
                "qubit " + std::to_string(i) + " outside register '" + name + "'");
  }
  return Register{name + "[" + std::to_string(i) + "]", offset + i, 1};
}

std::uint64_t Register::mask() const { return ((std::uint64_t{1} << width) - 1) << offset; }

const Register& RegisterLayout::add(std::string name, unsigned width) {
  if (width == 0) throw Error(ErrorCode::kDimensionMismatch, "register '" + name + "' is empty");
  if (contains(name)) {
    throw Error(ErrorCode::kOverlappingRegisters, "duplicate register name '" + name + "'");
  }
  registers_.push_back(Register{std::move(name), total_, width});
  total_ += width;
  return registers_.back();
}

const Register& RegisterLayout::at(std::string_view name) const {
  for (const auto& r : registers_)
    if (r.name == name) return r;
  throw Error(ErrorCode::kLayoutMismatch, "no register named '" + std::string(name) + "'");
}

bool RegisterLayout::contains(std::string_view name) const {
  return std::any_of(registers_.begin(), registers_.end(),
                     [&](const Register& r) { return r.name == name; });
}

StateVector::StateVector(RegisterLayout layout, CVector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != (std::uint64_t{1} << layout_.total_qubits())) {
    throw Error(ErrorCode::kDimensionMismatch, "amplitude count does not match the layout");
  }
  if (std::abs(norm() - 1.0) > kNormTolerance) {
    throw Error(ErrorCode::kZeroVector, "state is not normalized (norm " +
                                            std::to_string(norm()) + ")");
  }
}

void StateVector::apply_gate(const ComplexMatrix& u, const Register& target,
                             std::span<const Control> controls) {
  const ControlPattern pattern = make_pattern(controls, num_qubits());
  const std::uint64_t tmask = target.mask();
  const std::uint64_t d = target.dimension();
  std::vector<Complex> in(d), out(d);
  for (std::uint64_t base = 0; base < amplitudes_.size(); ++base) {
    if ((base & tmask) || !pattern.matches(base)) continue;
    for (std::uint64_t j = 0; j < d; ++j) in[j] = amplitudes_[base | (j << target.offset)];
    for (std::uint64_t r = 0; r < d; ++r) {
      Complex acc{};
      for (std::uint64_t c = 0; c < d; ++c) acc += u(r, c) * in[c];
      out[r] = acc;
    }
    for (std::uint64_t j = 0; j < d; ++j) amplitudes_[base | (j << target.offset)] = out[j];
  }
}

void StateVector::apply_multiplexed(std::span<const ComplexMatrix> unitaries,
                                    const Register& selector, const Register& target,
                                    std::span<const Control> controls) {
  const ControlPattern pattern = make_pattern(controls, num_qubits());
  const std::uint64_t tmask = target.mask();
  const std::uint64_t d = target.dimension();
  const std::uint64_t sel_bits = selector.dimension() - 1;
  std::vector<Complex> in(d), out(d);
  for (std::uint64_t base = 0; base < amplitudes_.size(); ++base) {
    if ((base & tmask) || !pattern.matches(base)) continue;
    const ComplexMatrix& u = unitaries[(base >> selector.offset) & sel_bits];
    for (std::uint64_t j = 0; j < d; ++j) in[j] = amplitudes_[base | (j << target.offset)];
    for (std::uint64_t r = 0; r < d; ++r) {
      Complex acc{};
      for (std::uint64_t c = 0; c < d; ++c) acc += u(r, c) * in[c];
      out[r] = acc;
    }
    for (std::uint64_t j = 0; j < d; ++j) amplitudes_[base | (j << target.offset)] = out[j];
  }
}

void StateVector::apply_phase(std::uint64_t ones_mask, Complex phase,
                              std::span<const Control> controls) {
  const ControlPattern pattern = make_pattern(controls, num_qubits());
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & ones_mask) == ones_mask && pattern.matches(i)) amplitudes_[i] *= phase;
  }
}

void StateVector::apply_swap(unsigned qubit_a, unsigned qubit_b,
                             std::span<const Control> controls) {
  if (qubit_a == qubit_b) return;
  const ControlPattern pattern = make_pattern(controls, num_qubits());
  const std::uint64_t a = std::uint64_t{1} << qubit_a;
  const std::uint64_t b = std::uint64_t{1} << qubit_b;
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & a) && !(i & b) && pattern.matches(i)) {
      std::swap(amplitudes_[i], amplitudes_[(i & ~a) | b]);
    }
  }
}

void StateVector::apply_qft(const Register& target, bool inverse,
                            std::span<const Control> controls) {
  const ComplexMatrix h = hadamard();
  const unsigned b = target.width;
  auto controlled_phase = [&](unsigned ctrl, unsigned tgt, double angle) {
    const std::uint64_t ones = (std::uint64_t{1} << target.global_qubit(ctrl)) |
                               (std::uint64_t{1} << target.global_qubit(tgt));
    apply_phase(ones, std::polar(1.0, angle), controls);
  };
  auto reverse_bits = [&] {
    for (unsigned i = 0; i < b / 2; ++i) {
      apply_swap(target.global_qubit(i), target.global_qubit(b - 1 - i), controls);
    }
  };

  // After the block for qubit m it holds output bit (b - 1 - m); the final
  // swaps restore little-endian order.
  if (!inverse) {
    for (unsigned m = b; m-- > 0;) {
      apply_gate(h, target.qubit(m), controls);
      for (unsigned c = m; c-- > 0;) {
        controlled_phase(c, m, std::numbers::pi / static_cast<double>(std::uint64_t{1} << (m - c)));
      }
    }
    reverse_bits();
  } else {
    reverse_bits();
    for (unsigned m = 0; m < b; ++m) {
      for (unsigned c = 0; c < m; ++c) {
        controlled_phase(c, m, -std::numbers::pi / static_cast<double>(std::uint64_t{1} << (m - c)));
      }
      apply_gate(h, target.qubit(m), controls);
    }
  }
}

StateVector StateVector::extended(const RegisterLayout& wider) const {
  const auto& mine = layout_.registers();
  const auto& theirs = wider.registers();
  if (theirs.size() < mine.size() || !std::equal(mine.begin(), mine.end(), theirs.begin())) {
    throw Error(ErrorCode::kLayoutMismatch, "extended layout must keep the existing registers");
  }
  CVector amps(std::uint64_t{1} << wider.total_qubits());
  std::copy(amplitudes_.begin(), amplitudes_.end(), amps.begin());
  return StateVector(wider, std::move(amps));
}

StateVector init_zero(const RegisterLayout& layout, unsigned qubit_cap) {
  if (layout.total_qubits() > qubit_cap) {
    throw Error(ErrorCode::kTooManyQubits,
                std::to_string(layout.total_qubits()) + " qubits exceed the cap of " +
                    std::to_string(qubit_cap));
  }
  CVector amps(std::uint64_t{1} << layout.total_qubits());
  amps[0] = 1.0;
  return StateVector(layout, std::move(amps));
}

StateVector apply_unitary(StateVector s, const ComplexMatrix& u, const Register& target) {
  return apply_controlled_unitary(std::move(s), u, target, {});
}

StateVector apply_controlled_unitary(StateVector s, const ComplexMatrix& u, const Register& target,
                                     std::span<const Control> controls) {
  check_register(target, s.num_qubits());
  check_gate(u, target);
  const ControlPattern pattern = make_pattern(controls, s.num_qubits());
  check_disjoint(pattern.mask, target.mask(), "control qubit inside the target register");
  s.apply_gate(u, target, controls);
  return s;
}

StateVector apply_multiplexed_unitary(StateVector s, std::span<const ComplexMatrix> unitaries,
                                      const Register& selector, const Register& target,
                                      std::span<const Control> controls) {
  check_register(target, s.num_qubits());
  check_register(selector, s.num_qubits());
  check_disjoint(selector.mask(), target.mask(), "selector overlaps the target register");
  const ControlPattern pattern = make_pattern(controls, s.num_qubits());
  check_disjoint(pattern.mask, target.mask(), "control qubit inside the target register");
  check_disjoint(pattern.mask, selector.mask(), "control qubit inside the selector register");
  if (unitaries.size() != selector.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "need one unitary per selector value");
  }
  for (const auto& u : unitaries) check_gate(u, target);
  s.apply_multiplexed(unitaries, selector, target, controls);
  return s;
}

StateVector qft(StateVector s, const Register& target, bool inverse) {
  check_register(target, s.num_qubits());
  s.apply_qft(target, inverse, {});
  return s;
}

std::vector<double> marginal_probabilities(const StateVector& s, const Register& target) {
  check_register(target, s.num_qubits());
  std::vector<double> probs(target.dimension());
  const std::uint64_t sel = target.dimension() - 1;
  const auto amps = s.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    probs[(i >> target.offset) & sel] += std::norm(amps[i]);
  }
  return probs;
}

Histogram sample_distribution(std::span<const double> probabilities, std::uint64_t shots,
                              std::uint64_t seed) {
  std::vector<double> cumulative(probabilities.size());
  double total = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    total += probabilities[i];
    cumulative[i] = total;
  }
  Histogram histogram;
  Philox4x32 rng(seed);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    // Skip zero-probability outcomes that share a cumulative value.
    while (probabilities[static_cast<std::size_t>(it - cumulative.begin())] == 0.0 &&
           it != cumulative.begin()) {
      --it;
    }
    ++histogram[static_cast<std::uint64_t>(it - cumulative.begin())];
  }
  return histogram;
}

Histogram measure_register(const StateVector& s, const Register& target, std::uint64_t shots,
                           std::uint64_t seed) {
  if (shots == 0) throw Error(ErrorCode::kInvalidConfig, "shots must be at least 1");
  return sample_distribution(marginal_probabilities(s, target), shots, seed);
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (!(a.layout() == b.layout())) {
    throw Error(ErrorCode::kLayoutMismatch, "inner product of states with different layouts");
  }
  return vdot(a.amplitudes(), b.amplitudes());
}

std::string dump_state_json(const StateVector& s) {
  std::string out = "{\"q\": " + std::to_string(s.num_qubits()) + ", \"amps\": [";
  bool first = true;
  for (const auto& a : s.amplitudes()) {
    if (!first) out += ", ";
    first = false;
    out += "[" + format_double(a.real()) + ", " + format_double(a.imag()) + "]";
  }
  out += "]}\n";
  return out;
}

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }

ComplexMatrix hadamard() {
  const double r = std::numbers::sqrt2 / 2.0;
  return ComplexMatrix(2, {r, r, r, -r});
}

ComplexMatrix phase_gate(double angle) {
  return ComplexMatrix(2, {1.0, 0.0, 0.0, std::polar(1.0, angle)});
}

ComplexMatrix state_preparation_unitary(std::span<const Complex> v) {
  const std::size_t n = v.size();
  if (std::abs(norm2(v) - 1.0) > 1e-12) {
    throw Error(ErrorCode::kZeroVector, "state preparation needs a unit vector");
  }
  // H = I - 2 w w^dagger / |w|^2 with w = e0 - y and y = e^{-i phi} v, so that
  // H e0 = y; then U = e^{i phi} H.
  const Complex phase = std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : Complex{1.0};
  CVector y(v.begin(), v.end());
  for (auto& x : y) x *= std::conj(phase);
  y[0] = std::abs(v[0]);
  CVector w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = -y[i];
  w[0] += 1.0;
  const double wnorm2 = std::pow(norm2(w), 2);
  ComplexMatrix u = ComplexMatrix::identity(n);
  if (wnorm2 > 1e-30) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) u(i, j) -= 2.0 * w[i] * std::conj(w[j]) / wnorm2;
  }
  return u.scaled(phase);
}

}  // namespace eigenpower
