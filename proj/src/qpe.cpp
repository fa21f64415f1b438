#include "eigenpower/qpe.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "eigenpower/error.hpp"

namespace eigenpower {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

std::string_view clock_state_name(ClockState c) {
  return c == ClockState::kSine ? "sine" : "uniform";
}

ClockState parse_clock_state(std::string_view name) {
  if (name == "uniform") return ClockState::kUniform;
  if (name == "sine") return ClockState::kSine;
  throw Error(ErrorCode::kInvalidConfig, "unknown clock state '" + std::string(name) + "'");
}

PhaseConfig make_phase_config(unsigned bits, double bound, std::optional<double> t0,
                              ClockState clock) {
  PhaseConfig cfg;
  cfg.bits = bits;
  cfg.bound = bound;
  cfg.t0 = t0.value_or(std::numbers::pi / bound);
  cfg.clock = clock;
  validate(cfg);
  return cfg;
}

void validate(const PhaseConfig& cfg) {
  if (cfg.bits < 2 || cfg.bits > 20) {
    throw Error(ErrorCode::kInvalidConfig,
                "phase register needs 2..20 qubits, got " + std::to_string(cfg.bits));
  }
  if (!(cfg.bound > 0.0) || !std::isfinite(cfg.bound)) {
    throw Error(ErrorCode::kInvalidConfig, "spectral bound D must be positive");
  }
  if (!(cfg.t0 > 0.0) || !std::isfinite(cfg.t0)) {
    throw Error(ErrorCode::kInvalidConfig, "t0 must be positive");
  }
  if (cfg.t0 * cfg.bound / kTwoPi > 0.5 * (1.0 + 1e-12)) {
    throw Error(ErrorCode::kInvalidConfig,
                "t0 * D / 2pi = " + std::to_string(cfg.t0 * cfg.bound / kTwoPi) +
                    " exceeds 1/2; signed eigenvalues would wrap around");
  }
}

CVector clock_amplitudes(unsigned bits, ClockState kind) {
  if (bits == 0) throw Error(ErrorCode::kInvalidConfig, "clock register needs a qubit");
  const std::uint64_t t = std::uint64_t{1} << bits;
  const double td = static_cast<double>(t);
  CVector amps(t);
  for (std::uint64_t tau = 0; tau < t; ++tau) {
    amps[tau] = kind == ClockState::kSine
                    ? std::sqrt(2.0 / td) * std::sin(std::numbers::pi * (tau + 0.5) / td)
                    : 1.0 / std::sqrt(td);
  }
  return amps;
}

ComplexMatrix clock_preparation_unitary(const PhaseConfig& cfg) {
  return state_preparation_unitary(clock_amplitudes(cfg.bits, cfg.clock));
}

StateVector prepare_clock_state(const PhaseConfig& cfg) {
  RegisterLayout layout;
  layout.add("clock", cfg.bits);
  return StateVector(layout, clock_amplitudes(cfg.bits, cfg.clock));
}

std::vector<ComplexMatrix> evolution_unitaries(const EigenDecomposition& eig,
                                               const PhaseConfig& cfg, bool inverse) {
  std::vector<ComplexMatrix> out;
  out.reserve(cfg.clock_dimension());
  const double sign = inverse ? -1.0 : 1.0;
  for (std::uint64_t tau = 0; tau < cfg.clock_dimension(); ++tau) {
    out.push_back(matrix_exponential_unitary(eig, sign * static_cast<double>(tau) * cfg.t0));
  }
  return out;
}

StateVector controlled_evolution(StateVector s, const HermitianMatrix& a, const PhaseConfig& cfg,
                                 const Register& clock, const Register& system) {
  if (system.dimension() != a.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "system register holds " + std::to_string(system.dimension()) +
                    " states but A has dimension " + std::to_string(a.dim()));
  }
  if (clock.width != cfg.bits) {
    throw Error(ErrorCode::kDimensionMismatch, "clock register width differs from the config");
  }
  const auto us = evolution_unitaries(eigendecompose(a), cfg);
  return apply_multiplexed_unitary(std::move(s), us, clock, system);
}

std::uint64_t phase_index_of_eigenvalue(double lambda, const PhaseConfig& cfg) {
  if (!(std::abs(lambda) < cfg.bound)) {
    throw Error(ErrorCode::kOutOfBound, "eigenvalue " + std::to_string(lambda) +
                                            " is outside the bound " +
                                            std::to_string(cfg.bound));
  }
  const auto t = static_cast<std::int64_t>(cfg.clock_dimension());
  const auto raw = static_cast<std::int64_t>(
      std::llround(lambda * cfg.t0 * static_cast<double>(t) / kTwoPi));
  return static_cast<std::uint64_t>(((raw % t) + t) % t);
}

double eigenvalue_of_phase_index(std::uint64_t idx, const PhaseConfig& cfg) {
  const std::uint64_t t = cfg.clock_dimension();
  if (idx >= t) {
    throw Error(ErrorCode::kOutOfBound, "phase index outside the clock register");
  }
  const double signed_idx = idx < t / 2 ? static_cast<double>(idx)
                                        : static_cast<double>(idx) - static_cast<double>(t);
  return kTwoPi * signed_idx / (cfg.t0 * static_cast<double>(t));
}

StateVector run_qpe(const HermitianMatrix& a, const StateVector& input, const PhaseConfig& cfg) {
  validate(cfg);
  const auto& in_regs = input.layout().registers();
  if (in_regs.size() != 1) {
    throw Error(ErrorCode::kLayoutMismatch, "run_qpe expects a single system register");
  }
  RegisterLayout layout = input.layout();
  const Register system = in_regs.front();
  const Register clock = layout.add("clock", cfg.bits);
  StateVector s = input.extended(layout);
  s = apply_unitary(std::move(s), clock_preparation_unitary(cfg), clock);
  s = controlled_evolution(std::move(s), a, cfg, clock, system);
  return qft(std::move(s), clock, false);
}

unsigned system_qubits(std::size_t n) {
  unsigned q = 1;
  while ((std::size_t{1} << q) < n) ++q;
  return q;
}

HermitianMatrix pad_to_system_register(const HermitianMatrix& a) {
  const std::size_t padded = std::size_t{1} << system_qubits(a.dim());
  if (padded == a.dim()) return a;
  ComplexMatrix out(padded);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = a.matrix()(i, j);
  return validate_hermitian(out, a.hermiticity_tol());
}

}  // namespace eigenpower
