#include <cmath>
#include <numbers>

#include "doctest.h"
#include "eigenpower/error.hpp"
#include "eigenpower/qpe.hpp"
#include "test_support.hpp"

using namespace eigenpower;
using eigenpower::testing::random_state;
using eigenpower::testing::with_spectrum;

namespace {

constexpr double kPi = std::numbers::pi;

template <typename F>
ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an eigenpower::Error");
  return ErrorCode::kIoError;
}

StateVector system_state(const CVector& v) {
  RegisterLayout l;
  unsigned q = 0;
  while ((std::size_t{1} << q) < v.size()) ++q;
  l.add("system", q);
  return StateVector(l, v);
}

std::vector<double> clock_distribution(const StateVector& s) {
  return marginal_probabilities(s, s.layout().at("clock"));
}

// One grid step of the phase window.
double step(const PhaseConfig& cfg) { return 2.0 * kPi / (cfg.t0 * cfg.clock_dimension()); }

// Probability on the two indices around the exact phase position.
double two_nearest_mass(double lambda, unsigned bits, double bound) {
  const auto cfg = make_phase_config(bits, bound);
  const std::vector<double> d{lambda, 0.0};
  const auto a = validate_hermitian(ComplexMatrix::diagonal(d));
  const auto p = clock_distribution(run_qpe(a, system_state({1.0, 0.0}), cfg));
  const double t = static_cast<double>(cfg.clock_dimension());
  const double x = std::fmod(lambda * cfg.t0 * t / (2.0 * kPi) + t, t);
  const auto lo = static_cast<std::uint64_t>(std::floor(x)) % cfg.clock_dimension();
  const auto hi = (lo + 1) % cfg.clock_dimension();
  return p[lo] + p[hi];
}

}  // namespace

TEST_CASE("phase config validation") {
  const auto cfg = make_phase_config(6, 8.0);
  CHECK(cfg.t0 == doctest::Approx(kPi / 8.0));
  CHECK(cfg.clock_dimension() == 64);
  CHECK(code_of([] { make_phase_config(1, 1.0); }) == ErrorCode::kInvalidConfig);
  CHECK(code_of([] { make_phase_config(4, 1.0, 4.0); }) == ErrorCode::kInvalidConfig);
  CHECK_NOTHROW(make_phase_config(4, 1.0, kPi));
  CHECK(parse_clock_state("sine") == ClockState::kSine);
  CHECK(code_of([] { parse_clock_state("square"); }) == ErrorCode::kInvalidConfig);
}

TEST_CASE("sine clock amplitudes") {
  const CVector one = clock_amplitudes(1, ClockState::kSine);
  CHECK(std::abs(one[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(one[1] - 1.0 / std::sqrt(2.0)) < 1e-15);

  for (unsigned b = 1; b <= 10; ++b) {
    for (auto kind : {ClockState::kSine, ClockState::kUniform}) {
      CHECK(std::abs(norm2(clock_amplitudes(b, kind)) - 1.0) < 1e-12);
    }
  }

  const CVector three = clock_amplitudes(3, ClockState::kSine);
  for (int tau = 0; tau < 8; ++tau) {
    const double want = std::sqrt(2.0 / 8.0) * std::sin(kPi * (tau + 0.5) / 8.0);
    CHECK(std::abs(three[tau] - want) < 1e-15);
  }

  const auto cfg = make_phase_config(3, 1.0, std::nullopt, ClockState::kSine);
  const auto s = prepare_clock_state(cfg);
  for (int tau = 0; tau < 8; ++tau) CHECK(std::abs(s.amplitudes()[tau] - three[tau]) < 1e-15);
}

TEST_CASE("controlled evolution") {
  const auto cfg = make_phase_config(3, 4.0);
  RegisterLayout l;
  const Register system = l.add("system", 1);
  const Register clock = l.add("clock", 3);

  SUBCASE("tau = 0 branch is unchanged") {
    const CVector psi = random_state(16, 3);
    const auto a = with_spectrum({1.3, -0.4}, 2);
    const auto out = controlled_evolution(StateVector(l, psi), a, cfg, clock, system);
    CHECK(out.amplitudes()[0] == psi[0]);
    CHECK(out.amplitudes()[1] == psi[1]);
  }
  SUBCASE("A = 0 leaves the state unchanged") {
    const CVector psi = random_state(16, 4);
    const auto zero = validate_hermitian(ComplexMatrix(2));
    const auto out = controlled_evolution(StateVector(l, psi), zero, cfg, clock, system);
    for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(out.amplitudes()[i] - psi[i]) < 1e-15);
  }
  SUBCASE("eigenstate picks up exp(-i lambda tau t0) on branch tau") {
    const double lambda = 1.7;
    const std::vector<double> d{lambda, -0.3};
    const auto a = validate_hermitian(ComplexMatrix::diagonal(d));
    CVector psi(16);
    for (std::uint64_t tau = 0; tau < 8; ++tau) psi[tau << 1] = 1.0 / std::sqrt(8.0);
    const auto out = controlled_evolution(StateVector(l, psi), a, cfg, clock, system);
    for (std::uint64_t tau = 0; tau < 8; ++tau) {
      const Complex want = std::polar(1.0 / std::sqrt(8.0), -lambda * double(tau) * cfg.t0);
      CHECK(std::abs(out.amplitudes()[tau << 1] - want) < 1e-14);
    }
  }
  SUBCASE("system register must match A") {
    CHECK(code_of([&] {
            controlled_evolution(init_zero(l), validate_hermitian(ComplexMatrix::identity(4)), cfg,
                                 clock, system);
          }) == ErrorCode::kDimensionMismatch);
  }
}

TEST_CASE("phase index encoding") {
  const auto cfg = make_phase_config(4, 2.0);
  CHECK(phase_index_of_eigenvalue(0.0, cfg) == 0);
  CHECK(phase_index_of_eigenvalue(5 * step(cfg) * (1.0 - 1e-15), cfg) == 5);
  CHECK(phase_index_of_eigenvalue(-3 * step(cfg), cfg) == 13);
  CHECK(eigenvalue_of_phase_index(0, cfg) == 0.0);
  CHECK(eigenvalue_of_phase_index(13, cfg) == doctest::Approx(-3 * 2 * kPi / (cfg.t0 * 16)));
  CHECK(code_of([&] { phase_index_of_eigenvalue(2.0, cfg); }) == ErrorCode::kOutOfBound);
  for (std::uint64_t idx = 0; idx < 16; ++idx) {
    const double lambda = eigenvalue_of_phase_index(idx, cfg);
    if (std::abs(lambda) < cfg.bound) CHECK(phase_index_of_eigenvalue(lambda, cfg) == idx);
  }
  // The most negative index sits exactly on the bound for t0 = pi / D.
  CHECK(eigenvalue_of_phase_index(8, cfg) == doctest::Approx(-2.0));
}

TEST_CASE("qpe on a representable eigenvector") {
  const auto cfg = make_phase_config(6, 8.0);
  const double lambda = 11 * step(cfg);
  const auto a = with_spectrum({lambda, -7 * step(cfg)}, 5);
  const auto e = eigendecompose(a);
  const auto out = run_qpe(a, system_state(e.eigenvector(1)), cfg);
  CHECK(std::abs(out.norm() - 1.0) < 1e-9);
  const auto p = clock_distribution(out);
  CHECK(p[11] >= 0.99);
  CHECK(p[11] == doctest::Approx(1.0).epsilon(1e-12));

  const auto low = clock_distribution(run_qpe(a, system_state(e.eigenvector(0)), cfg));
  CHECK(low[64 - 7] >= 0.99);
}

TEST_CASE("qpe with A = 0 lands on index 0") {
  const auto cfg = make_phase_config(6, 1.0);
  const auto zero = validate_hermitian(ComplexMatrix(4));
  const auto p = clock_distribution(run_qpe(zero, system_state(random_state(4, 2)), cfg));
  CHECK(p[0] >= 0.99);
}

TEST_CASE("qpe splits an equal superposition between two eigenphases") {
  const auto cfg = make_phase_config(6, 8.0);
  const auto a = with_spectrum({3 * step(cfg), -20 * step(cfg)}, 8);
  const auto e = eigendecompose(a);
  CVector psi(2);
  for (std::size_t r = 0; r < 2; ++r)
    psi[r] = (e.eigenvectors(r, 0) + e.eigenvectors(r, 1)) / std::sqrt(2.0);
  const auto p = clock_distribution(run_qpe(a, system_state(psi), cfg));
  CHECK(p[3] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(p[64 - 20] == doctest::Approx(0.5).epsilon(1e-9));

  // Shot sampling of the same clock register.
  const auto out = run_qpe(a, system_state(psi), cfg);
  const auto hist = measure_register(out, out.layout().at("clock"), 4000, 17);
  const double f = hist.at(3) / 4000.0;
  CHECK(f > 0.45);
  CHECK(f < 0.55);
}

TEST_CASE("distinct eigenvectors get disjoint dominant clock indices") {
  const auto cfg = make_phase_config(6, 4.0);
  const std::vector<int> idx{-9, 2, 5, 30};
  std::vector<double> spectrum;
  for (int i : idx) spectrum.push_back(i * step(cfg));
  const auto a = with_spectrum(spectrum, 13);
  const auto e = eigendecompose(a);
  std::vector<std::uint64_t> peaks;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto p = clock_distribution(run_qpe(a, system_state(e.eigenvector(i)), cfg));
    const auto peak = static_cast<std::uint64_t>(std::max_element(p.begin(), p.end()) - p.begin());
    CHECK(p[peak] >= 0.99);
    CHECK(peak == phase_index_of_eigenvalue(e.eigenvalues[i], cfg));
    peaks.push_back(peak);
  }
  std::sort(peaks.begin(), peaks.end());
  CHECK(std::unique(peaks.begin(), peaks.end()) == peaks.end());
}

TEST_CASE("sine clock leakage at b = 6") {
  // Measured with an independent numpy evaluation of the same circuit.
  const auto cfg = make_phase_config(6, 8.0, std::nullopt, ClockState::kSine);
  const std::vector<double> d{11 * step(cfg), 0.0};
  const auto a = validate_hermitian(ComplexMatrix::diagonal(d));
  const auto p = clock_distribution(run_qpe(a, system_state({1.0, 0.0}), cfg));
  CHECK(p[11] == doctest::Approx(0.81073).epsilon(1e-4));
  CHECK(p[10] == doctest::Approx(0.09001).epsilon(1e-3));
  CHECK(p[12] == doctest::Approx(0.09001).epsilon(1e-3));
  double total = 0.0;
  for (double x : p) total += x;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-nearest mass does not drop as the clock grows") {
  // 5/64 of the window: off-grid at b = 4, on-grid at b = 6 and 8.
  const double bound = 1.0;
  const double lambda = 2.0 * (5.0 / 64.0);
  const double m4 = two_nearest_mass(lambda, 4, bound);
  const double m6 = two_nearest_mass(lambda, 6, bound);
  const double m8 = two_nearest_mass(lambda, 8, bound);
  CHECK(m4 < 0.999);
  CHECK(m4 <= m6);
  CHECK(m6 <= m8 + 1e-12);

  // 3/70 of the window is off-grid at every b.
  const double off = 2.0 * (3.0 / 70.0);
  const double o4 = two_nearest_mass(off, 4, bound);
  const double o6 = two_nearest_mass(off, 6, bound);
  const double o8 = two_nearest_mass(off, 8, bound);
  CHECK(o4 == doctest::Approx(0.86637).epsilon(1e-4));
  CHECK(o4 <= o6);
  CHECK(o6 <= o8);
}

TEST_CASE("system padding") {
  CHECK(system_qubits(1) == 1);
  CHECK(system_qubits(2) == 1);
  CHECK(system_qubits(3) == 2);
  CHECK(system_qubits(8) == 3);
  const auto a = validate_hermitian(ComplexMatrix::identity(3));
  const auto p = pad_to_system_register(a);
  CHECK(p.dim() == 4);
  CHECK(p.matrix()(3, 3) == Complex(0.0));
}
