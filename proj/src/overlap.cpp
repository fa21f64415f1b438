#include "eigenpower/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eigenpower/error.hpp"
#include "eigenpower/random.hpp"

namespace eigenpower {

namespace {

void check_compatible(const PipelineState& a, const PipelineState& b) {
  if (a.backend != b.backend || a.ancillas != b.ancillas) {
    throw Error(ErrorCode::kLayoutMismatch,
                "overlap needs states with the same backend and ancilla count");
  }
}

Complex analytic_overlap(const PipelineState& a, const PipelineState& b) {
  Complex acc{};
  for (const auto& x : a.branches) {
    for (const auto& y : b.branches) {
      if (x.ancilla == y.ancilla && x.flags == y.flags) acc += vdot(x.coeffs, y.coeffs);
    }
  }
  return acc;
}

}  // namespace

OverlapEstimate exact_overlap(const PipelineState& a, const PipelineState& b) {
  check_compatible(a, b);
  OverlapEstimate out;
  if (a.backend == Backend::kAnalytic) {
    out.value = analytic_overlap(a, b);
  } else {
    if (!a.state || !b.state) {
      throw Error(ErrorCode::kLayoutMismatch, "circuit state without amplitudes");
    }
    out.value = inner_product(*a.state, *b.state);
  }
  return out;
}

double hadamard_zero_probability(const Circuit& prep_a, const Circuit& prep_b, Basis basis,
                                 unsigned qubit_cap) {
  if (!(prep_a.layout() == prep_b.layout())) {
    throw Error(ErrorCode::kLayoutMismatch, "Hadamard test preparations use different layouts");
  }
  RegisterLayout layout = prep_a.layout();
  const Register anc = layout.add("hadamard", 1);
  StateVector s = init_zero(layout, qubit_cap);
  const std::vector<Control> none;
  s.apply_gate(hadamard(), anc, none);
  const std::vector<Control> on_zero{{anc.offset, false}};
  const std::vector<Control> on_one{{anc.offset, true}};
  prep_a.apply(s, on_zero);
  prep_b.apply(s, on_one);
  if (basis == Basis::kY) s.apply_gate(phase_gate(-std::numbers::pi / 2.0), anc, none);
  s.apply_gate(hadamard(), anc, none);
  return marginal_probabilities(s, anc)[0];
}

HadamardEstimate sample_hadamard(double p_zero, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw Error(ErrorCode::kInvalidConfig, "Hadamard test needs shots >= 1");
  const double p = std::clamp(p_zero, 0.0, 1.0);
  const std::vector<double> dist{p, 1.0 - p};
  const Histogram h = sample_distribution(dist, shots, seed);
  const auto n0 = h.count(0) ? h.at(0) : 0;
  HadamardEstimate out;
  out.shots = shots;
  out.seed = seed;
  out.estimate = (2.0 * static_cast<double>(n0) - static_cast<double>(shots)) /
                 static_cast<double>(shots);
  out.std_error =
      std::sqrt(std::max(0.0, 1.0 - out.estimate * out.estimate) / static_cast<double>(shots));
  return out;
}

HadamardEstimate hadamard_test(const Circuit& prep_a, const Circuit& prep_b, std::uint64_t shots,
                               Basis basis, std::uint64_t seed, unsigned qubit_cap) {
  if (shots == 0) throw Error(ErrorCode::kInvalidConfig, "Hadamard test needs shots >= 1");
  return sample_hadamard(hadamard_zero_probability(prep_a, prep_b, basis, qubit_cap), shots,
                         seed);
}

OverlapEstimate estimate_overlap(const PipelineState& a, const PipelineState& b,
                                 std::uint64_t shots, std::uint64_t seed, unsigned qubit_cap) {
  check_compatible(a, b);
  if (shots == 0) return exact_overlap(a, b);
  double p_re = 0.0, p_im = 0.0;
  if (a.backend == Backend::kAnalytic) {
    const Complex z = analytic_overlap(a, b);
    p_re = 0.5 * (1.0 + z.real());
    p_im = 0.5 * (1.0 + z.imag());
  } else {
    p_re = hadamard_zero_probability(*a.circuit, *b.circuit, Basis::kX, qubit_cap);
    p_im = hadamard_zero_probability(*a.circuit, *b.circuit, Basis::kY, qubit_cap);
  }
  const auto re = sample_hadamard(p_re, shots, derive_seed(seed, 0));
  const auto im = sample_hadamard(p_im, shots, derive_seed(seed, 1));
  OverlapEstimate out;
  out.value = Complex(re.estimate, im.estimate);
  out.shots = shots;
  out.std_error = re.std_error;
  out.std_error_imag = im.std_error;
  out.seed = seed;
  return out;
}

PairOverlaps estimate_pair_overlaps(const PipelineContext& ctx, std::uint64_t shots,
                                    std::uint64_t seed) {
  const unsigned k = ctx.config().k;
  const unsigned ancillas = k + 1;
  const PipelineState phi_k = build_phi_k(ctx, k, ancillas);
  const PipelineState next =
      mark_flags(build_phi_k(ctx, k + 1, ancillas), ctx, FlagBit::kSecond);
  const PipelineState first = mark_flags(phi_k, ctx, FlagBit::kFirst);
  const PipelineState second = mark_flags(phi_k, ctx, FlagBit::kSecond);

  const unsigned cap = ctx.config().qubit_cap;
  PairOverlaps out;
  out.numerator = estimate_overlap(next, first, shots, derive_seed(seed, 0), cap);
  out.denominator = estimate_overlap(first, second, shots, derive_seed(seed, 1), cap);
  out.counters = phi_k.counters;
  out.qubits = ctx.config().backend == Backend::kCircuit ? ctx.qubits(ancillas) + (shots ? 1 : 0)
                                                        : 0;
  return out;
}

}  // namespace eigenpower
