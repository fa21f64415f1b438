#include "eigenpower/powerpipe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eigenpower/error.hpp"
#include "eigenpower/random.hpp"

namespace eigenpower {

namespace {

constexpr double kFlagTolerance = 1e-12;

void require_circuit(const PipelineState& s) {
  if (!s.circuit || !s.state) {
    throw Error(ErrorCode::kLayoutMismatch, "circuit pipeline state has no statevector");
  }
}

std::vector<Control> ancillas_zero(const Register& anc, unsigned count) {
  std::vector<Control> controls;
  for (unsigned i = 0; i < count; ++i) controls.push_back(Control{anc.global_qubit(i), false});
  return controls;
}

// Appends one op to the circuit (if any) and bumps the matching counter.
class Recorder {
 public:
  explicit Recorder(PipelineState& s) : s_(s), first_(s.circuit ? s.circuit->ops().size() : 0) {}

  void gate(OpKind kind, const UnitaryList& u, const Register& target,
            std::vector<Control> controls = {}) {
    count(kind);
    if (s_.circuit) s_.circuit->add_gate(kind, u, target, std::move(controls));
  }
  void multiplexed(OpKind kind, const UnitaryList& us, const Register& selector,
                   const Register& target, std::vector<Control> controls = {}) {
    count(kind);
    if (s_.circuit) s_.circuit->add_multiplexed(kind, us, selector, target, std::move(controls));
  }
  void qft(OpKind kind, const Register& target) {
    count(kind);
    if (s_.circuit) s_.circuit->add_qft(kind, target);
  }
  // Runs the newly recorded ops on the statevector.
  void flush() {
    if (s_.circuit) s_.circuit->apply(*s_.state, {}, first_);
  }

 private:
  void count(OpKind kind) {
    auto& c = s_.counters;
    switch (kind) {
      case OpKind::kEvolution: ++c.evolutions; break;
      case OpKind::kInverseEvolution: ++c.inverse_evolutions; break;
      case OpKind::kRotation: ++c.rotations; break;
      case OpKind::kQft:
      case OpKind::kInverseQft: ++c.qft_calls; break;
      case OpKind::kClockPrep: ++c.clock_preparations; break;
      default: break;
    }
  }

  PipelineState& s_;
  std::size_t first_;
};

void compute_clock(Recorder& rec, const PipelineContext& ctx, const RegisterLayout& layout) {
  const Register& clock = layout.at("clock");
  const Register& system = layout.at("system");
  rec.gate(OpKind::kClockPrep, ctx.clock_preparation(), clock);
  rec.multiplexed(OpKind::kEvolution, ctx.forward_evolution(), clock, system);
  rec.qft(OpKind::kQft, clock);
}

void uncompute_clock(Recorder& rec, const PipelineContext& ctx, const RegisterLayout& layout) {
  const Register& clock = layout.at("clock");
  const Register& system = layout.at("system");
  rec.qft(OpKind::kInverseQft, clock);
  rec.multiplexed(OpKind::kInverseEvolution, ctx.inverse_evolution(), clock, system);
  rec.gate(OpKind::kClockUnprep, ctx.clock_unpreparation(), clock);
}

}  // namespace

std::string_view variant_name(Variant v) { return v == Variant::kNaive ? "naive" : "improved"; }

std::string_view backend_name(Backend b) {
  return b == Backend::kCircuit ? "circuit" : "analytic";
}

Variant parse_variant(std::string_view name) {
  if (name == "naive") return Variant::kNaive;
  if (name == "improved") return Variant::kImproved;
  throw Error(ErrorCode::kInvalidConfig, "unknown variant '" + std::string(name) + "'");
}

Backend parse_backend(std::string_view name) {
  if (name == "circuit") return Backend::kCircuit;
  if (name == "analytic") return Backend::kAnalytic;
  throw Error(ErrorCode::kInvalidConfig, "unknown backend '" + std::string(name) + "'");
}

PipelineConfig default_pipeline_config(unsigned k, double bound) {
  PipelineConfig cfg;
  cfg.k = k;
  cfg.c = 1.0 / bound;
  cfg.phase = make_phase_config(6, bound);
  return cfg;
}

void validate(const PipelineConfig& cfg) {
  if (cfg.k == 0) throw Error(ErrorCode::kInvalidConfig, "k must be at least 1");
  validate(cfg.phase);
  if (!(cfg.c > 0.0) || !std::isfinite(cfg.c)) {
    throw Error(ErrorCode::kInvalidConfig, "rotation constant C must be positive");
  }
  if (cfg.c * cfg.phase.bound > 1.0 + 1e-12) {
    throw Error(ErrorCode::kInvalidConfig,
                "C * D = " + std::to_string(cfg.c * cfg.phase.bound) + " exceeds 1");
  }
}

InitialVector draw_initial_vector(std::size_t n, std::uint64_t seed,
                                  const EigenDecomposition& oracle) {
  if (n == 0) throw Error(ErrorCode::kDimensionMismatch, "initial vector needs n >= 1");
  if (oracle.dim() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "oracle dimension differs from n");
  }
  const CVector top = oracle.eigenvector(n - 1);
  for (unsigned attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const std::uint64_t s = seed + attempt;
    Philox4x32 rng(s);
    CVector x(n);
    for (auto& v : x) {
      const double re = rng.normal();
      const double im = rng.normal();
      v = Complex(re, im);
    }
    if (norm2(x) == 0.0) continue;
    x = normalized(x);
    if (std::abs(vdot(top, x)) >= kMinDominantOverlap) {
      return InitialVector{std::move(x), seed, s, attempt};
    }
  }
  throw Error(ErrorCode::kExhaustedRedraws,
              "no initial vector with a dominant overlap above 1e-6 in 64 draws");
}

InitialVector make_initial_vector(std::span<const Complex> x0) {
  return InitialVector{normalized(x0), 0, 0, 0};
}

ComplexMatrix rotation_for_index(std::uint64_t v, const PipelineConfig& cfg) {
  const double a = std::clamp(cfg.c * eigenvalue_of_phase_index(v, cfg.phase), -1.0, 1.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - a * a));
  ComplexMatrix r(2);
  r(0, 0) = a;
  r(0, 1) = -s;
  r(1, 0) = s;
  r(1, 1) = a;
  return r;
}

unsigned flag_value(FlagBit which) { return which == FlagBit::kFirst ? 1u : 2u; }

PipelineContext::PipelineContext(const HermitianMatrix& a, PipelineConfig cfg, InitialVector x0)
    : a_(a), cfg_(std::move(cfg)), x0_(std::move(x0)), oracle_(eigendecompose(a)) {
  validate(cfg_);
  if (x0_.x0.size() != a_.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "x0 length differs from the matrix dimension");
  }
  const double top = std::abs(oracle_.dominant());
  if (!(top < cfg_.phase.bound)) {
    throw Error(ErrorCode::kOutOfBound, "largest |eigenvalue| " + std::to_string(top) +
                                            " is not below D = " +
                                            std::to_string(cfg_.phase.bound));
  }
  system_qubits_ = system_qubits(a_.dim());
  if (cfg_.backend != Backend::kCircuit) return;

  const HermitianMatrix padded = pad_to_system_register(a_);
  const EigenDecomposition padded_eig = eigendecompose(padded);
  CVector x_padded(padded.dim());
  std::copy(x0_.x0.begin(), x0_.x0.end(), x_padded.begin());
  x0_prep_ = make_unitary_list({state_preparation_unitary(x_padded)});
  const ComplexMatrix prep = clock_preparation_unitary(cfg_.phase);
  clock_prep_ = make_unitary_list({prep});
  clock_unprep_ = make_unitary_list({prep.adjoint()});
  evolution_ = make_unitary_list(evolution_unitaries(padded_eig, cfg_.phase, false));
  inverse_evolution_ = make_unitary_list(evolution_unitaries(padded_eig, cfg_.phase, true));
  std::vector<ComplexMatrix> rot;
  for (std::uint64_t v = 0; v < cfg_.phase.clock_dimension(); ++v) {
    rot.push_back(rotation_for_index(v, cfg_));
  }
  rotation_ = make_unitary_list(std::move(rot));
}

RegisterLayout PipelineContext::layout(unsigned ancillas) const {
  RegisterLayout l;
  l.add("system", system_qubits_);
  l.add("clock", cfg_.phase.bits);
  l.add("anc", ancillas);
  l.add("flags", 2);
  return l;
}

PipelineState initial_state(const PipelineContext& ctx, unsigned ancillas) {
  if (ancillas == 0) {
    throw Error(ErrorCode::kInvalidConfig, "pipeline needs at least one rotation ancilla");
  }
  PipelineState s;
  s.backend = ctx.config().backend;
  s.ancillas = ancillas;
  if (s.backend == Backend::kAnalytic) {
    const auto& e = ctx.oracle();
    AnalyticBranch success;
    success.coeffs.resize(e.dim());
    for (std::size_t i = 0; i < e.dim(); ++i) success.coeffs[i] = vdot(e.eigenvector(i), ctx.initial().x0);
    s.branches.push_back(std::move(success));
    return s;
  }
  const RegisterLayout layout = ctx.layout(ancillas);
  const unsigned cap = ctx.config().qubit_cap;
  if (layout.total_qubits() > cap) {
    throw Error(ErrorCode::kCapacityExceeded,
                "circuit needs " + std::to_string(layout.total_qubits()) +
                    " qubits, cap is " + std::to_string(cap));
  }
  s.circuit.emplace(layout);
  s.circuit->add_gate(OpKind::kStatePrep, ctx.x0_preparation(), layout.at("system"));
  s.state = s.circuit->run(cap);
  return s;
}

PipelineState apply_once(PipelineState s, const PipelineContext& ctx) {
  if (s.applied >= s.ancillas) {
    throw Error(ErrorCode::kCapacityExceeded,
                "all " + std::to_string(s.ancillas) + " rotation ancillas are used");
  }
  if (s.flagged) {
    throw Error(ErrorCode::kFlagsAlreadySet, "cannot apply A after the flags are marked");
  }
  const unsigned r = s.applied;
  const auto& cfg = ctx.config();
  const RegisterLayout layout = ctx.layout(s.ancillas);
  Recorder rec(s);
  const bool naive = cfg.variant == Variant::kNaive;
  if (!s.clock_computed) {
    compute_clock(rec, ctx, layout);
    s.clock_computed = true;
  }
  const Register& anc = layout.at("anc");
  rec.multiplexed(OpKind::kRotation, ctx.rotation(), layout.at("clock"), anc.qubit(r),
                  ancillas_zero(anc, r));
  if (naive) {
    uncompute_clock(rec, ctx, layout);
    s.clock_computed = false;
  }
  rec.flush();
  ++s.applied;

  if (s.backend == Backend::kAnalytic) {
    const auto& lambda = ctx.oracle().eigenvalues;
    AnalyticBranch& success = s.branches.front();
    AnalyticBranch garbage{r, 0, CVector(lambda.size())};
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      const double a = std::clamp(cfg.c * lambda[i], -1.0, 1.0);
      garbage.coeffs[i] = success.coeffs[i] * std::sqrt(std::max(0.0, 1.0 - a * a));
      success.coeffs[i] *= a;
    }
    s.branches.push_back(std::move(garbage));
  }
  return s;
}

PipelineState release_clock(PipelineState s, const PipelineContext& ctx) {
  if (!s.clock_computed) return s;
  Recorder rec(s);
  uncompute_clock(rec, ctx, ctx.layout(s.ancillas));
  rec.flush();
  s.clock_computed = false;
  return s;
}

PipelineState build_phi_k(const PipelineContext& ctx, unsigned applications, unsigned ancillas) {
  PipelineState s = initial_state(ctx, ancillas);
  for (unsigned i = 0; i < applications; ++i) s = apply_once(std::move(s), ctx);
  return release_clock(std::move(s), ctx);
}

PipelineState build_phi_k(const PipelineContext& ctx) {
  return build_phi_k(ctx, ctx.config().k, ctx.config().k);
}

PipelineState mark_flags(PipelineState s, const PipelineContext& ctx, FlagBit which) {
  if (s.flagged) throw Error(ErrorCode::kFlagsAlreadySet, "flags were already marked");
  if (s.backend == Backend::kAnalytic) {
    for (auto& b : s.branches) {
      if (b.flags != 0) throw Error(ErrorCode::kFlagsAlreadySet, "a branch is already flagged");
    }
    for (auto& b : s.branches)
      if (b.ancilla) b.flags = flag_value(which);
    s.flagged = true;
    return s;
  }
  require_circuit(s);
  const RegisterLayout layout = ctx.layout(s.ancillas);
  const Register& flags = layout.at("flags");
  const auto amps = s.state->amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & flags.mask()) && std::abs(amps[i]) > kFlagTolerance) {
      throw Error(ErrorCode::kFlagsAlreadySet, "flag qubits are not in |00>");
    }
  }
  const Register target = flags.qubit(which == FlagBit::kFirst ? 0 : 1);
  const UnitaryList x = make_unitary_list({pauli_x()});
  const std::size_t first = s.circuit->ops().size();
  s.circuit->add_gate(OpKind::kFlag, x, target);
  s.circuit->add_gate(OpKind::kFlag, x, target, ancillas_zero(layout.at("anc"), s.ancillas));
  s.circuit->apply(*s.state, {}, first);
  s.flagged = true;
  return s;
}

CVector success_branch(const PipelineState& s, const PipelineContext& ctx) {
  const std::size_t n = ctx.dim();
  if (s.backend == Backend::kAnalytic) {
    const auto& success = s.branches.front();
    CVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
      const CVector e = ctx.oracle().eigenvector(i);
      for (std::size_t r = 0; r < n; ++r) out[r] += success.coeffs[i] * e[r];
    }
    return out;
  }
  require_circuit(s);
  if (s.clock_computed) {
    throw Error(ErrorCode::kInvalidConfig, "release the clock before reading the success branch");
  }
  CVector out(n);
  const auto amps = s.state->amplitudes();
  for (std::size_t r = 0; r < n; ++r) out[r] = amps[r];
  return out;
}

double success_amplitude(const PipelineState& s, const PipelineContext& ctx) {
  return norm2(success_branch(s, ctx));
}

}  // namespace eigenpower
