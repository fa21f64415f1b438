#include "eigenpower/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <tuple>

#include "eigenpower/error.hpp"
#include "eigenpower/random.hpp"

namespace eigenpower {

namespace {

double multiplicative_error(double estimate, double oracle) {
  if (oracle == 0.0) return std::abs(estimate) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(estimate / oracle - 1.0);
}

unsigned max_row_nonzeros(const ComplexMatrix& m) {
  unsigned best = 0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    unsigned row = 0;
    for (std::size_t j = 0; j < m.dim(); ++j) row += m(i, j) != Complex{};
    best = std::max(best, row);
  }
  return best;
}

void add_oracle_metadata(EigenReport& r, const HermitianMatrix& a, const EigenDecomposition& e) {
  const double low = std::abs(e.eigenvalues.front());
  r.condition_number =
      low == 0.0 ? std::numeric_limits<double>::infinity() : std::abs(e.dominant()) / low;
  r.sparsity = max_row_nonzeros(a.matrix());
}

bool on_phase_grid(const EigenDecomposition& e, const PhaseConfig& phase) {
  const double t = static_cast<double>(phase.clock_dimension());
  for (double lambda : e.eigenvalues) {
    const double x = lambda * phase.t0 * t / (2.0 * std::numbers::pi);
    if (std::abs(x - std::round(x)) > 1e-9) return false;
  }
  return true;
}

void add_unique(std::vector<std::string>& warnings, const std::string& w) {
  if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
}

}  // namespace

double ConvergenceBound::bound_at(std::uint64_t k) const {
  if (n < 2 || K == 0.0) return 0.0;
  return static_cast<double>(n - 1) * K * std::pow(p, 2.0 * static_cast<double>(k));
}

ConvergenceBound convergence_bound(const EigenDecomposition& oracle, const InitialVector& x0,
                                   double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidConfig, "delta must be positive");
  ConvergenceBound b;
  b.n = oracle.dim();
  b.delta = delta;
  if (b.n < 2) return b;

  const double cn = std::abs(vdot(oracle.eigenvector(b.n - 1), x0.x0));
  if (cn == 0.0) throw Error(ErrorCode::kZeroVector, "x0 has no component along E_n");
  for (std::size_t i = 0; i + 1 < b.n; ++i) {
    b.K = std::max(b.K, std::abs(vdot(oracle.eigenvector(i), x0.x0)) / cn);
  }
  const double top = std::abs(oracle.dominant());
  b.degenerate = top_is_degenerate(oracle);
  b.p = b.degenerate ? kDegenerateRatio : std::abs(oracle.eigenvalues[b.n - 2]) / top;

  const double lead = static_cast<double>(b.n - 1) * b.K;
  if (lead < delta || b.p == 0.0) return b;
  const double estimate = std::log(lead / delta) / (2.0 * std::log(1.0 / b.p));
  // Bracket and bisect around the closed form.
  const auto guess = static_cast<std::uint64_t>(std::max(1.0, std::ceil(estimate)));
  std::uint64_t lo = guess > 1 ? guess - 1 : 0;  // bound(lo) >= delta unless lo == 0
  std::uint64_t hi = guess;                      // bound(hi) < delta
  for (std::uint64_t step = 1; lo > 0 && b.bound_at(lo) < delta; step *= 2) {
    hi = lo;
    lo = lo > step ? lo - step : 0;
  }
  for (std::uint64_t step = 1; b.bound_at(hi) >= delta; step *= 2) {
    lo = hi;
    hi += step;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (b.bound_at(mid) < delta ? hi : lo) = mid;
  }
  b.k_required = std::max<std::uint64_t>(hi, 1);
  return b;
}

PowerMethodResult classical_power_method(const HermitianMatrix& a, const InitialVector& x0,
                                         unsigned k) {
  if (k == 0) throw Error(ErrorCode::kInvalidConfig, "k must be at least 1");
  CVector x = x0.x0;
  for (unsigned i = 0; i < k; ++i) x = normalized(a.matrix().apply(x));
  const CVector ax = a.matrix().apply(x);
  return PowerMethodResult{vdot(ax, x).real() / vdot(x, x).real(), x};
}

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::kMax: return "max";
    case Mode::kMin: return "min";
    case Mode::kShifted: return "shifted";
    case Mode::kKrylov: return "krylov";
  }
  return "max";
}

std::uint64_t shot_seed_for(std::uint64_t x0_seed) { return derive_seed(x0_seed, 1); }

EigenReport quantum_estimate_max(const HermitianMatrix& a, const PipelineConfig& cfg,
                                 const EstimateOptions& opts) {
  validate(cfg);
  const InitialVector x0 = draw_initial_vector(a.dim(), cfg.x0_seed, eigendecompose(a));
  return quantum_estimate_max(a, cfg, x0, opts);
}

EigenReport quantum_estimate_max(const HermitianMatrix& a, const PipelineConfig& cfg,
                                 const InitialVector& x0, const EstimateOptions& opts) {
  const PipelineContext ctx(a, cfg, x0);
  const auto& oracle = ctx.oracle();

  EigenReport r;
  r.mode = Mode::kMax;
  r.config = cfg;
  r.k_used = cfg.k;
  r.bound = convergence_bound(oracle, x0, opts.delta);
  if (r.bound.degenerate) add_unique(r.warnings, "DegenerateSpectrum");
  if (cfg.backend == Backend::kCircuit && !on_phase_grid(oracle, cfg.phase)) {
    add_unique(r.warnings, "EigenvaluesOffPhaseGrid");
  }
  r.x0_seed = x0.seed;
  r.x0_seed_used = x0.seed_used;
  r.shot_seed = shot_seed_for(cfg.x0_seed);

  const PairOverlaps pair = estimate_pair_overlaps(ctx, opts.shots, r.shot_seed);
  const OverlapEstimate& num = pair.numerator;
  const OverlapEstimate& den = pair.denominator;
  const double den_size = std::abs(den.value.real());
  if (std::abs(den.value) == 0.0 || (opts.shots > 0 && den_size < 5.0 * den.std_error)) {
    throw Error(ErrorCode::kDenominatorTooSmall,
                "denominator overlap " + std::to_string(den.value.real()) +
                    " is within five standard errors (" + std::to_string(den.std_error) +
                    ") of zero; use more shots or a larger C");
  }
  const Complex ratio = num.value / den.value;
  const double lambda = ratio.real() / cfg.c;
  r.imaginary_part = ratio.imag() / cfg.c;
  if (opts.shots > 0) {
    const double num_size = std::max(std::abs(num.value.real()), 1e-300);
    r.std_error = std::abs(lambda) * std::hypot(num.std_error / num_size, den.std_error / den_size);
    const double imag_sigma =
        std::abs(ratio) / cfg.c *
        std::hypot(num.std_error_imag / std::max(std::abs(num.value), 1e-300),
                   den.std_error_imag / den_size);
    if (std::abs(r.imaginary_part) > 5.0 * imag_sigma) {
      add_unique(r.warnings, "ImaginaryPartAboveNoise");
    }
  }
  r.numerator = num;
  r.denominator = den;
  r.lambda_estimates = {lambda};
  r.oracle_values = {oracle.dominant()};
  r.multiplicative_error = multiplicative_error(lambda, oracle.dominant());
  r.resources.pipeline = pair.counters;
  r.resources.shots = 4 * opts.shots;
  r.resources.qubits = pair.qubits;
  add_oracle_metadata(r, a, oracle);
  return r;
}

EigenReport quantum_estimate_min(const HermitianMatrix& a, const PipelineConfig& cfg,
                                 const EstimateOptions& opts,
                                 const std::optional<PipelineConfig>& forward) {
  const HermitianMatrix inv = inverse(a);
  EigenReport r = quantum_estimate_max(inv, cfg, opts);
  const double inv_lambda = r.lambda_estimates.front();
  const double lambda = 1.0 / inv_lambda;
  const EigenDecomposition oracle = eigendecompose(a);
  r.mode = Mode::kMin;
  r.inverse_estimate = inv_lambda;
  r.lambda_estimates = {lambda};
  r.oracle_values = {oracle.eigenvalues.front()};
  r.multiplicative_error = multiplicative_error(lambda, oracle.eigenvalues.front());
  r.std_error = r.std_error / (inv_lambda * inv_lambda);
  r.interpretation = "smallest_magnitude";
  if (forward) {
    const EigenReport top = quantum_estimate_max(a, *forward, opts);
    r.kappa = std::abs(top.lambda_estimates.front() / lambda);
  }
  add_oracle_metadata(r, a, oracle);
  return r;
}

EigenReport quantum_estimate_shifted(const HermitianMatrix& a, double c, const PipelineConfig& cfg,
                                     const EstimateOptions& opts) {
  const HermitianMatrix shifted = shift(a, c);
  EigenReport r = quantum_estimate_max(shifted, cfg, opts);
  const double lambda_shift = r.lambda_estimates.front();
  const double recovered = lambda_shift + c;
  const double oracle = r.oracle_values.front() + c;
  r.mode = Mode::kShifted;
  r.shift = c;
  r.max_abs_shifted = std::abs(lambda_shift);
  r.lambda_estimates = {recovered};
  r.oracle_values = {oracle};
  r.multiplicative_error = multiplicative_error(recovered, oracle);
  r.interpretation = lambda_shift < 0.0 ? "lowest" : "highest";
  add_oracle_metadata(r, a, eigendecompose(a));
  return r;
}

RitzResult ritz_values(const ComplexMatrix& gram, const ComplexMatrix& projected,
                       double cond_tol) {
  const std::size_t n = gram.dim();
  if (projected.dim() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "Gram and projected matrices differ in size");
  }
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double sii = gram(i, i).real();
    d[i] = sii > 0.0 ? 1.0 / std::sqrt(sii) : 0.0;
  }
  ComplexMatrix s(n), h(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      s(i, j) = d[i] * gram(i, j) * d[j];
      h(i, j) = d[i] * projected(i, j) * d[j];
    }
  }
  const EigenDecomposition es = eigendecompose(symmetrized(s));
  double smax = 0.0;
  for (double v : es.eigenvalues) smax = std::max(smax, v);

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (es.eigenvalues[i] > cond_tol * smax) kept.push_back(i);
  RitzResult out;
  out.dropped = static_cast<unsigned>(n - kept.size());
  if (kept.empty()) return out;

  // W = V_kept diag(1/sqrt(s)), reduced pencil W^dagger H W.
  const std::size_t r = kept.size();
  std::vector<CVector> w(r, CVector(n));
  for (std::size_t c = 0; c < r; ++c) {
    const double inv = 1.0 / std::sqrt(es.eigenvalues[kept[c]]);
    for (std::size_t i = 0; i < n; ++i) w[c][i] = es.eigenvectors(i, kept[c]) * inv;
  }
  ComplexMatrix reduced(r);
  for (std::size_t a = 0; a < r; ++a) {
    const CVector hw = h.apply(w[a]);
    for (std::size_t b = 0; b < r; ++b) reduced(b, a) = vdot(w[b], hw);
  }
  out.values = eigendecompose(symmetrized(reduced)).eigenvalues;
  std::reverse(out.values.begin(), out.values.end());
  return out;
}

EigenReport krylov_few_eigenvalues(const HermitianMatrix& a, const PipelineConfig& cfg, unsigned m,
                                   const EstimateOptions& opts, unsigned block) {
  validate(cfg);
  if (block == 0) throw Error(ErrorCode::kInvalidConfig, "Krylov block size must be at least 1");
  const unsigned k = cfg.k;
  const unsigned dim = block * (k + 1);
  if (m == 0 || m > dim) {
    throw Error(ErrorCode::kInvalidConfig, "Krylov m must be in [1, " + std::to_string(dim) +
                                               "], got " + std::to_string(m));
  }
  const EigenDecomposition oracle = eigendecompose(a);
  EigenReport r;
  r.mode = Mode::kKrylov;
  r.config = cfg;
  r.k_used = k;
  if (dim > a.dim()) add_unique(r.warnings, "KrylovDimensionExceedsN");
  if (cfg.backend == Backend::kCircuit && !on_phase_grid(oracle, cfg.phase)) {
    add_unique(r.warnings, "EigenvaluesOffPhaseGrid");
  }

  std::vector<PipelineContext> contexts;
  for (unsigned p = 0; p < block; ++p) {
    const std::uint64_t seed = p == 0 ? cfg.x0_seed : derive_seed(cfg.x0_seed, 100 + p);
    contexts.emplace_back(a, cfg, draw_initial_vector(a.dim(), seed, oracle));
  }
  const InitialVector& x0 = contexts.front().initial();
  r.bound = convergence_bound(oracle, x0, opts.delta);
  if (r.bound.degenerate) add_unique(r.warnings, "DegenerateSpectrum");
  r.x0_seed = x0.seed;
  r.x0_seed_used = x0.seed_used;
  r.shot_seed = shot_seed_for(cfg.x0_seed);

  // Phi_j(x^(p)) with k + 1 ancillas and the given flag, built once each.
  std::map<std::tuple<unsigned, unsigned, int>, PipelineState> cache;
  auto state = [&](unsigned p, unsigned j, FlagBit flag) -> const PipelineState& {
    const auto key = std::tuple{p, j, static_cast<int>(flag)};
    auto it = cache.find(key);
    if (it == cache.end()) {
      PipelineState s = mark_flags(build_phi_k(contexts[p], j, k + 1), contexts[p], flag);
      it = cache.emplace(key, std::move(s)).first;
    }
    return it->second;
  };

  // moments[p][q][t] = x^(p)^dagger A^t x^(q).
  const unsigned top = 2 * k + 1;
  std::vector<std::vector<std::vector<Complex>>> moments(
      block, std::vector<std::vector<Complex>>(block, std::vector<Complex>(top + 1)));
  std::uint64_t stream = 0;
  std::uint64_t overlaps = 0;
  for (unsigned p = 0; p < block; ++p) {
    for (unsigned q = p; q < block; ++q) {
      for (unsigned t = 0; t <= top; ++t) {
        const unsigned left = (t + 1) / 2;
        const OverlapEstimate ov =
            estimate_overlap(state(p, left, FlagBit::kFirst), state(q, t - left, FlagBit::kSecond),
                             opts.shots, derive_seed(r.shot_seed, stream++), cfg.qubit_cap);
        ++overlaps;
        const Complex value = ov.value / std::pow(cfg.c, static_cast<double>(t));
        moments[p][q][t] = value;
        moments[q][p][t] = std::conj(value);
      }
    }
  }

  ComplexMatrix gram(dim), projected(dim);
  for (unsigned p = 0; p < block; ++p)
    for (unsigned i = 0; i <= k; ++i)
      for (unsigned q = 0; q < block; ++q)
        for (unsigned j = 0; j <= k; ++j) {
          gram(p * (k + 1) + i, q * (k + 1) + j) = moments[p][q][i + j];
          projected(p * (k + 1) + i, q * (k + 1) + j) = moments[p][q][i + j + 1];
        }

  const RitzResult ritz = ritz_values(gram, projected);
  if (ritz.values.size() < m) {
    throw Error(ErrorCode::kIllConditionedKrylov,
                std::to_string(ritz.values.size()) + " Krylov directions survive the " +
                    "conditioning cut, " + std::to_string(m) + " requested");
  }
  r.krylov = KrylovInfo{m, block, dim, ritz.dropped};
  r.lambda_estimates.assign(ritz.values.begin(), ritz.values.begin() + m);
  for (unsigned i = 0; i < m && i < oracle.dim(); ++i) {
    r.oracle_values.push_back(oracle.eigenvalues[oracle.dim() - 1 - i]);
  }
  for (std::size_t i = 0; i < r.oracle_values.size(); ++i) {
    r.multiplicative_error = std::max(
        r.multiplicative_error, multiplicative_error(r.lambda_estimates[i], r.oracle_values[i]));
  }
  if (opts.shots > 0) add_unique(r.warnings, "KrylovErrorBarsNotPropagated");
  r.resources.pipeline = build_phi_k(contexts.front(), k, k + 1).counters;
  r.resources.shots = 2 * opts.shots * overlaps;
  r.resources.qubits = cfg.backend == Backend::kCircuit
                           ? contexts.front().qubits(k + 1) + (opts.shots ? 1 : 0)
                           : 0;
  add_oracle_metadata(r, a, oracle);
  return r;
}

AccumulationResult error_accumulation_experiment(const HermitianMatrix& a,
                                                 std::span<const Complex> x0, unsigned k,
                                                 double eps, unsigned trials, std::uint64_t seed,
                                                 std::optional<double> scale) {
  if (eps < 0.0) throw Error(ErrorCode::kInvalidConfig, "eps must be nonnegative");
  if (x0.size() != a.dim()) throw Error(ErrorCode::kDimensionMismatch, "x0 length mismatch");
  const EigenDecomposition oracle = eigendecompose(a);
  AccumulationResult out;
  out.scale = scale.value_or(std::abs(oracle.dominant()));
  if (!(out.scale > 0.0)) throw Error(ErrorCode::kInvalidConfig, "scale must be positive");
  const ComplexMatrix b = a.matrix().scaled(1.0 / out.scale);
  const CVector top = oracle.eigenvector(a.dim() - 1);
  out.per_step_max.assign(k, 0.0);

  for (unsigned t = 0; t < trials; ++t) {
    Philox4x32 rng(seed, t);
    const double weight = trials > 1 ? static_cast<double>(t) / (trials - 1) : 0.0;
    CVector exact(x0.begin(), x0.end());
    CVector noisy = exact;
    for (unsigned j = 0; j < k; ++j) {
      exact = b.apply(exact);
      noisy = b.apply(noisy);
      CVector g(a.dim());
      for (auto& x : g) {
        const double re = rng.normal();
        x = Complex(re, rng.normal());
      }
      g = normalized(g);
      CVector dir(a.dim());
      for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = (1.0 - weight) * g[i] + weight * top[i];
      if (norm2(dir) == 0.0) dir = top;
      dir = normalized(dir);
      for (std::size_t i = 0; i < dir.size(); ++i) noisy[i] += eps * dir[i];
      double dev = 0.0;
      for (std::size_t i = 0; i < dir.size(); ++i) dev += std::norm(noisy[i] - exact[i]);
      out.per_step_max[j] = std::max(out.per_step_max[j], std::sqrt(dev));
    }
  }
  out.max_deviation = k ? out.per_step_max.back() : 0.0;
  return out;
}

KSelection select_k(const HermitianMatrix& a, std::uint64_t seed, double delta) {
  const EigenDecomposition oracle = eigendecompose(a);
  const InitialVector x0 = draw_initial_vector(a.dim(), seed, oracle);
  KSelection out;
  out.bound = convergence_bound(oracle, x0, delta);
  if (out.bound.degenerate) out.warnings.push_back("DegenerateSpectrum");
  if (out.bound.k_required > kMaxAutoK) {
    out.k = kMaxAutoK;
    out.warnings.push_back("KCapped");
  } else {
    out.k = static_cast<unsigned>(out.bound.k_required);
  }
  return out;
}

EigenReport blind_estimate_max(const HermitianMatrix& a, const PipelineConfig& cfg,
                               const EstimateOptions& opts, unsigned max_k) {
  PipelineConfig run = cfg;
  run.k = 1;
  EigenReport previous = quantum_estimate_max(a, run, opts);
  while (run.k * 2 <= max_k) {
    run.k *= 2;
    EigenReport current = quantum_estimate_max(a, run, opts);
    const double change =
        multiplicative_error(current.lambda_estimates.front(), previous.lambda_estimates.front());
    if (change < opts.delta / 2.0) return current;
    previous = std::move(current);
  }
  add_unique(previous.warnings, "BlindSelectionCapped");
  return previous;
}

}  // namespace eigenpower
