#pragma once

// Eigenvalue estimators built on the pipeline overlaps, the classical
// power-method baseline, and convergence diagnostics.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eigenpower/linalg.hpp"
#include "eigenpower/overlap.hpp"
#include "eigenpower/powerpipe.hpp"

namespace eigenpower {

// p = |lambda_{n-1} / lambda_n|, K = max_{i<n} |c_i / c_n| with c_i = <E_i, x0>.
struct ConvergenceBound {
  double p = 0.0;
  double K = 0.0;
  std::size_t n = 0;
  double delta = 0.0;
  // Smallest k >= 1 with (n-1) K p^(2k) < delta.
  std::uint64_t k_required = 1;
  bool degenerate = false;

  // (n-1) K p^(2k).
  double bound_at(std::uint64_t k) const;
};

// Used for p when the top magnitude is degenerate.
inline constexpr double kDegenerateRatio = 1.0 - 1e-12;

ConvergenceBound convergence_bound(const EigenDecomposition& oracle, const InitialVector& x0,
                                   double delta);

struct PowerMethodResult {
  double lambda_bar = 0.0;
  CVector direction;
};

// k multiplications with renormalization, then (A x_k)^dagger x_k / x_k^dagger x_k.
PowerMethodResult classical_power_method(const HermitianMatrix& a, const InitialVector& x0,
                                         unsigned k);

enum class Mode { kMax, kMin, kShifted, kKrylov };
std::string_view mode_name(Mode m);

struct ReportResources {
  ResourceCounters pipeline;
  std::uint64_t shots = 0;
  unsigned qubits = 0;
};

struct KrylovInfo {
  unsigned m = 0;
  unsigned block = 1;
  unsigned dimension = 0;
  unsigned dropped = 0;
};

struct EigenReport {
  Mode mode = Mode::kMax;
  std::vector<double> lambda_estimates;
  std::vector<double> oracle_values;
  double multiplicative_error = 0.0;
  double std_error = 0.0;
  double imaginary_part = 0.0;
  unsigned k_used = 0;
  ConvergenceBound bound;
  ReportResources resources;
  std::uint64_t x0_seed = 0;
  std::uint64_t x0_seed_used = 0;
  std::uint64_t shot_seed = 0;
  std::vector<std::string> warnings;
  PipelineConfig config;
  std::optional<OverlapEstimate> numerator;
  std::optional<OverlapEstimate> denominator;
  // Oracle metadata.
  double condition_number = 0.0;
  unsigned sparsity = 0;

  // Min mode.
  std::optional<double> inverse_estimate;
  std::optional<double> kappa;
  // Shifted mode.
  std::optional<double> shift;
  std::optional<double> max_abs_shifted;
  std::string interpretation;
  // Krylov mode.
  std::optional<KrylovInfo> krylov;
};

struct EstimateOptions {
  // 0 selects exact overlaps.
  std::uint64_t shots = 0;
  double delta = 1e-2;
};

// Shot seeds are derived from cfg.x0_seed.
std::uint64_t shot_seed_for(std::uint64_t x0_seed);

// lambda_bar = Re(numerator / denominator) / C. DenominatorTooSmall when the
// denominator is zero or below five standard errors.
EigenReport quantum_estimate_max(const HermitianMatrix& a, const PipelineConfig& cfg,
                                 const EstimateOptions& opts = {});
EigenReport quantum_estimate_max(const HermitianMatrix& a, const PipelineConfig& cfg,
                                 const InitialVector& x0, const EstimateOptions& opts);

// Max mode on A^{-1}; cfg.phase.bound bounds |1/lambda|. Reports the smallest
// magnitude eigenvalue of A, and kappa when `forward` (a max-mode config for A)
// is given.
EigenReport quantum_estimate_min(const HermitianMatrix& a, const PipelineConfig& cfg,
                                 const EstimateOptions& opts = {},
                                 const std::optional<PipelineConfig>& forward = std::nullopt);

// Max mode on A - cI; cfg.phase.bound bounds |lambda - c|.
EigenReport quantum_estimate_shifted(const HermitianMatrix& a, double c, const PipelineConfig& cfg,
                                     const EstimateOptions& opts = {});

inline constexpr double kKrylovCondTol = 1e-10;

// Rayleigh-Ritz on the block Krylov space spanned by A^j x^(p), j <= k,
// p < block. x^(0) comes from cfg.x0_seed, x^(p) from derived seeds. Returns
// the m largest-magnitude Ritz values.
EigenReport krylov_few_eigenvalues(const HermitianMatrix& a, const PipelineConfig& cfg, unsigned m,
                                   const EstimateOptions& opts = {}, unsigned block = 1);

// Ritz values of the pencil (H, S) after dropping S directions below
// cond_tol * max eigenvalue, sorted by descending magnitude.
struct RitzResult {
  std::vector<double> values;
  unsigned dropped = 0;
};
RitzResult ritz_values(const ComplexMatrix& gram, const ComplexMatrix& projected,
                       double cond_tol = kKrylovCondTol);

struct AccumulationResult {
  double max_deviation = 0.0;
  // Max over trials of the deviation after step j + 1.
  std::vector<double> per_step_max;
  double scale = 1.0;
};

// Runs y_j = B y_{j-1} + e_j against the exact iteration with B = A / scale,
// ||e_j|| = eps. scale defaults to the spectral norm of A. Trial t mixes a
// random direction with the dominant eigenvector in proportion t / (trials-1).
AccumulationResult error_accumulation_experiment(const HermitianMatrix& a,
                                                 std::span<const Complex> x0, unsigned k,
                                                 double eps, unsigned trials, std::uint64_t seed,
                                                 std::optional<double> scale = std::nullopt);

inline constexpr unsigned kMaxAutoK = 512;

struct KSelection {
  unsigned k = 1;
  ConvergenceBound bound;
  std::vector<std::string> warnings;
};

// k_required from the oracle for the x0 drawn with `seed`, capped at 512.
KSelection select_k(const HermitianMatrix& a, std::uint64_t seed, double delta);

// Doubles k from 1 until two successive estimates agree within delta / 2.
// cfg.k is ignored.
EigenReport blind_estimate_max(const HermitianMatrix& a, const PipelineConfig& cfg,
                               const EstimateOptions& opts = {}, unsigned max_k = 1024);

}  // namespace eigenpower
