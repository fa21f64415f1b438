#pragma once

// Repeated application of A to a quantum state through phase estimation and
// an eigenvalue-controlled ancilla rotation. After k applications the
// all-ancillas-zero branch holds C^k A^k x0; every other branch is garbage,
// tagged by the one ancilla that was rotated to |1>.
//
// Two backends share one interface: `kCircuit` simulates the gates on a
// statevector, `kAnalytic` tracks branch coefficients in the eigenbasis.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "eigenpower/circuit.hpp"
#include "eigenpower/linalg.hpp"
#include "eigenpower/qpe.hpp"
#include "eigenpower/statevector.hpp"

namespace eigenpower {

enum class Variant { kNaive, kImproved };
enum class Backend { kCircuit, kAnalytic };

std::string_view variant_name(Variant v);
std::string_view backend_name(Backend b);
Variant parse_variant(std::string_view name);
Backend parse_backend(std::string_view name);

struct PipelineConfig {
  unsigned k = 1;
  // Rotation constant; C * D <= 1.
  double c = 1.0;
  PhaseConfig phase;
  Variant variant = Variant::kImproved;
  Backend backend = Backend::kAnalytic;
  std::uint64_t x0_seed = 1;
  unsigned qubit_cap = default_qubit_cap();
};

// Six clock bits, C = 1/D, t0 = pi/D, improved variant, analytic backend.
PipelineConfig default_pipeline_config(unsigned k, double bound);

// InvalidConfig on k == 0, C <= 0, C * D > 1 or a bad phase config.
void validate(const PipelineConfig& cfg);

struct InitialVector {
  CVector x0;
  std::uint64_t seed = 0;
  // The seed that produced x0 after any redraws.
  std::uint64_t seed_used = 0;
  unsigned redraws = 0;
};

inline constexpr double kMinDominantOverlap = 1e-6;
inline constexpr unsigned kMaxRedraws = 64;

// Complex Gaussian components, normalized; redrawn with seed + 1, seed + 2, ...
// while |<E_n, x0>| < 1e-6. ExhaustedRedraws after 64 attempts.
InitialVector draw_initial_vector(std::size_t n, std::uint64_t seed,
                                  const EigenDecomposition& oracle);

// Wraps a caller-chosen vector (normalized here).
InitialVector make_initial_vector(std::span<const Complex> x0);

struct ResourceCounters {
  std::uint64_t evolutions = 0;
  std::uint64_t inverse_evolutions = 0;
  std::uint64_t rotations = 0;
  std::uint64_t qft_calls = 0;
  std::uint64_t clock_preparations = 0;

  bool operator==(const ResourceCounters&) const = default;
};

// Everything that depends only on (A, cfg, x0): oracle decomposition, padded
// matrix and the gate tables shared by all pipeline states.
class PipelineContext {
 public:
  // OutOfBound if some |lambda_i| >= D.
  PipelineContext(const HermitianMatrix& a, PipelineConfig cfg, InitialVector x0);

  const PipelineConfig& config() const { return cfg_; }
  const HermitianMatrix& matrix() const { return a_; }
  const EigenDecomposition& oracle() const { return oracle_; }
  const InitialVector& initial() const { return x0_; }
  std::size_t dim() const { return a_.dim(); }

  // Circuit layout {system, clock, anc, flags} and its width.
  RegisterLayout layout(unsigned ancillas) const;
  unsigned qubits(unsigned ancillas) const { return layout(ancillas).total_qubits(); }

  const UnitaryList& x0_preparation() const { return x0_prep_; }
  const UnitaryList& clock_preparation() const { return clock_prep_; }
  const UnitaryList& clock_unpreparation() const { return clock_unprep_; }
  const UnitaryList& forward_evolution() const { return evolution_; }
  const UnitaryList& inverse_evolution() const { return inverse_evolution_; }
  const UnitaryList& rotation() const { return rotation_; }

 private:
  HermitianMatrix a_;
  PipelineConfig cfg_;
  InitialVector x0_;
  EigenDecomposition oracle_;
  unsigned system_qubits_ = 1;
  UnitaryList x0_prep_, clock_prep_, clock_unprep_, evolution_, inverse_evolution_, rotation_;
};

// The 2x2 rotation for clock index v: [[a, -s], [s, a]], a = C * lambda(v)
// clamped to [-1, 1], s = sqrt(1 - a^2).
ComplexMatrix rotation_for_index(std::uint64_t v, const PipelineConfig& cfg);

enum class FlagBit { kFirst, kSecond };

// Flag register value for a marked flag bit: first -> 1, second -> 2.
unsigned flag_value(FlagBit which);

// Analytic branch: coefficients in the oracle eigenbasis. `ancilla` is the
// index of the ancilla set to 1, or nullopt for the success branch.
struct AnalyticBranch {
  std::optional<unsigned> ancilla;
  unsigned flags = 0;
  CVector coeffs;
};

struct PipelineState {
  Backend backend = Backend::kAnalytic;
  unsigned applied = 0;
  unsigned ancillas = 0;
  bool clock_computed = false;
  bool flagged = false;
  ResourceCounters counters;
  std::optional<Circuit> circuit;
  std::optional<StateVector> state;
  std::vector<AnalyticBranch> branches;
};

// x0 loaded, no applications, `ancillas` rotation ancillas reserved.
// CapacityExceeded if the circuit would exceed the qubit cap.
PipelineState initial_state(const PipelineContext& ctx, unsigned ancillas);

// One more application of A. CapacityExceeded when every ancilla is used.
PipelineState apply_once(PipelineState state, const PipelineContext& ctx);

// Uncomputes a retained clock register (improved variant); no-op otherwise.
PipelineState release_clock(PipelineState state, const PipelineContext& ctx);

// `applications` applications with `ancillas` reserved, clock released.
PipelineState build_phi_k(const PipelineContext& ctx, unsigned applications, unsigned ancillas);
// cfg.k applications on cfg.k ancillas.
PipelineState build_phi_k(const PipelineContext& ctx);

// Sets `which` on every garbage branch. FlagsAlreadySet if any flag is set.
PipelineState mark_flags(PipelineState state, const PipelineContext& ctx, FlagBit which);

// Unnormalized system component with all ancillas, flags and clock at zero.
// For the circuit backend the clock must be released.
CVector success_branch(const PipelineState& state, const PipelineContext& ctx);
double success_amplitude(const PipelineState& state, const PipelineContext& ctx);

}  // namespace eigenpower
