#pragma once

// Run configuration, default resolution and the report / sweep drivers
// behind the command-line tool.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eigenpower/eigensolve.hpp"
#include "eigenpower/fixtures.hpp"

namespace eigenpower {

Mode parse_mode(std::string_view name);  // max|min|shift|krylov

struct RunConfig {
  std::filesystem::path matrix;
  Mode mode = Mode::kMax;
  std::optional<unsigned> k;
  double delta = 1e-2;
  std::optional<double> c_rot;
  std::optional<double> bound;
  unsigned bits = 6;
  std::optional<double> t0;
  std::uint64_t shots = 0;
  Variant variant = Variant::kImproved;
  Backend backend = Backend::kAnalytic;
  ClockState clock = ClockState::kUniform;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> out;
  unsigned m = 1;
  std::optional<double> shift;
  unsigned block = 1;
  bool blind = false;
  unsigned qubit_cap = default_qubit_cap();
};

// D defaults to this multiple of the Gershgorin bound of the operator the
// estimator runs on (A, A^{-1} or A - cI).
inline constexpr double kDefaultBoundMargin = 1.25;

// Checks that need no matrix: delta, bits, shots/mode combinations, explicit
// C, D and t0. InvalidConfig on failure.
void validate(const RunConfig& cfg);

// Fills the defaults for `a` and validates the result.
PipelineConfig resolve_pipeline(const RunConfig& cfg, const HermitianMatrix& a);

EigenReport run_report(const RunConfig& cfg, const HermitianMatrix& a);
// Reads cfg.matrix.
EigenReport run_report(const RunConfig& cfg);

enum class SweepAxis { kK, kShots, kBits, kP };
std::string_view sweep_axis_name(SweepAxis a);
SweepAxis parse_sweep_axis(std::string_view name);

inline constexpr int kSweepSchemaVersion = 1;

// Header line of the sweep CSV.
std::string sweep_csv_header();

// One row per value, in the given order. A failing row carries
// status=failed and the error name; the sweep continues. Axis p replaces the
// matrix with a gapped fixture of the same dimension (seed = cfg.seed).
std::string run_sweep(const RunConfig& cfg, const HermitianMatrix& a, SweepAxis axis,
                      const std::vector<double>& values);

// Exit code 0 on success; otherwise the error JSON goes to `err`. Output goes
// to cfg.out (atomically) or to `out` when unset. Sweep mode when `axis` set.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err,
        std::optional<SweepAxis> axis = std::nullopt, const std::vector<double>& values = {});

// Command-line entry point shared by the tool and the tests.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eigenpower
