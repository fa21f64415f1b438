#include "eigenpower/app.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "eigenpower/error.hpp"
#include "eigenpower/matrix_io.hpp"
#include "eigenpower/report.hpp"

namespace eigenpower {

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidConfig, message);
}

HermitianMatrix target_operator(const RunConfig& cfg, const HermitianMatrix& a) {
  switch (cfg.mode) {
    case Mode::kMin: return inverse(a);
    case Mode::kShifted: return shift(a, *cfg.shift);
    case Mode::kMax:
    case Mode::kKrylov: return a;
  }
  return a;
}

double default_bound(const HermitianMatrix& target) {
  const double g = gershgorin_bound(target.matrix());
  return g > 0.0 ? kDefaultBoundMargin * g : 1.0;
}

unsigned as_count(double value, std::string_view axis, double min) {
  if (!(value >= min) || value != std::floor(value) || value > 4e9) {
    invalid(std::string(axis) + " value must be an integer >= " + format_double(min) + ", got " +
            format_double(value));
  }
  return static_cast<unsigned>(value);
}

}  // namespace

Mode parse_mode(std::string_view name) {
  if (name == "max") return Mode::kMax;
  if (name == "min") return Mode::kMin;
  if (name == "shift" || name == "shifted") return Mode::kShifted;
  if (name == "krylov") return Mode::kKrylov;
  invalid("unknown mode '" + std::string(name) + "'");
}

void validate(const RunConfig& cfg) {
  if (!(cfg.delta > 0.0) || !std::isfinite(cfg.delta)) invalid("delta must be positive");
  if (cfg.bits < 2 || cfg.bits > 20) invalid("bits must be in [2, 20]");
  if (cfg.k && *cfg.k == 0) invalid("k must be at least 1");
  if (cfg.c_rot && !(*cfg.c_rot > 0.0)) invalid("C must be positive");
  if (cfg.bound && !(*cfg.bound > 0.0)) invalid("D must be positive");
  if (cfg.t0 && !(*cfg.t0 > 0.0)) invalid("t0 must be positive");
  if (cfg.mode == Mode::kShifted && !cfg.shift) invalid("shift mode needs --c");
  if (cfg.shift && !std::isfinite(*cfg.shift)) invalid("shift c must be finite");
  if (cfg.mode == Mode::kKrylov && (cfg.m == 0 || cfg.block == 0)) {
    invalid("krylov needs m >= 1 and block >= 1");
  }
  if (cfg.blind && cfg.mode != Mode::kMax) invalid("blind k selection applies to max mode only");
  if (cfg.qubit_cap == 0) invalid("qubit cap must be positive");
}

PipelineConfig resolve_pipeline(const RunConfig& cfg, const HermitianMatrix& a) {
  validate(cfg);
  const HermitianMatrix target = target_operator(cfg, a);
  PipelineConfig p;
  const double d = cfg.bound.value_or(default_bound(target));
  p.phase = make_phase_config(cfg.bits, d, cfg.t0, cfg.clock);
  p.c = cfg.c_rot.value_or(1.0 / d);
  p.variant = cfg.variant;
  p.backend = cfg.backend;
  p.x0_seed = cfg.seed;
  p.qubit_cap = cfg.qubit_cap;
  p.k = cfg.k ? *cfg.k : select_k(target, cfg.seed, cfg.delta).k;
  if (cfg.mode == Mode::kKrylov && !cfg.k) {
    const unsigned needed = (cfg.m + cfg.block - 1) / cfg.block;
    p.k = std::max(p.k, needed > 0 ? needed - 1 : 1u);
    p.k = std::max(p.k, 1u);
  }
  validate(p);
  return p;
}

EigenReport run_report(const RunConfig& cfg, const HermitianMatrix& a) {
  const PipelineConfig p = resolve_pipeline(cfg, a);
  EstimateOptions opts;
  opts.shots = cfg.shots;
  opts.delta = cfg.delta;

  EigenReport r;
  switch (cfg.mode) {
    case Mode::kMax:
      r = cfg.blind ? blind_estimate_max(a, p, opts) : quantum_estimate_max(a, p, opts);
      break;
    case Mode::kMin: {
      RunConfig forward = cfg;
      forward.mode = Mode::kMax;
      forward.bound.reset();
      forward.c_rot.reset();
      forward.t0.reset();
      forward.k.reset();
      r = quantum_estimate_min(a, p, opts, resolve_pipeline(forward, a));
      break;
    }
    case Mode::kShifted:
      r = quantum_estimate_shifted(a, *cfg.shift, p, opts);
      break;
    case Mode::kKrylov:
      r = krylov_few_eigenvalues(a, p, cfg.m, opts, cfg.block);
      break;
  }
  if (!cfg.k && !cfg.blind) {
    for (const auto& w : select_k(target_operator(cfg, a), cfg.seed, cfg.delta).warnings) {
      if (std::find(r.warnings.begin(), r.warnings.end(), w) == r.warnings.end()) {
        r.warnings.push_back(w);
      }
    }
  }
  return r;
}

EigenReport run_report(const RunConfig& cfg) {
  validate(cfg);
  return run_report(cfg, validate_hermitian(read_matrix_file(cfg.matrix)));
}

std::string_view sweep_axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::kK: return "k";
    case SweepAxis::kShots: return "shots";
    case SweepAxis::kBits: return "b";
    case SweepAxis::kP: return "p";
  }
  return "k";
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "k") return SweepAxis::kK;
  if (name == "shots") return SweepAxis::kShots;
  if (name == "b" || name == "bits") return SweepAxis::kBits;
  if (name == "p") return SweepAxis::kP;
  invalid("unknown sweep axis '" + std::string(name) + "'");
}

std::string sweep_csv_header() {
  return "schema_version,axis,value,status,lambda_estimate,oracle_value,multiplicative_error,"
         "std_error,convergence_bound,k,shots,bits,evolutions,inverse_evolutions,rotations,"
         "qft_calls,error";
}

std::string run_sweep(const RunConfig& cfg, const HermitianMatrix& a, SweepAxis axis,
                      const std::vector<double>& values) {
  validate(cfg);
  if (values.empty()) invalid("sweep needs at least one value");
  std::ostringstream csv;
  csv << sweep_csv_header() << "\n";
  for (double value : values) {
    csv << kSweepSchemaVersion << ',' << sweep_axis_name(axis) << ',' << format_double(value)
        << ',';
    try {
      RunConfig row = cfg;
      std::optional<HermitianMatrix> fixture;
      switch (axis) {
        case SweepAxis::kK: row.k = as_count(value, "k", 1); break;
        case SweepAxis::kShots: row.shots = as_count(value, "shots", 0); break;
        case SweepAxis::kBits: row.bits = as_count(value, "b", 2); break;
        case SweepAxis::kP:
          fixture = validate_hermitian(
              generate_fixture(FixtureKind::kGapped, a.dim(), cfg.seed, {value}), 0.0);
          break;
      }
      const EigenReport r = run_report(row, fixture ? *fixture : a);
      const ResourceCounters& c = r.resources.pipeline;
      csv << "ok," << format_double(r.lambda_estimates.front()) << ','
          << format_double(r.oracle_values.front()) << ','
          << format_double(r.multiplicative_error) << ',' << format_double(r.std_error) << ','
          << format_double(r.bound.bound_at(r.k_used)) << ',' << r.k_used << ',' << row.shots
          << ',' << r.config.phase.bits << ',' << c.evolutions << ',' << c.inverse_evolutions
          << ',' << c.rotations << ',' << c.qft_calls << ",\n";
    } catch (const Error& e) {
      csv << "failed,,,,,,,,,,,,," << error_name(e.code()) << "\n";
    }
  }
  return csv.str();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err,
        std::optional<SweepAxis> axis, const std::vector<double>& values) {
  try {
    validate(cfg);
    if (axis && values.empty()) invalid("--sweep-axis needs --sweep-values");
    const HermitianMatrix a = validate_hermitian(read_matrix_file(cfg.matrix));
    const std::string text =
        axis ? run_sweep(cfg, a, *axis, values) : report_to_json(run_report(cfg, a));
    if (cfg.out) {
      write_file_atomically(*cfg.out, text);
    } else {
      out << text;
    }
    return 0;
  } catch (const Error& e) {
    err << error_to_json(e);
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << error_to_json("InternalError", 1, e.what());
    return 1;
  }
}

}  // namespace eigenpower
