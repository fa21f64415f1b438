#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "eigenpower/app.hpp"
#include "eigenpower/error.hpp"
#include "eigenpower/matrix_io.hpp"
#include "eigenpower/report.hpp"

namespace eigenpower {

namespace {

struct FixtureArgs {
  std::string kind = "diagonal";
  std::size_t n = 2;
  std::uint64_t seed = 1;
  std::vector<double> params;
  std::string out;
};

int run_fixture(const FixtureArgs& f, std::ostream& out, std::ostream& err) {
  try {
    const ComplexMatrix m = generate_fixture(parse_fixture_kind(f.kind), f.n, f.seed, f.params);
    if (f.out.empty()) {
      out << matrix_to_json(m);
    } else {
      write_matrix_file(f.out, m);
    }
    return 0;
  } catch (const Error& e) {
    err << error_to_json(e);
    return exit_code_for(e.code());
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Largest-eigenvalue estimation by a simulated quantum power method", "eigenpower"};

  RunConfig cfg;
  std::string matrix, mode = "max", variant = "improved", backend = "analytic", clock = "uniform";
  std::string out_path, sweep_axis;
  std::vector<double> sweep_values;
  unsigned k = 0;
  double c_rot = 0, bound = 0, t0 = 0, shift = 0;

  auto* o_matrix = app.add_option("--matrix", matrix, "Matrix JSON file");
  app.add_option("--mode", mode, "max | min | shift | krylov");
  auto* o_k = app.add_option("--k", k, "Power-method steps (default: from the convergence bound)");
  app.add_option("--delta", cfg.delta, "Target multiplicative error")->capture_default_str();
  auto* o_c = app.add_option("--C", c_rot, "Rotation constant (default 1/D)");
  auto* o_d = app.add_option("--D", bound, "Spectral bound (default 1.25 x Gershgorin)");
  app.add_option("--bits", cfg.bits, "Clock qubits")->capture_default_str();
  auto* o_t0 = app.add_option("--t0", t0, "Evolution time per clock tick (default pi/D)");
  app.add_option("--shots", cfg.shots, "Shots per Hadamard test, 0 for exact overlaps");
  app.add_option("--variant", variant, "naive | improved");
  app.add_option("--backend", backend, "circuit | analytic");
  app.add_option("--clock", clock, "uniform | sine");
  app.add_option("--seed", cfg.seed, "Seed for x0 and shot sampling")->capture_default_str();
  app.add_option("--m", cfg.m, "Krylov: number of eigenvalues");
  app.add_option("--block", cfg.block, "Krylov: number of start vectors");
  auto* o_shift = app.add_option("--c", shift, "Shift for shift mode");
  app.add_flag("--blind", cfg.blind, "Choose k by doubling without the oracle");
  app.add_option("--out", out_path, "Output file (default stdout)");
  auto* o_axis = app.add_option("--sweep-axis", sweep_axis, "k | shots | b | p");
  app.add_option("--sweep-values", sweep_values, "Comma-separated axis values")->delimiter(',');

  FixtureArgs fx;
  auto* fixture = app.add_subcommand("fixture", "Write a test matrix");
  fixture->add_option("--kind", fx.kind, "diagonal | random_hermitian | gapped");
  fixture->add_option("--n", fx.n, "Dimension")->capture_default_str();
  fixture->add_option("--seed", fx.seed, "Seed")->capture_default_str();
  fixture->add_option("--params", fx.params, "Comma-separated parameters")->delimiter(',');
  fixture->add_option("--out", fx.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_to_json("ParseError", 3, e.what());
    return 3;
  }

  if (fixture->parsed()) return run_fixture(fx, out, err);

  try {
    if (!o_matrix->count()) throw Error(ErrorCode::kInvalidConfig, "--matrix is required");
    cfg.matrix = matrix;
    cfg.mode = parse_mode(mode);
    cfg.variant = parse_variant(variant);
    cfg.backend = parse_backend(backend);
    cfg.clock = parse_clock_state(clock);
    if (o_k->count()) cfg.k = k;
    if (o_c->count()) cfg.c_rot = c_rot;
    if (o_d->count()) cfg.bound = bound;
    if (o_t0->count()) cfg.t0 = t0;
    if (o_shift->count()) cfg.shift = shift;
    if (!out_path.empty()) cfg.out = out_path;
    std::optional<SweepAxis> axis;
    if (o_axis->count()) axis = parse_sweep_axis(sweep_axis);
    return run(cfg, out, err, axis, sweep_values);
  } catch (const Error& e) {
    err << error_to_json(e);
    return exit_code_for(e.code());
  }
}

}  // namespace eigenpower
