#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "eigenpower/app.hpp"
#include "eigenpower/error.hpp"
#include "eigenpower/matrix_io.hpp"

using namespace eigenpower;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "eigenpower");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult r;
  r.code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "eigenpower_test_app";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_diag(const std::string& name, std::vector<double> d) {
  const fs::path p = scratch() / name;
  write_matrix_file(p, ComplexMatrix::diagonal(d));
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("max mode on the identity") {
  const auto m = write_diag("identity.json", {1, 1, 1});
  const auto r = cli({"--matrix", m, "--mode", "max"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["lambda_estimates"].size() == 1);
  CHECK(j["lambda_estimates"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.err.empty());
}

TEST_CASE("defaults are resolved from the matrix") {
  const auto m = write_diag("d12.json", {1, 2});
  const auto r = cli({"--matrix", m});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["config"]["D"].get<double>() == doctest::Approx(2.5));
  CHECK(j["config"]["C"].get<double>() == doctest::Approx(0.4));
  CHECK(j["config"]["t0"].get<double>() == doctest::Approx(std::numbers::pi / 2.5));
  CHECK(j["k_used"] == j["bound"]["k_required"]);
  CHECK(j["multiplicative_error"].get<double>() < 1e-2);
}

TEST_CASE("missing matrix file") {
  const auto r = cli({"--matrix", (scratch() / "nope.json").string()});
  CHECK(r.code == 2);
  const json j = json::parse(r.err);
  CHECK(j["error"] == "FileNotFound");
  CHECK(j["exit_code"] == 2);
}

TEST_CASE("krylov m = 3 on diag(1,2,3,4)") {
  const auto m = write_diag("d1234.json", {1, 2, 3, 4});
  const auto r = cli({"--matrix", m, "--mode", "krylov", "--m", "3", "--k", "3"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["lambda_estimates"].size() == 3);
  const std::vector<double> expected = {4, 3, 2};
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(std::abs(j["lambda_estimates"][i].get<double>() - expected[i]) < 1e-6);
}

TEST_CASE("min and shift modes") {
  const auto m = write_diag("d24.json", {2, 4});
  const auto min = cli({"--matrix", m, "--mode", "min", "--delta", "1e-8"});
  REQUIRE(min.code == 0);
  const json jm = json::parse(min.out);
  CHECK(jm["lambda_estimates"][0].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(jm["kappa"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));

  const auto shifted = cli({"--matrix", m, "--mode", "shift", "--c", "10", "--delta", "1e-8"});
  REQUIRE(shifted.code == 0);
  const json js = json::parse(shifted.out);
  CHECK(js["lambda_estimates"][0].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(js["interpretation"] == "lowest");

  const auto no_c = cli({"--matrix", m, "--mode", "shift"});
  CHECK(no_c.code == 3);
  CHECK(json::parse(no_c.err)["error"] == "InvalidConfig");
}

TEST_CASE("identical configs give byte-identical reports") {
  const auto m = write_diag("det.json", {1, 2, 3});
  const std::vector<std::string> args = {"--matrix", m, "--shots", "2000", "--seed", "9", "--k", "2",
                                         "--backend", "circuit", "--D", "4"};
  const auto a = cli(args);
  const auto b = cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto other = args;
  other[5] = "10";
  CHECK(cli(other).out != a.out);
}

TEST_CASE("output file is written only on success") {
  const auto m = write_diag("w.json", {1, 2});
  const fs::path out = scratch() / "report.json";
  fs::remove(out);
  REQUIRE(cli({"--matrix", m, "--out", out.string()}).code == 0);
  CHECK(fs::exists(out));
  CHECK(json::parse(slurp(out))["mode"] == "max");

  const fs::path bad = scratch() / "bad_report.json";
  fs::remove(bad);
  CHECK(cli({"--matrix", m, "--out", bad.string(), "--bits", "1"}).code == 3);
  CHECK(cli({"--matrix", m, "--out", bad.string(), "--D", "1.5"}).code == 3);
  CHECK_FALSE(fs::exists(bad));
}

TEST_CASE("exit codes") {
  const auto m = write_diag("e.json", {1, 2});
  SUBCASE("unknown flag") {
    const auto r = cli({"--matrix", m, "--frobnicate"});
    CHECK(r.code == 3);
    CHECK(json::parse(r.err)["error"] == "ParseError");
  }
  SUBCASE("non-numeric value") { CHECK(cli({"--matrix", m, "--k", "two"}).code == 3); }
  SUBCASE("bad enum") { CHECK(cli({"--matrix", m, "--variant", "fast"}).code == 3); }
  SUBCASE("no matrix") { CHECK(cli({}).code == 3); }
  SUBCASE("not hermitian") {
    const fs::path p = scratch() / "nh.json";
    write_matrix_file(p, ComplexMatrix::from_rows({{1.0, 2.0}, {0.0, 1.0}}));
    const auto r = cli({"--matrix", p.string()});
    CHECK(r.code == 3);
    CHECK(json::parse(r.err)["error"] == "NotHermitian");
  }
  SUBCASE("unparseable file") {
    const fs::path p = scratch() / "garbage.json";
    std::ofstream(p) << "{not json";
    CHECK(cli({"--matrix", p.string()}).code == 3);
  }
  SUBCASE("singular in min mode") {
    const auto s = write_diag("sing.json", {0, 1});
    const auto r = cli({"--matrix", s, "--mode", "min"});
    CHECK(r.code == 4);
    CHECK(json::parse(r.err)["error"] == "SingularMatrix");
  }
  SUBCASE("shot noise swamps the denominator") {
    const auto r = cli({"--matrix", m, "--shots", "10", "--k", "6", "--C", "0.05"});
    CHECK(r.code == 5);
    CHECK(json::parse(r.err)["error"] == "DenominatorTooSmall");
  }
  SUBCASE("qubit capacity") {
    const auto r = cli({"--matrix", m, "--backend", "circuit", "--k", "40", "--D", "2.5"});
    CHECK(r.code == 3);
    CHECK(json::parse(r.err)["error"] == "CapacityExceeded");
  }
  SUBCASE("help") {
    const auto r = cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--matrix") != std::string::npos);
  }
}

TEST_CASE("fixture subcommand") {
  const fs::path a = scratch() / "fx_a.json";
  const fs::path b = scratch() / "fx_b.json";
  REQUIRE(cli({"fixture", "--kind", "gapped", "--n", "6", "--seed", "3", "--params", "0.5",
               "--out", a.string()})
              .code == 0);
  REQUIRE(cli({"fixture", "--kind", "gapped", "--n", "6", "--seed", "3", "--params", "0.5",
               "--out", b.string()})
              .code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto e = eigendecompose(validate_hermitian(read_matrix_file(a), 0.0));
  CHECK(std::abs(e.eigenvalues[4] / e.dominant()) == doctest::Approx(0.5).epsilon(1e-12));

  const auto d = cli({"fixture", "--kind", "diagonal", "--n", "2", "--params", "1,2"});
  REQUIRE(d.code == 0);
  const auto m = matrix_from_json(d.out);
  CHECK(m(0, 0) == Complex(1, 0));
  CHECK(m(1, 1) == Complex(2, 0));

  CHECK(cli({"fixture", "--kind", "gapped", "--n", "4", "--params", "1.5"}).code == 3);
  CHECK(cli({"fixture", "--kind", "random_hermitian", "--n", "65"}).code == 3);
}

TEST_CASE("sweep over k on a gapped fixture") {
  const fs::path p = scratch() / "gapped.json";
  REQUIRE(cli({"fixture", "--kind", "gapped", "--n", "6", "--seed", "5", "--params", "0.5",
               "--out", p.string()})
              .code == 0);
  const auto a = validate_hermitian(read_matrix_file(p), 0.0);
  const auto oracle = eigendecompose(a);
  const auto x0 = draw_initial_vector(6, 1, oracle);
  const auto bound = convergence_bound(oracle, x0, 1e-2);

  for (std::string variant : {"improved", "naive"}) {
    const auto r = cli({"--matrix", p.string(), "--sweep-axis", "k", "--sweep-values",
                        "1,2,3,4,5,6,7,8", "--variant", variant, "--D", "1.25"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 9);
    CHECK(r.out.substr(0, r.out.find('\n')) == sweep_csv_header());
    const auto& header = rows[0];
    auto col = [&](std::string_view name) {
      return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) -
                                      header.begin());
    };
    double previous = 1e300;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& row = rows[i];
      REQUIRE(row.size() == header.size());
      CHECK(row[col("schema_version")] == "1");
      CHECK(row[col("status")] == "ok");
      const unsigned k = static_cast<unsigned>(i);
      const double err = std::stod(row[col("multiplicative_error")]);
      CHECK(err < previous);
      previous = err;
      CHECK(err < bound.bound_at(k));
      CHECK(std::stod(row[col("convergence_bound")]) == doctest::Approx(bound.bound_at(k)));
      CHECK(std::stoul(row[col("evolutions")]) == (variant == "naive" ? k : 1u));
    }
  }
}

TEST_CASE("sweep over shots") {
  const auto m = write_diag("shots.json", {0.5, 1.0});
  const auto r = cli({"--matrix", m, "--k", "2", "--D", "1.01", "--C", "0.99", "--sweep-axis",
                      "shots", "--sweep-values", "1000,10000,100000,1000000"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 5);
  std::vector<double> x, y;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    x.push_back(std::log(std::stod(rows[i][2])));
    y.push_back(std::log(std::stod(rows[i][7])));
  }
  // Least-squares slope of log std_error against log shots.
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / x.size(), my += y[i] / y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  CHECK(sxy / sxx == doctest::Approx(-0.5).epsilon(0.1));
}

TEST_CASE("sweep rows fail independently") {
  const auto m = write_diag("rows.json", {1, 2});
  const auto r = cli({"--matrix", m, "--sweep-axis", "k", "--sweep-values", "1,0,2.5,3"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[1][3] == "ok");
  CHECK(rows[2][3] == "failed");
  CHECK(rows[2].back() == "InvalidConfig");
  CHECK(rows[3][3] == "failed");
  CHECK(rows[4][3] == "ok");
}

TEST_CASE("sweep over p and b") {
  const fs::path p = scratch() / "p_axis.json";
  write_matrix_file(p, generate_fixture(FixtureKind::kGapped, 4, 1, {0.5}));
  const auto r = cli({"--matrix", p.string(), "--k", "6", "--sweep-axis", "p", "--sweep-values",
                      "0.3,0.8,1.2"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(std::stod(rows[1][6]) < std::stod(rows[2][6]));
  CHECK(rows[3][3] == "failed");
  CHECK(rows[3].back() == "BadParams");

  const auto b = cli({"--matrix", p.string(), "--k", "2", "--backend", "circuit", "--sweep-axis",
                      "b", "--sweep-values", "3,5"});
  REQUIRE(b.code == 0);
  const auto brows = parse_csv(b.out);
  CHECK(brows[1][11] == "3");
  CHECK(brows[2][11] == "5");
}

TEST_CASE("sweep to file and bad axis") {
  const auto m = write_diag("sf.json", {1, 2});
  const fs::path out = scratch() / "sweep.csv";
  REQUIRE(cli({"--matrix", m, "--sweep-axis", "k", "--sweep-values", "1,2", "--out", out.string()})
              .code == 0);
  CHECK(slurp(out).rfind(sweep_csv_header(), 0) == 0);
  CHECK(cli({"--matrix", m, "--sweep-axis", "q", "--sweep-values", "1"}).code == 3);
  CHECK(cli({"--matrix", m, "--sweep-axis", "k"}).code == 3);
}
