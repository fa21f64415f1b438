#include "eigenpower/fixtures.hpp"

#include <cmath>
#include <string>

#include "eigenpower/error.hpp"
#include "eigenpower/random.hpp"

namespace eigenpower {

namespace {

Complex complex_normal(Philox4x32& rng) {
  const double re = rng.normal();
  return {re, rng.normal()};
}

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorCode::kBadParams, message); }

}  // namespace

std::string_view fixture_kind_name(FixtureKind k) {
  switch (k) {
    case FixtureKind::kDiagonal: return "diagonal";
    case FixtureKind::kRandomHermitian: return "random_hermitian";
    case FixtureKind::kGapped: return "gapped";
  }
  return "diagonal";
}

FixtureKind parse_fixture_kind(std::string_view name) {
  if (name == "diagonal") return FixtureKind::kDiagonal;
  if (name == "random_hermitian") return FixtureKind::kRandomHermitian;
  if (name == "gapped") return FixtureKind::kGapped;
  bad("unknown fixture kind '" + std::string(name) + "'");
}

ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  Philox4x32 rng(seed, 2);
  std::vector<CVector> cols;
  while (cols.size() < n) {
    CVector v(n);
    for (auto& x : v) x = complex_normal(rng);
    for (const auto& c : cols) {
      const Complex proj = vdot(c, v);
      for (std::size_t i = 0; i < n; ++i) v[i] -= proj * c[i];
    }
    if (norm2(v) < 1e-8) continue;
    cols.push_back(normalized(v));
  }
  ComplexMatrix q(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) q(i, j) = cols[j][i];
  return q;
}

ComplexMatrix generate_fixture(FixtureKind kind, std::size_t n, std::uint64_t seed,
                               const std::vector<double>& params) {
  if (n == 0 || n > kMaxFixtureDim) {
    bad("fixture dimension must be in [1, 64], got " + std::to_string(n));
  }
  for (double p : params)
    if (!std::isfinite(p)) bad("fixture params must be finite");

  switch (kind) {
    case FixtureKind::kDiagonal:
      if (params.size() != n) {
        bad("diagonal fixture needs " + std::to_string(n) + " params, got " +
            std::to_string(params.size()));
      }
      return ComplexMatrix::diagonal(params);

    case FixtureKind::kRandomHermitian: {
      if (params.size() > 1) bad("random_hermitian takes at most one param (scale)");
      const double scale = params.empty() ? 1.0 : params[0];
      Philox4x32 rng(seed, 1);
      ComplexMatrix g(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = complex_normal(rng);
      ComplexMatrix h = (g + g.adjoint()).scaled(0.5 * scale);
      for (std::size_t i = 0; i < n; ++i) h(i, i) = h(i, i).real();
      return h;
    }

    case FixtureKind::kGapped: {
      if (params.empty() || params.size() > 2) bad("gapped fixture takes [p] or [p, scale]");
      const double p = params[0];
      const double scale = params.size() > 1 ? params[1] : 1.0;
      if (!(p > 0.0 && p < 1.0)) bad("gapped fixture needs p in (0, 1)");
      if (!(scale > 0.0)) bad("gapped fixture needs scale > 0");
      if (n < 2) bad("gapped fixture needs n >= 2");
      std::vector<double> values(n);
      Philox4x32 rng(seed, 3);
      for (std::size_t i = 0; i + 2 < n; ++i) values[i] = (2.0 * rng.uniform() - 1.0) * 0.9 * p * scale;
      values[n - 2] = p * scale;
      values[n - 1] = scale;
      const ComplexMatrix q = random_unitary(n, seed);
      const ComplexMatrix a = q * ComplexMatrix::diagonal(values) * q.adjoint();
      return symmetrized(a).matrix();
    }
  }
  bad("unknown fixture kind");
}

}  // namespace eigenpower
