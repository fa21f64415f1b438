#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "eigenpower/error.hpp"
#include "eigenpower/linalg.hpp"
#include "test_support.hpp"

using namespace eigenpower;
using eigenpower::testing::random_hermitian;
using eigenpower::testing::random_matrix;
using eigenpower::testing::with_spectrum;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an eigenpower::Error");
  return ErrorCode::kIoError;
}

double max_residual(const HermitianMatrix& a, const EigenDecomposition& e) {
  double worst = 0.0;
  for (std::size_t i = 0; i < e.dim(); ++i) {
    const CVector v = e.eigenvector(i);
    CVector av = a.matrix().apply(v);
    for (std::size_t r = 0; r < v.size(); ++r) av[r] -= e.eigenvalues[i] * v[r];
    worst = std::max(worst, norm2(av));
  }
  return worst;
}

double spectral_norm(const HermitianMatrix& a) {
  return std::abs(eigendecompose(a).dominant());
}

}  // namespace

TEST_CASE("validate_hermitian") {
  CHECK_NOTHROW(validate_hermitian(ComplexMatrix::identity(2), 1e-12));
  CHECK(code_of([] {
          validate_hermitian(ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}), 1e-12);
        }) == ErrorCode::kNotHermitian);
  const ComplexMatrix g = random_matrix(5, 3);
  CHECK_NOTHROW(validate_hermitian((g + g.adjoint()).scaled(0.5), 1e-12));
  CHECK(code_of([] { ComplexMatrix::from_rows({{1.0, 2.0}, {3.0}}); }) ==
        ErrorCode::kNotSquare);
  CHECK(code_of([] { ComplexMatrix(2, CVector(3)); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("eigendecompose diagonal") {
  const std::vector<double> d{3, 1, 2};
  const auto e = eigendecompose(validate_hermitian(ComplexMatrix::diagonal(d)));
  CHECK(e.eigenvalues == std::vector<double>{1, 2, 3});
  CHECK(std::abs(e.eigenvectors(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(e.eigenvectors(2, 1) - 1.0) < 1e-15);
  CHECK(std::abs(e.eigenvectors(0, 2) - 1.0) < 1e-15);
}

TEST_CASE("eigendecompose pauli x") {
  const auto e =
      eigendecompose(validate_hermitian(ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}})));
  CHECK(e.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(e.eigenvalues[1] == doctest::Approx(1.0));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(e.eigenvectors(0, 1) - h) < 1e-14);
  CHECK(std::abs(e.eigenvectors(1, 1) - h) < 1e-14);
  CHECK(std::abs(std::abs(e.eigenvectors(0, 0)) - h) < 1e-14);
  CHECK(std::abs(e.eigenvectors(0, 0) + e.eigenvectors(1, 0)) < 1e-14);
}

TEST_CASE("eigendecompose random matrices: residual, orthonormality, ordering") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (std::size_t n : {1u, 2u, 5u, 8u, 16u}) {
      const auto a = random_hermitian(n, seed * 31 + n);
      const auto e = eigendecompose(a);
      const double scale = std::max(1.0, max_abs(a.matrix()));
      CHECK(max_residual(a, e) < 1e-10 * scale);
      CHECK(max_abs_diff(e.eigenvectors.adjoint() * e.eigenvectors,
                         ComplexMatrix::identity(n)) < 1e-10);
      for (std::size_t i = 1; i < n; ++i) {
        CHECK(std::abs(e.eigenvalues[i - 1]) <= std::abs(e.eigenvalues[i]));
      }
      CHECK(max_abs_diff(reconstruct(e), a.matrix()) <= 1e-10 * max_abs(a.matrix()));
    }
  }
}

TEST_CASE("eigendecompose is deterministic and breaks magnitude ties by sign") {
  const auto a = random_hermitian(6, 11);
  const auto e1 = eigendecompose(a);
  const auto e2 = eigendecompose(a);
  CHECK(e1.eigenvalues == e2.eigenvalues);
  CHECK(max_abs_diff(e1.eigenvectors, e2.eigenvectors) == 0.0);

  const std::vector<double> d{2, -2, 1};
  const auto t = eigendecompose(validate_hermitian(ComplexMatrix::diagonal(d)));
  CHECK(t.eigenvalues == std::vector<double>{1, -2, 2});
}

TEST_CASE("degeneracy detection") {
  const std::vector<double> deg{2, 2, 1};
  CHECK(top_is_degenerate(eigendecompose(validate_hermitian(ComplexMatrix::diagonal(deg)))));
  const std::vector<double> sign{-2, 1, 2};
  CHECK(top_is_degenerate(eigendecompose(validate_hermitian(ComplexMatrix::diagonal(sign)))));
  const std::vector<double> gap{1, 2, 3};
  CHECK_FALSE(top_is_degenerate(eigendecompose(validate_hermitian(ComplexMatrix::diagonal(gap)))));
}

TEST_CASE("matrix exponential") {
  const auto a = random_hermitian(4, 5);
  CHECK(max_abs_diff(matrix_exponential_unitary(a, 0.0), ComplexMatrix::identity(4)) == 0.0);

  const std::vector<double> d{std::numbers::pi, 0.0};
  const auto u = matrix_exponential_unitary(validate_hermitian(ComplexMatrix::diagonal(d)), 1.0);
  CHECK(std::abs(u(0, 0) + 1.0) < 1e-12);
  CHECK(std::abs(u(1, 1) - 1.0) < 1e-12);
  CHECK(std::abs(u(0, 1)) < 1e-12);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto b = random_hermitian(6, seed);
    const auto v = matrix_exponential_unitary(b, 0.7);
    CHECK(unitarity_residual(v) < 1e-10);
    CHECK(max_abs_diff(v * matrix_exponential_unitary(b, -0.7), ComplexMatrix::identity(6)) <
          1e-10);
  }
}

TEST_CASE("matrix exponential matches a Taylor series") {
  const auto a = random_hermitian(4, 77);
  const double t = 0.3;
  const ComplexMatrix x = a.matrix().scaled(Complex(0.0, -t));
  ComplexMatrix term = ComplexMatrix::identity(4);
  ComplexMatrix sum = term;
  for (int k = 1; k < 40; ++k) {
    term = (term * x).scaled(1.0 / k);
    sum = sum + term;
  }
  CHECK(max_abs_diff(sum, matrix_exponential_unitary(a, t)) < 1e-12);
}

TEST_CASE("inverse") {
  const std::vector<double> d{2, 4};
  const auto inv = inverse(validate_hermitian(ComplexMatrix::diagonal(d)));
  CHECK(std::abs(inv.matrix()(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(inv.matrix()(1, 1) - 0.25) < 1e-15);
  CHECK(std::abs(inv.matrix()(0, 1)) < 1e-15);

  const auto id = inverse(validate_hermitian(ComplexMatrix::identity(3)));
  CHECK(max_abs_diff(id.matrix(), ComplexMatrix::identity(3)) < 1e-15);

  const auto a = with_spectrum({1.0, -2.0, 3.0, 1.5}, 9);
  CHECK(max_abs_diff(a.matrix() * inverse(a).matrix(), ComplexMatrix::identity(4)) < 1e-8);
  const auto e = eigendecompose(inverse(a));
  CHECK(e.eigenvalues.back() == doctest::Approx(1.0));
  CHECK(e.eigenvalues.front() == doctest::Approx(1.0 / 3.0));

  const std::vector<double> s{1.0, 0.0};
  CHECK(code_of([&] { inverse(validate_hermitian(ComplexMatrix::diagonal(s))); }) ==
        ErrorCode::kSingularMatrix);
}

TEST_CASE("hermitian embedding") {
  const auto one = hermitian_embedding(ComplexMatrix::from_rows({{1.0}}));
  CHECK(max_abs_diff(one.matrix(), ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}})) == 0.0);
  CHECK(max_abs(hermitian_embedding(ComplexMatrix(3)).matrix()) == 0.0);
  CHECK(hermitian_embedding(ComplexMatrix(3)).dim() == 6);

  // Singular values from the eigenvalues of A^dagger A.
  const ComplexMatrix a = random_matrix(2, 17);
  const auto ata = eigendecompose(symmetrized(a.adjoint() * a));
  std::vector<double> sigma;
  for (double v : ata.eigenvalues) sigma.push_back(std::sqrt(std::max(0.0, v)));
  const auto emb = eigendecompose(hermitian_embedding(a));
  std::vector<double> got = emb.eigenvalues;
  std::sort(got.begin(), got.end());
  std::sort(sigma.begin(), sigma.end());
  CHECK(got[0] == doctest::Approx(-sigma[1]).epsilon(1e-10));
  CHECK(got[1] == doctest::Approx(-sigma[0]).epsilon(1e-10));
  CHECK(got[2] == doctest::Approx(sigma[0]).epsilon(1e-10));
  CHECK(got[3] == doctest::Approx(sigma[1]).epsilon(1e-10));
}

TEST_CASE("embedding of a Hermitian matrix has spectrum +-|lambda|") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto a = random_hermitian(4, seed + 300);
    const auto e = eigendecompose(a);
    const auto emb = eigendecompose(hermitian_embedding(a.matrix()));
    for (std::size_t i = 0; i < 4; ++i) {
      const double m = std::abs(e.eigenvalues[i]);
      CHECK(std::abs(std::abs(emb.eigenvalues[2 * i]) - m) < 1e-10);
      CHECK(std::abs(std::abs(emb.eigenvalues[2 * i + 1]) - m) < 1e-10);
      CHECK(emb.eigenvalues[2 * i] == doctest::Approx(-emb.eigenvalues[2 * i + 1]));
    }
  }
}

TEST_CASE("shift") {
  const std::vector<double> d{1, 2};
  const auto s = shift(validate_hermitian(ComplexMatrix::diagonal(d)), 1.0);
  CHECK(s.matrix()(0, 0) == Complex(0.0));
  CHECK(s.matrix()(1, 1) == Complex(1.0));
  const auto a = random_hermitian(5, 21);
  CHECK(max_abs_diff(shift(a, 0.0).matrix(), a.matrix()) == 0.0);

  const auto e = eigendecompose(a);
  const auto es = eigendecompose(shift(a, 5.0));
  std::vector<double> want = e.eigenvalues, got = es.eigenvalues;
  for (auto& x : want) x -= 5.0;
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-10);
}

TEST_CASE("gershgorin bound dominates the spectrum") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto a = random_hermitian(6, seed + 50);
    CHECK(spectral_norm(a) <= gershgorin_bound(a.matrix()) + 1e-12);
  }
}

TEST_CASE("padding keeps the spectrum and appends zeros") {
  const auto a = random_hermitian(3, 8);
  const auto p = pad_to_power_of_two(a);
  CHECK(p.dim() == 4);
  const auto e = eigendecompose(p);
  CHECK(std::abs(e.eigenvalues.front()) < 1e-12);
  CHECK(e.eigenvalues.back() == doctest::Approx(eigendecompose(a).dominant()));
}
