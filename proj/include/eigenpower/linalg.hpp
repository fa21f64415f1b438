#pragma once

// Dense complex linear algebra for desk-scale Hermitian problems (n <= 64).
//
// The eigendecomposition here is the brute-force oracle every estimator in the
// project is checked against, so it is implemented directly (cyclic Jacobi)
// rather than borrowed from the code paths under test.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace eigenpower {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// Square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  // Throws DimensionMismatch unless entries.size() == dim * dim.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  // Rejects non-square nested input with NotSquare.
  static ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) {
    return entries_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  std::span<const Complex> entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix scaled(Complex factor) const;
  CVector apply(std::span<const Complex> v) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// max |(U^dagger U - I)_ij|.
double unitarity_residual(const ComplexMatrix& u);
// max |A_ij - conj(A_ji)|.
double hermiticity_residual(const ComplexMatrix& m);
// Max absolute row sum; bounds every eigenvalue magnitude.
double gershgorin_bound(const ComplexMatrix& m);

// Vector helpers. vdot(a, b) = sum conj(a_i) b_i.
Complex vdot(std::span<const Complex> a, std::span<const Complex> b);
double norm2(std::span<const Complex> v);
CVector normalized(std::span<const Complex> v);

class HermitianMatrix {
 public:
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.dim(); }
  double hermiticity_tol() const { return tol_; }

 private:
  HermitianMatrix(ComplexMatrix m, double tol) : matrix_(std::move(m)), tol_(tol) {}
  friend HermitianMatrix validate_hermitian(const ComplexMatrix& m, double tol);

  ComplexMatrix matrix_;
  double tol_ = 0.0;
};

// Eigenvalues sorted ascending by magnitude (ties: ascending signed value);
// column i of `eigenvectors` is the unit eigenvector for eigenvalues[i].
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  std::size_t dim() const { return eigenvalues.size(); }
  CVector eigenvector(std::size_t i) const;
  // Largest-magnitude eigenvalue, lambda_n.
  double dominant() const { return eigenvalues.back(); }
};

inline constexpr double kJacobiTolerance = 1e-14;
inline constexpr double kDegeneracyTolerance = 1e-9;

HermitianMatrix validate_hermitian(const ComplexMatrix& m, double tol = 1e-12);

// Validated (M + M^dagger) / 2, for matrices Hermitian up to rounding.
HermitianMatrix symmetrized(const ComplexMatrix& m);

EigenDecomposition eigendecompose(const HermitianMatrix& a);

// sum_i lambda_i |E_i><E_i|.
ComplexMatrix reconstruct(const EigenDecomposition& eig);

// True when |lambda_n| - |lambda_{n-1}| < 1e-9 |lambda_n|.
bool top_is_degenerate(const EigenDecomposition& eig);

// exp(-i A t) built from the eigendecomposition.
ComplexMatrix matrix_exponential_unitary(const HermitianMatrix& a, double t);
ComplexMatrix matrix_exponential_unitary(const EigenDecomposition& eig, double t);

// singular_tol defaults to 1e-10 |lambda_n|.
HermitianMatrix inverse(const HermitianMatrix& a,
                        std::optional<double> singular_tol = std::nullopt);

// [[0, A], [A^dagger, 0]].
HermitianMatrix hermitian_embedding(const ComplexMatrix& m);

// A - cI.
HermitianMatrix shift(const HermitianMatrix& a, double c);

// Zero-pads A to the next power-of-two dimension.
HermitianMatrix pad_to_power_of_two(const HermitianMatrix& a);

}  // namespace eigenpower
