#include "eigenpower/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eigenpower/error.hpp"

namespace eigenpower {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix of dimension " + std::to_string(dim_) + " needs " +
                    std::to_string(dim_ * dim_) + " entries, got " +
                    std::to_string(entries_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
  const std::size_t n = rows.size();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::kNotSquare, "row " + std::to_string(i) + " has " +
                                             std::to_string(rows[i].size()) +
                                             " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (rhs.dim_ != dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix product dimension mismatch");
  }
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const Complex a = (*this)(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  if (rhs.dim_ != dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix sum dimension mismatch");
  }
  ComplexMatrix out(*this);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += rhs.entries_[i];
  return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  return *this + rhs.scaled(-1.0);
}

ComplexMatrix ComplexMatrix::scaled(Complex factor) const {
  ComplexMatrix out(*this);
  for (auto& e : out.entries_) e *= factor;
  return out;
}

CVector ComplexMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix-vector dimension mismatch");
  }
  CVector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < dim_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const auto& e : m.entries()) best = std::max(best, std::abs(e));
  return best;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "cannot compare matrices of different size");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    best = std::max(best, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return best;
}

double unitarity_residual(const ComplexMatrix& u) {
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.dim()));
}

double hermiticity_residual(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

double gershgorin_bound(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) row += std::abs(m(i, j));
    best = std::max(best, row);
  }
  return best;
}

Complex vdot(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "inner product of vectors of different length");
  }
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm2(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

CVector normalized(std::span<const Complex> v) {
  const double nrm = norm2(v);
  if (nrm == 0.0) throw Error(ErrorCode::kZeroVector, "cannot normalize the zero vector");
  CVector out(v.begin(), v.end());
  for (auto& x : out) x /= nrm;
  return out;
}

CVector EigenDecomposition::eigenvector(std::size_t i) const {
  CVector out(dim());
  for (std::size_t r = 0; r < dim(); ++r) out[r] = eigenvectors(r, i);
  return out;
}

HermitianMatrix validate_hermitian(const ComplexMatrix& m, double tol) {
  const double residual = hermiticity_residual(m);
  if (!(residual <= tol)) {
    throw Error(ErrorCode::kNotHermitian,
                "matrix is not Hermitian: max asymmetry " + std::to_string(residual) +
                    " exceeds tolerance " + std::to_string(tol));
  }
  return HermitianMatrix(m, tol);
}

namespace {

// Symmetrizes and forces a real diagonal.
ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    }
    out(i, i) = out(i, i).real();
  }
  return out;
}

double off_diagonal_norm(const ComplexMatrix& w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = 0; j < w.dim(); ++j)
      if (i != j) acc += std::norm(w(i, j));
  return std::sqrt(acc);
}

double frobenius_norm(const ComplexMatrix& w) {
  double acc = 0.0;
  for (const auto& e : w.entries()) acc += std::norm(e);
  return std::sqrt(acc);
}

// Rotates the largest component of column `col` onto the positive real axis.
void fix_phase(ComplexMatrix& v, std::size_t col) {
  const std::size_t n = v.dim();
  double best = 0.0;
  for (std::size_t r = 0; r < n; ++r) best = std::max(best, std::abs(v(r, col)));
  std::size_t pivot = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (std::abs(v(r, col)) >= best * (1.0 - 1e-12)) {
      pivot = r;
      break;
    }
  }
  const Complex phase = std::conj(v(pivot, col)) / std::abs(v(pivot, col));
  for (std::size_t r = 0; r < n; ++r) v(r, col) *= phase;
  v(pivot, col) = v(pivot, col).real();
}

}  // namespace

HermitianMatrix symmetrized(const ComplexMatrix& m) {
  return validate_hermitian(hermitian_part(m), 0.0);
}

EigenDecomposition eigendecompose(const HermitianMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix w = hermitian_part(a.matrix());
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double frob = frobenius_norm(w);
  const std::size_t cap = 100 * n * n;
  std::size_t rotations = 0;

  // Cyclic Jacobi: each rotation G = diag(1, e^{-i phi}) * R(c, s) zeroes
  // w(p, q) after the phase factor has made it real.
  while (frob > 0.0 && off_diagonal_norm(w) > kJacobiTolerance * frob) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = w(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300 || r < 1e-20 * frob) {
          w(p, q) = 0.0;
          w(q, p) = 0.0;
          continue;
        }
        if (++rotations > cap) {
          throw Error(ErrorCode::kConvergenceFailure,
                      "Jacobi diagonalization exceeded " + std::to_string(cap) + " rotations");
        }
        const double app = w(p, p).real();
        const double aqq = w(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex phase_conj = std::conj(apq) / r;

        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * phase_conj;
        const Complex gqq = c * phase_conj;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = w(k, p);
          const Complex akq = w(k, q);
          w(k, p) = akp * gpp + akq * gqp;
          w(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = w(p, k);
          const Complex aqk = w(q, k);
          w(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          w(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        w(p, p) = w(p, p).real();
        w(q, q) = w(q, q).real();

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = w(i, i).real();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(raw[x]) < std::abs(raw[y]);
  });

  // Equal magnitudes (e.g. +v and -v) are ordered by signed value.
  double scale = 0.0;
  for (double x : raw) scale = std::max(scale, std::abs(x));
  const double tie_tol = 1e-12 * (scale > 0.0 ? scale : 1.0);
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && std::abs(raw[order[end]]) - std::abs(raw[order[start]]) <= tie_tol) ++end;
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                     order.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t x, std::size_t y) { return raw[x] < raw[y]; });
    start = end;
  }

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.eigenvalues[i] = raw[order[i]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, i) = v(r, order[i]);
    fix_phase(out.eigenvectors, i);
  }
  return out;
}

ComplexMatrix reconstruct(const EigenDecomposition& eig) {
  const std::size_t n = eig.dim();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Complex left = eig.eigenvalues[k] * eig.eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += left * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

bool top_is_degenerate(const EigenDecomposition& eig) {
  const std::size_t n = eig.dim();
  if (n < 2) return false;
  const double top = std::abs(eig.eigenvalues[n - 1]);
  const double next = std::abs(eig.eigenvalues[n - 2]);
  return top - next < kDegeneracyTolerance * top;
}

ComplexMatrix matrix_exponential_unitary(const EigenDecomposition& eig, double t) {
  const std::size_t n = eig.dim();
  if (t == 0.0) return ComplexMatrix::identity(n);
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex phase = std::polar(1.0, -eig.eigenvalues[k] * t);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex left = phase * eig.eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += left * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

ComplexMatrix matrix_exponential_unitary(const HermitianMatrix& a, double t) {
  return matrix_exponential_unitary(eigendecompose(a), t);
}

HermitianMatrix inverse(const HermitianMatrix& a, std::optional<double> singular_tol) {
  const EigenDecomposition eig = eigendecompose(a);
  const std::size_t n = eig.dim();
  if (n == 0) return a;
  const double tol = singular_tol.value_or(1e-10 * std::abs(eig.dominant()));
  if (std::abs(eig.eigenvalues.front()) <= tol) {
    throw Error(ErrorCode::kSingularMatrix,
                "matrix is singular: smallest |eigenvalue| " +
                    std::to_string(std::abs(eig.eigenvalues.front())) + " <= " +
                    std::to_string(tol));
  }
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double inv = 1.0 / eig.eigenvalues[k];
    for (std::size_t i = 0; i < n; ++i) {
      const Complex left = inv * eig.eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += left * std::conj(eig.eigenvectors(j, k));
    }
  }
  return validate_hermitian(hermitian_part(out), 0.0);
}

HermitianMatrix hermitian_embedding(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix out(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, n + j) = m(i, j);
      out(n + j, i) = std::conj(m(i, j));
    }
  }
  return validate_hermitian(out, 1e-14);
}

HermitianMatrix shift(const HermitianMatrix& a, double c) {
  ComplexMatrix out = a.matrix();
  for (std::size_t i = 0; i < out.dim(); ++i) out(i, i) -= c;
  return validate_hermitian(out, a.hermiticity_tol());
}

HermitianMatrix pad_to_power_of_two(const HermitianMatrix& a) {
  std::size_t padded = 1;
  while (padded < a.dim()) padded <<= 1;
  if (padded == a.dim()) return a;
  ComplexMatrix out(padded);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = a.matrix()(i, j);
  return validate_hermitian(out, a.hermiticity_tol());
}

}  // namespace eigenpower
