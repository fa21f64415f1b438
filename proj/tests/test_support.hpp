#pragma once

// Small generators shared by the unit tests.

#include <cmath>
#include <cstdint>

#include "eigenpower/linalg.hpp"
#include "eigenpower/random.hpp"

namespace eigenpower::testing {

inline CVector random_vector(std::size_t n, std::uint64_t seed) {
  Philox4x32 rng(seed, 99);
  CVector v(n);
  for (auto& x : v) {
    const double re = rng.normal();
    x = Complex(re, rng.normal());
  }
  return v;
}

inline CVector random_state(std::size_t n, std::uint64_t seed) {
  return normalized(random_vector(n, seed));
}

inline ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  const CVector v = random_vector(n * n, seed);
  return ComplexMatrix(n, v);
}

// (G + G^dagger) / 2 for a complex Gaussian G.
inline HermitianMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  const ComplexMatrix g = random_matrix(n, seed);
  return symmetrized((g + g.adjoint()).scaled(0.5));
}

// Gram-Schmidt on Gaussian columns.
inline ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  const ComplexMatrix g = random_matrix(n, seed);
  ComplexMatrix q(n);
  for (std::size_t c = 0; c < n; ++c) {
    CVector col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = g(r, c);
    for (std::size_t p = 0; p < c; ++p) {
      Complex dot{};
      for (std::size_t r = 0; r < n; ++r) dot += std::conj(q(r, p)) * col[r];
      for (std::size_t r = 0; r < n; ++r) col[r] -= dot * q(r, p);
    }
    col = normalized(col);
    for (std::size_t r = 0; r < n; ++r) q(r, c) = col[r];
  }
  return q;
}

// Q diag(values) Q^dagger with a random unitary Q.
inline HermitianMatrix with_spectrum(const std::vector<double>& values, std::uint64_t seed) {
  const ComplexMatrix q = random_unitary(values.size(), seed);
  return symmetrized(q * ComplexMatrix::diagonal(values) * q.adjoint());
}

inline double vector_distance(std::span<const Complex> a, std::span<const Complex> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
  return std::sqrt(acc);
}

}  // namespace eigenpower::testing
