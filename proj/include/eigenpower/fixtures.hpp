#pragma once

// Deterministic test matrices.

#include <cstdint>
#include <string_view>
#include <vector>

#include "eigenpower/linalg.hpp"

namespace eigenpower {

enum class FixtureKind { kDiagonal, kRandomHermitian, kGapped };

std::string_view fixture_kind_name(FixtureKind k);
// "diagonal", "random_hermitian", "gapped"; BadParams otherwise.
FixtureKind parse_fixture_kind(std::string_view name);

inline constexpr std::size_t kMaxFixtureDim = 64;

// diagonal:         params = the n diagonal entries.
// random_hermitian: params = [] or [scale]; (G + G^dagger) / 2 times scale,
//                   G with complex standard normal entries.
// gapped:           params = [p] or [p, scale]; lambda_n = scale,
//                   lambda_{n-1} = p * scale, the rest uniform in
//                   (-0.9 p scale, 0.9 p scale), rotated by a random unitary.
// BadParams on n == 0, n > 64 or malformed params.
ComplexMatrix generate_fixture(FixtureKind kind, std::size_t n, std::uint64_t seed,
                               const std::vector<double>& params);

// Haar-like unitary from Gram-Schmidt on complex Gaussian columns.
ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed);

}  // namespace eigenpower
