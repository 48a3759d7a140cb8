#pragma once

#include <complex>
#include <span>
#include <vector>

#include "rho/complex_matrix.hpp"

namespace rho::fft {

using cldouble = std::complex<long double>;

constexpr bool is_pow2(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

/// Unnormalized DFT, long double precision.
/// forward: X_m = sum_k x_k e^{-2 pi i m k / N}; inverse: conjugate kernel.
/// Radix-2 for powers of two, direct O(N^2) evaluation otherwise.
void transform(std::vector<cldouble>& data, bool inverse);

/// Unitary DFT of a double-precision vector (scale 1/sqrt(N)), computed in
/// long double and rounded once on output.
cvector unitary(std::span<const cdouble> x, bool inverse);

}  // namespace rho::fft
