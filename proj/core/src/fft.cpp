#include "rho/fft.hpp"

#include <cmath>

namespace rho::fft {

namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559L;

void radix2(std::vector<cldouble>& a, bool inverse) {
  const std::size_t n = a.size();
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const long double sgn = inverse ? 1.0L : -1.0L;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const long double ang = sgn * kTwoPi / static_cast<long double>(len);
    // twiddle table per stage, each root from sin/cos directly
    std::vector<cldouble> w(len / 2);
    for (std::size_t k = 0; k < len / 2; ++k) {
      const long double ph = ang * static_cast<long double>(k);
      w[k] = {std::cos(ph), std::sin(ph)};
    }
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cldouble u = a[i + k];
        const cldouble v = a[i + k + len / 2] * w[k];
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

void direct(std::vector<cldouble>& a, bool inverse) {
  const std::size_t n = a.size();
  const long double sgn = inverse ? 1.0L : -1.0L;
  std::vector<cldouble> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    cldouble acc = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const long double ph =
          sgn * kTwoPi * static_cast<long double>((m * k) % n) / static_cast<long double>(n);
      acc += a[k] * cldouble{std::cos(ph), std::sin(ph)};
    }
    out[m] = acc;
  }
  a = std::move(out);
}

}  // namespace

void transform(std::vector<cldouble>& data, bool inverse) {
  if (data.size() < 2) return;
  if (is_pow2(data.size()))
    radix2(data, inverse);
  else
    direct(data, inverse);
}

cvector unitary(std::span<const cdouble> x, bool inverse) {
  std::vector<cldouble> a(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) a[i] = cldouble(x[i]);
  transform(a, inverse);
  const long double scale = 1.0L / std::sqrt(static_cast<long double>(x.size()));
  cvector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = {static_cast<double>(a[i].real() * scale), static_cast<double>(a[i].imag() * scale)};
  return out;
}

}  // namespace rho::fft
