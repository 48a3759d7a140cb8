#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace rho::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer. Statistically strong enough for simulation streams
/// and fully deterministic across platforms.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Counter-based pseudo-random stream (SplitMix64: Weyl counter + finalizer).
///
/// Streams are keyed by (seed, domain, index) so that e.g. the i-th ensemble
/// member always sees the same draws no matter in which order members are
/// processed. Distinct domains decorrelate different uses of the same seed.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(mix64(seed)) {}

  static Stream keyed(std::uint64_t seed, std::uint64_t domain, std::uint64_t index) {
    Stream s(0);
    s.state_ = mix64(mix64(seed ^ mix64(domain)) + (index + 1) * kGolden);
    return s;
  }

  std::uint64_t next_u64() noexcept {
    state_ += kGolden;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (pairs cached).
  double next_gaussian() noexcept {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  /// Complex standard normal, E|z|^2 = 1.
  std::complex<double> next_complex_gaussian() noexcept {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return {re * 0.7071067811865476, im * 0.7071067811865476};
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

// Domain tags used across the library; callers may define their own.
inline constexpr std::uint64_t kDomainMeasurement = 0x6d656173757265ull;  // "measure"
inline constexpr std::uint64_t kDomainPartition = 0x706172746974ull;      // "partit"
inline constexpr std::uint64_t kDomainDensity = 0x64656e73697479ull;      // "density"
inline constexpr std::uint64_t kDomainUnitary = 0x756e6974617279ull;      // "unitary"

}  // namespace rho::rng
