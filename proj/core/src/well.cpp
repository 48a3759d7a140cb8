#include <cmath>
#include <numbers>

#include "rho/errors.hpp"
#include "rho/grid.hpp"

namespace rho {

namespace {

constexpr double kPi = std::numbers::pi;

// |phi_n(p)|^2 = g(k)^2 / (2 pi hbar a) with k = p/hbar, kappa = n pi / 2a,
// g(k) = 2 kappa f(ka) / (kappa^2 - k^2), f = cos (odd n) or sin (even n).
// The density is even in p. At |p| = kappa hbar both f and the denominator
// vanish; with d = |k| - kappa the amplitude reduces to
//   |g| = 2 kappa |sin(d a) / d| / (kappa + |k|)
// which is evaluated directly (limit a at d = 0) inside a window around the
// singularity.
double density_at(double a, std::size_t n, double p, double hbar) {
  const double kappa = static_cast<double>(n) * kPi / (2.0 * a);
  const double k = p / hbar;
  const double norm = 1.0 / (2.0 * kPi * hbar * a);

  const double dp = std::abs(p) - kappa * hbar;
  if (std::abs(dp) < 1e-6) {
    const double d = dp / hbar;
    const double sinc = (d == 0.0) ? a : std::sin(d * a) / d;
    const double g = 2.0 * kappa * sinc / (kappa + std::abs(k));
    return norm * g * g;
  }

  const double fa = (n % 2 == 1) ? std::cos(k * a) : std::sin(k * a);
  const double g = 2.0 * kappa * fa / (kappa * kappa - k * k);
  return norm * g * g;
}

}  // namespace

WellEigenstate well_eigenstate(const GridSystem& g, std::size_t n) {
  require(g.boundary == Boundary::hard_wall, errc::wrong_boundary,
          "well eigenstate needs a hard-wall grid");
  require(n >= 1, errc::invalid_mode, "mode number starts at 1");
  require(n <= g.points, errc::invalid_mode, "mode number exceeds grid resolution");
  const double a = g.half_width();
  WaveVector w{g, cvector(g.points)};
  const double kappa = static_cast<double>(n) * kPi / (2.0 * a);
  const double amp = 1.0 / std::sqrt(a);
  for (std::size_t i = 0; i < g.points; ++i) {
    const double x = g.x_samples[i];
    w.amplitudes[i] = (n % 2 == 1) ? amp * std::cos(kappa * x) : amp * std::sin(kappa * x);
  }
  // discrete renormalization (the sampled sine sums are exact up to roundoff)
  long double s = 0;
  for (const auto& z : w.amplitudes) s += (long double)std::norm(z);
  const double scale = 1.0 / static_cast<double>(std::sqrt(s * w.grid.dx));
  for (auto& z : w.amplitudes) z *= scale;

  const double nd = static_cast<double>(n);
  const double energy = nd * nd * kPi * kPi * g.hbar * g.hbar / (8.0 * g.mass * a * a);
  return {std::move(w), energy};
}

std::vector<double> well_momentum_density(double half_width, std::size_t n,
                                          std::span<const double> p_samples, double hbar) {
  require(half_width > 0 && hbar > 0, errc::invalid_argument,
          "half_width and hbar must be positive");
  require(n >= 1, errc::invalid_mode, "mode number starts at 1");
  std::vector<double> out;
  out.reserve(p_samples.size());
  for (double p : p_samples) {
    require(std::isfinite(p), errc::non_finite, "momentum sample is not finite");
    out.push_back(density_at(half_width, n, p, hbar));
  }
  return out;
}

}  // namespace rho
