#include "rho/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rho/errors.hpp"
#include "rho/fft.hpp"

namespace rho {

namespace {

constexpr double kPi = std::numbers::pi;

void check_ring(const GridSystem& g, const char* what) {
  require(g.boundary == Boundary::ring, errc::wrong_boundary, std::string(what) + " needs a ring grid");
}

// FFT index m -> mode number j in {-N/2+1, ..., N/2}
long mode_of_index(std::size_t m, std::size_t n) {
  return (m <= n / 2) ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
}

// Circulant conjugation F^dagger diag(spec) F: entry (r, c) depends on
// (r - c) mod N and comes from one inverse transform of the spectrum.
ComplexMatrix circulant_from_spectrum(const std::vector<double>& spec) {
  const std::size_t n = spec.size();
  std::vector<fft::cldouble> f(n);
  for (std::size_t m = 0; m < n; ++m) f[m] = spec[m];
  fft::transform(f, true);  // sum_m spec_m e^{+2 pi i m d / N}
  cvector ring(n);
  for (std::size_t d = 0; d < n; ++d)
    ring[d] = {static_cast<double>(f[d].real() / n), static_cast<double>(f[d].imag() / n)};
  // enforce exact conjugate symmetry (the spectrum is real)
  ring[0] = {ring[0].real(), 0.0};
  for (std::size_t d = 1; d <= n - d; ++d) {
    if (d == n - d) {
      ring[d] = {ring[d].real(), 0.0};
      continue;
    }
    ring[n - d] = std::conj(ring[d]);
  }
  ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = ring[(r + n - c) % n];
  return m;
}

// Plane-wave eigenvector of FFT index m: v_i = e^{+2 pi i m i / N} / sqrt(N).
cvector fourier_column(std::size_t m, std::size_t n) {
  cvector v(n);
  const long double scale = 1.0L / std::sqrt(static_cast<long double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const long double ph =
        2.0L * std::numbers::pi_v<long double> * static_cast<long double>((m * i) % n) / n;
    v[i] = {static_cast<double>(std::cos(ph) * scale), static_cast<double>(std::sin(ph) * scale)};
  }
  return v;
}

SpectralDecomposition ring_decomposition(const GridSystem& g, bool momentum) {
  const std::size_t n = g.points;
  std::vector<std::pair<double, std::size_t>> order;  // (eigenvalue, fft index)
  order.reserve(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double k = 2.0 * kPi * static_cast<double>(mode_of_index(m, n)) / g.length;
    const double pv = g.hbar * k;
    order.push_back({momentum ? pv : pv * pv / (2.0 * g.mass), m});
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<double> eigs(n);
  ComplexMatrix v(n);
  for (std::size_t col = 0; col < n; ++col) {
    eigs[col] = order[col].first;
    const cvector vec = fourier_column(order[col].second, n);
    for (std::size_t i = 0; i < n; ++i) v(i, col) = vec[i];
  }
  const double tol = default_group_tol(eigs);
  return SpectralDecomposition::from_parts(std::move(eigs), std::move(v), tol);
}

void normalize_wave(WaveVector& w) {
  long double s = 0;
  for (const auto& z : w.amplitudes) s += (long double)std::norm(z);
  s *= w.grid.dx;
  const double scale = 1.0 / static_cast<double>(std::sqrt(s));
  for (auto& z : w.amplitudes) z *= scale;
}

}  // namespace

GridSystem GridSystem::ring(double length, std::size_t points, double mass, double hbar) {
  require(length > 0 && mass > 0 && hbar > 0, errc::invalid_grid, "length, mass, hbar must be positive");
  require(points >= 16, errc::invalid_grid, "need at least 16 grid points");
  require(points % 2 == 0, errc::invalid_grid, "ring grid needs an even point count");
  GridSystem g{length, points, Boundary::ring, mass, hbar, length / static_cast<double>(points), {}};
  g.x_samples.resize(points);
  for (std::size_t i = 0; i < points; ++i)
    g.x_samples[i] = -0.5 * length + static_cast<double>(i) * g.dx;
  return g;
}

GridSystem GridSystem::hard_wall(double half_width, std::size_t points, double mass, double hbar) {
  require(half_width > 0 && mass > 0 && hbar > 0, errc::invalid_grid,
          "half_width, mass, hbar must be positive");
  require(points >= 16, errc::invalid_grid, "need at least 16 grid points");
  const double length = 2.0 * half_width;
  GridSystem g{length, points, Boundary::hard_wall, mass, hbar,
               length / static_cast<double>(points + 1), {}};
  g.x_samples.resize(points);
  for (std::size_t i = 0; i < points; ++i)
    g.x_samples[i] = -half_width + static_cast<double>(i + 1) * g.dx;
  return g;
}

double GridSystem::mode_momentum(long j) const noexcept {
  return hbar * 2.0 * kPi * static_cast<double>(j) / length;
}

GridOperators grid_operators(const GridSystem& g) {
  const std::size_t n = g.points;
  HermitianOperator x =
      HermitianOperator::symmetrize(ComplexMatrix::diagonal(g.x_samples), "x");

  if (g.boundary == Boundary::ring) {
    std::vector<double> pspec(n), hspec(n);
    for (std::size_t m = 0; m < n; ++m) {
      const double pv = g.mode_momentum(mode_of_index(m, n));
      pspec[m] = pv;
      hspec[m] = pv * pv / (2.0 * g.mass);
    }
    HermitianOperator p = HermitianOperator::symmetrize(circulant_from_spectrum(pspec), "p");
    HermitianOperator h = HermitianOperator::symmetrize(circulant_from_spectrum(hspec), "H");
    return {std::move(x), std::move(p), std::move(h)};
  }

  // hard wall: central differences for p, second differences for H
  const double pc = g.hbar / (2.0 * g.dx);
  ComplexMatrix pm(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    pm(i, i + 1) = cdouble(0.0, -pc);
    pm(i + 1, i) = cdouble(0.0, pc);
  }
  const double hc = g.hbar * g.hbar / (2.0 * g.mass * g.dx * g.dx);
  ComplexMatrix hm(n);
  for (std::size_t i = 0; i < n; ++i) {
    hm(i, i) = 2.0 * hc;
    if (i + 1 < n) {
      hm(i, i + 1) = -hc;
      hm(i + 1, i) = -hc;
    }
  }
  return {std::move(x), HermitianOperator::symmetrize(std::move(pm), "p"),
          HermitianOperator::symmetrize(std::move(hm), "H")};
}

SpectralDecomposition ring_momentum_decomposition(const GridSystem& g) {
  check_ring(g, "momentum decomposition");
  return ring_decomposition(g, true);
}

SpectralDecomposition ring_hamiltonian_decomposition(const GridSystem& g) {
  check_ring(g, "hamiltonian decomposition");
  return ring_decomposition(g, false);
}

SpectralDecomposition position_decomposition(const GridSystem& g) {
  const std::size_t n = g.points;
  std::vector<double> eigs(g.x_samples.begin(), g.x_samples.end());
  return SpectralDecomposition::from_parts(std::move(eigs), ComplexMatrix::identity(n),
                                           default_group_tol(g.x_samples));
}

WaveVector ring_plane_wave(const GridSystem& g, long j) {
  check_ring(g, "plane wave");
  require(static_cast<std::size_t>(std::abs(j)) < g.points / 2, errc::mode_out_of_range,
          "|j| must be below N/2");
  const double k = 2.0 * kPi * static_cast<double>(j) / g.length;
  WaveVector w{g, cvector(g.points)};
  for (std::size_t i = 0; i < g.points; ++i) {
    const double ph = k * g.x_samples[i];
    w.amplitudes[i] = {std::cos(ph), std::sin(ph)};
  }
  normalize_wave(w);
  return w;
}

WaveVector ring_cosine(const GridSystem& g, long j) {
  check_ring(g, "cosine mode");
  require(j >= 1 && static_cast<std::size_t>(j) < g.points / 2, errc::mode_out_of_range,
          "cosine mode needs 1 <= j < N/2");
  const double k = 2.0 * kPi * static_cast<double>(j) / g.length;
  WaveVector w{g, cvector(g.points)};
  for (std::size_t i = 0; i < g.points; ++i) w.amplitudes[i] = std::cos(k * g.x_samples[i]);
  normalize_wave(w);
  return w;
}

WaveVector gaussian_packet(const GridSystem& g, double x0, double p0, double sigma_x) {
  check_ring(g, "gaussian packet");
  require(sigma_x > 0, errc::invalid_argument, "sigma_x must be positive");
  require(4.0 * sigma_x < g.length, errc::packet_too_wide, "packet does not fit: 4 sigma >= L");
  require(sigma_x > 2.0 * g.dx, errc::packet_unresolved, "packet unresolved: sigma <= 2 dx");
  WaveVector w{g, cvector(g.points)};
  const double inv = 1.0 / (4.0 * sigma_x * sigma_x);
  for (std::size_t i = 0; i < g.points; ++i) {
    // minimum-image displacement on the ring
    double d = g.x_samples[i] - x0;
    d -= g.length * std::round(d / g.length);
    const double env = std::exp(-d * d * inv);
    const double ph = p0 * g.x_samples[i] / g.hbar;
    w.amplitudes[i] = cdouble{env * std::cos(ph), env * std::sin(ph)};
  }
  normalize_wave(w);
  return w;
}

double wave_norm(const WaveVector& w) {
  long double s = 0;
  for (const auto& z : w.amplitudes) s += (long double)std::norm(z);
  return static_cast<double>(s) * w.grid.dx;
}

Moments position_moments(const WaveVector& w) {
  long double m1 = 0, m2 = 0;
  for (std::size_t i = 0; i < w.amplitudes.size(); ++i) {
    const long double p = std::norm(w.amplitudes[i]);
    m1 += p * w.grid.x_samples[i];
    m2 += p * w.grid.x_samples[i] * w.grid.x_samples[i];
  }
  m1 *= w.grid.dx;
  m2 *= w.grid.dx;
  const double mean = static_cast<double>(m1);
  const double var = std::max(0.0, static_cast<double>(m2 - m1 * m1));
  return {mean, var, std::sqrt(var)};
}

Moments momentum_moments(const WaveVector& w) {
  const GridSystem& g = w.grid;
  const std::size_t n = g.points;
  long double m1 = 0, m2 = 0;
  if (g.boundary == Boundary::ring) {
    // l2-normalize, expand in the plane-wave basis
    cvector v = w.amplitudes;
    const double scale = std::sqrt(g.dx);
    for (auto& z : v) z *= scale;
    const cvector c = fft::unitary(v, false);
    for (std::size_t m = 0; m < n; ++m) {
      const long double pv = g.mode_momentum(mode_of_index(m, n));
      const long double pr = std::norm(c[m]);
      m1 += pr * pv;
      m2 += pr * pv * pv;
    }
  } else {
    // central differences with zero boundary
    const double pc = g.hbar / (2.0 * g.dx);
    cvector pv(n);
    for (std::size_t i = 0; i < n; ++i) {
      const cdouble up = (i + 1 < n) ? w.amplitudes[i + 1] : cdouble{};
      const cdouble dn = (i > 0) ? w.amplitudes[i - 1] : cdouble{};
      pv[i] = cdouble(0.0, -pc) * (up - dn);
    }
    std::complex<long double> e1 = 0;
    for (std::size_t i = 0; i < n; ++i)
      e1 += std::conj(std::complex<long double>(w.amplitudes[i])) * std::complex<long double>(pv[i]);
    m1 = e1.real() * g.dx;
    for (std::size_t i = 0; i < n; ++i) m2 += (long double)std::norm(pv[i]);
    m2 *= g.dx;
  }
  const double mean = static_cast<double>(m1);
  const double var = std::max(0.0, static_cast<double>(m2 - m1 * m1));
  return {mean, var, std::sqrt(var)};
}

DensityOperator to_projector(const WaveVector& w) {
  cvector v = w.amplitudes;
  const double scale = std::sqrt(w.grid.dx);
  for (auto& z : v) z *= scale;
  return projector_from_vector(v);
}

}  // namespace rho
