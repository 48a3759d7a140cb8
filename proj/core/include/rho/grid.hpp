#pragma once

#include "rho/density.hpp"
#include "rho/spectral.hpp"

namespace rho {

enum class Boundary { ring, hard_wall };

/// Discretized 1-D configuration space.
///
/// ring:       x_i = -L/2 + i dx, dx = L/N, periodic; N must be even (the
///             spectral momentum operator needs a symmetric mode ladder).
/// hard_wall:  well over -a <= x <= a with L = 2a; the N samples are the
///             interior points x_i = -a + (i+1) dx, dx = L/(N+1), and the
///             wave function vanishes at the (off-grid) walls.
struct GridSystem {
  double length;  // L (ring circumference, or 2a for the well)
  std::size_t points;
  Boundary boundary;
  double mass;
  double hbar;
  double dx;
  std::vector<double> x_samples;

  static GridSystem ring(double length, std::size_t points, double mass = 1.0, double hbar = 1.0);
  static GridSystem hard_wall(double half_width, std::size_t points, double mass = 1.0,
                              double hbar = 1.0);

  double half_width() const noexcept { return 0.5 * length; }
  /// Momentum of ring mode j: hbar 2 pi j / L.
  double mode_momentum(long j) const noexcept;
};

/// Grid wave function, normalized so that sum |psi_i|^2 dx = 1.
struct WaveVector {
  GridSystem grid;
  cvector amplitudes;
};

struct GridOperators {
  HermitianOperator x;
  HermitianOperator p;
  HermitianOperator h_free;
};

/// Position, momentum and free Hamiltonian matrices.
///
/// ring: p and h_free are circulant conjugations of the DFT with exact
/// eigenvalues hbar k_j and (hbar k_j)^2 / 2m, k_j = 2 pi j / L for
/// j in {-N/2+1, ..., N/2}; h_free = p^2 / 2m holds exactly.
/// hard_wall: h_free from second differences with zero boundary, p from
/// central differences (both Hermitian by construction).
GridOperators grid_operators(const GridSystem& g);

/// Closed-form eigensystems of the ring operators (plane-wave columns).
SpectralDecomposition ring_momentum_decomposition(const GridSystem& g);
SpectralDecomposition ring_hamiltonian_decomposition(const GridSystem& g);
/// Eigensystem of the diagonal position operator.
SpectralDecomposition position_decomposition(const GridSystem& g);

/// Normalized plane wave e^{i k_j x}, |j| < N/2.
WaveVector ring_plane_wave(const GridSystem& g, long j);
/// Normalized standing wave ~ e^{i k_j x} + e^{-i k_j x}, 1 <= j < N/2.
WaveVector ring_cosine(const GridSystem& g, long j);

struct WellEigenstate {
  WaveVector psi;
  double energy;  // eps_n = n^2 pi^2 hbar^2 / (8 m a^2)
};

/// Analytic well eigenfunction sampled on the grid: cos(n pi x / 2a)/sqrt(a)
/// for odd n, sin(n pi x / 2a)/sqrt(a) for even n.
WellEigenstate well_eigenstate(const GridSystem& g, std::size_t n);

/// |phi_n(p)|^2 where phi_n is the Fourier transform of the well
/// eigenfunction over [-a, a], evaluated in closed form. The removable
/// singularities at p = +- n pi hbar / 2a are handled by series expansion.
std::vector<double> well_momentum_density(double half_width, std::size_t n,
                                          std::span<const double> p_samples, double hbar = 1.0);

/// Normalized Gaussian e^{-(x-x0)^2 / 4 sigma^2} e^{i p0 x / hbar} on a ring
/// (minimum-image displacement). Requires 4 sigma < L and sigma > 2 dx.
WaveVector gaussian_packet(const GridSystem& g, double x0, double p0, double sigma_x);

struct Moments {
  double mean;
  double variance;
  double std_dev;
};

double wave_norm(const WaveVector& w);
/// Plain grid moments of |psi|^2; assumes the support stays away from the
/// ring seam (no circular unwrapping).
Moments position_moments(const WaveVector& w);
/// Ring: spectral (exact plane-wave) momentum moments; hard_wall:
/// central-difference momentum applied directly to the amplitudes.
Moments momentum_moments(const WaveVector& w);

/// |psi><psi| of the l2-normalized sample vector psi sqrt(dx).
DensityOperator to_projector(const WaveVector& w);

}  // namespace rho
