#include "rho/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rho/errors.hpp"

namespace rho {

namespace {

constexpr int kMaxSweeps = 50;
constexpr double kOffTolerance = 5e-15;  // relative to ||A||_F

// Pairwise plane rotation applied to (x, y):
//   x' =  c x + s (e y)
//   y' = -s x + c (e y)
// with e the unit phase that makes the pivot real. Hand-rolled re/im
// arithmetic; the loops below are the hot path of the whole library.
inline void rot2(cdouble& x, cdouble& y, double c, double s, double er, double ei) {
  const double xr = x.real(), xi = x.imag();
  const double yr = y.real(), yi = y.imag();
  const double eyr = er * yr - ei * yi;
  const double eyi = er * yi + ei * yr;
  x = {c * xr + s * eyr, c * xi + s * eyi};
  y = {-s * xr + c * eyr, -s * xi + c * eyi};
}

inline void rot2_real(double& x, double& y, double c, double s, double e) {
  const double ey = e * y;
  const double nx = c * x + s * ey;
  y = -s * x + c * ey;
  x = nx;
}

double off_frobenius(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  long double s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const cdouble z = a(i, j);
      s += (long double)z.real() * z.real() + (long double)z.imag() * z.imag();
    }
  return static_cast<double>(std::sqrt(2.0L * s));
}

struct JacobiResult {
  std::vector<double> eigenvalues;  // unsorted, = final diagonal
  // rows of W are conjugated eigenvectors: A = W^dagger Lambda W
};

// Complex Hermitian cyclic Jacobi. `a` is destroyed; `w` accumulates the
// rotations (starts as identity).
void jacobi_complex(ComplexMatrix& a, ComplexMatrix& w) {
  const std::size_t n = a.dim();
  const double fro0 = a.frobenius();
  if (fro0 == 0.0) return;
  const double stop = kOffTolerance * fro0;
  const double skip = stop / static_cast<double>(n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_frobenius(a) <= stop) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cdouble apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= skip) continue;

        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double er = apq.real() / r;
        const double ei = apq.imag() / r;

        const double theta = (alpha - beta) / (2.0 * r);
        const double t = (theta >= 0.0) ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                                        : 1.0 / (theta - std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // rows p and q of A (B = G^dagger A)
        cdouble* ap = &a(p, 0);
        cdouble* aq = &a(q, 0);
        for (std::size_t j = 0; j < n; ++j) rot2(ap[j], aq[j], c, s, er, ei);

        // the 2x2 block in closed form; pivot exactly zeroed
        const double app = alpha * c * c + 2.0 * r * c * s + beta * s * s;
        const double aqq = alpha * s * s - 2.0 * r * c * s + beta * c * c;
        ap[p] = app;
        ap[q] = 0.0;
        aq[p] = 0.0;
        aq[q] = aqq;

        // mirror columns from the updated rows (A stays exactly Hermitian)
        for (std::size_t j = 0; j < n; ++j) {
          if (j == p || j == q) continue;
          a(j, p) = std::conj(ap[j]);
          a(j, q) = std::conj(aq[j]);
        }

        cdouble* wp = &w(p, 0);
        cdouble* wq = &w(q, 0);
        for (std::size_t j = 0; j < n; ++j) rot2(wp[j], wq[j], c, s, er, ei);
      }
    }
  }
  if (off_frobenius(a) > stop)
    fail(errc::convergence_failure, "Jacobi eigensolver did not converge in 50 sweeps");
}

// Real-symmetric specialization on packed double buffers.
void jacobi_real(std::vector<double>& a, std::vector<double>& w, std::size_t n) {
  long double f0 = 0;
  for (double v : a) f0 += (long double)v * v;
  const double fro0 = static_cast<double>(std::sqrt(f0));
  if (fro0 == 0.0) return;
  const double stop = kOffTolerance * fro0;
  const double skip = stop / static_cast<double>(n);

  auto off = [&]() {
    long double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += (long double)a[i * n + j] * a[i * n + j];
    return static_cast<double>(std::sqrt(2.0L * s));
  };

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off() <= stop) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        const double r = std::abs(apq);
        if (r <= skip) continue;

        const double alpha = a[p * n + p];
        const double beta = a[q * n + q];
        const double e = apq / r;  // +-1

        const double theta = (alpha - beta) / (2.0 * r);
        const double t = (theta >= 0.0) ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                                        : 1.0 / (theta - std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        double* ap = a.data() + p * n;
        double* aq = a.data() + q * n;
        for (std::size_t j = 0; j < n; ++j) rot2_real(ap[j], aq[j], c, s, e);

        const double app = alpha * c * c + 2.0 * r * c * s + beta * s * s;
        const double aqq = alpha * s * s - 2.0 * r * c * s + beta * c * c;
        ap[p] = app;
        ap[q] = 0.0;
        aq[p] = 0.0;
        aq[q] = aqq;

        for (std::size_t j = 0; j < n; ++j) {
          if (j == p || j == q) continue;
          a[j * n + p] = ap[j];
          a[j * n + q] = aq[j];
        }

        double* wp = w.data() + p * n;
        double* wq = w.data() + q * n;
        for (std::size_t j = 0; j < n; ++j) rot2_real(wp[j], wq[j], c, s, e);
      }
    }
  }
  if (off() > stop)
    fail(errc::convergence_failure, "Jacobi eigensolver did not converge in 50 sweeps");
}

bool exactly_real(const ComplexMatrix& m) {
  for (const auto& z : m.raw())
    if (z.imag() != 0.0) return false;
  return true;
}

// Sort ascending, build V columns from W rows, fix phases.
SpectralDecomposition assemble(std::vector<double> eigenvalues, const ComplexMatrix& w,
                               double group_tol, bool tol_is_default) {
  const std::size_t n = eigenvalues.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t i, std::size_t j) { return eigenvalues[i] < eigenvalues[j]; });

  std::vector<double> sorted(n);
  ComplexMatrix v(n);
  for (std::size_t k = 0; k < n; ++k) {
    sorted[k] = eigenvalues[perm[k]];
    // eigenvector k = conj(row perm[k] of W)
    std::size_t imax = 0;
    double amax = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double m = std::abs(w(perm[k], i));
      if (m > amax) {
        amax = m;
        imax = i;
      }
    }
    cdouble phase = 1.0;
    const cdouble z = std::conj(w(perm[k], imax));  // = v(imax, k) before phasing
    if (amax > 0.0) phase = std::conj(z) / amax;
    for (std::size_t i = 0; i < n; ++i) v(i, k) = std::conj(w(perm[k], i)) * phase;
    v(imax, k) = cdouble(amax, 0.0);
  }

  const double tol = tol_is_default ? default_group_tol(sorted) : group_tol;
  auto groups = group_eigenvalues(sorted, tol);
  return SpectralDecomposition(std::move(sorted), std::move(v), std::move(groups));
}

}  // namespace

double default_group_tol(std::span<const double> eigenvalues) noexcept {
  double amax = 0;
  for (double v : eigenvalues) amax = std::max(amax, std::abs(v));
  return 1e-8 * std::max(1.0, amax);
}

std::vector<SpectralGroup> group_eigenvalues(std::span<const double> eigenvalues, double group_tol) {
  std::vector<SpectralGroup> groups;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    if (groups.empty() || eigenvalues[k] - eigenvalues[groups.back().members.back()] > group_tol) {
      groups.push_back({});
    }
    groups.back().members.push_back(k);
  }
  for (auto& g : groups) {
    long double mean = 0;
    for (std::size_t k : g.members) mean += eigenvalues[k];
    g.eigenvalue = static_cast<double>(mean / g.members.size());
  }
  return groups;
}

SpectralDecomposition SpectralDecomposition::from_parts(std::vector<double> eigenvalues,
                                                        ComplexMatrix vectors, double group_tol) {
  require(eigenvalues.size() == vectors.dim(), errc::dimension_mismatch,
          "from_parts: eigenvalue count != dimension");
  require(std::is_sorted(eigenvalues.begin(), eigenvalues.end()), errc::invalid_argument,
          "from_parts: eigenvalues must be ascending");
  auto groups = group_eigenvalues(eigenvalues, group_tol);
  return SpectralDecomposition(std::move(eigenvalues), std::move(vectors), std::move(groups));
}

const SpectralGroup& SpectralDecomposition::group(std::size_t i) const {
  require(i < groups_.size(), errc::index_out_of_range, "group index");
  return groups_[i];
}

cvector SpectralDecomposition::eigenvector(std::size_t k) const {
  require(k < dim(), errc::index_out_of_range, "eigenvector index");
  cvector v(dim());
  for (std::size_t i = 0; i < dim(); ++i) v[i] = vectors_(i, k);
  return v;
}

double SpectralDecomposition::reconstruction_error(const HermitianOperator& a) const {
  const std::size_t n = dim();
  ComplexMatrix lam(n);
  for (std::size_t i = 0; i < n; ++i) lam(i, i) = eigenvalues_[i];
  const ComplexMatrix rec = vectors_ * lam * vectors_.adjoint();
  return frobenius_distance(rec, a.matrix());
}

double SpectralDecomposition::orthonormality_error() const {
  const ComplexMatrix g = vectors_.adjoint() * vectors_;
  return frobenius_distance(g, ComplexMatrix::identity(dim()));
}

SpectralDecomposition spectral_decompose(const HermitianOperator& a, double group_tol) {
  const std::size_t n = a.dim();
  if (exactly_real(a.matrix())) {
    std::vector<double> m(n * n), w(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      w[i * n + i] = 1.0;
      for (std::size_t j = 0; j < n; ++j) m[i * n + j] = a.matrix()(i, j).real();
    }
    jacobi_real(m, w, n);
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m[i * n + i];
    ComplexMatrix wc(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) wc(i, j) = w[i * n + j];
    return assemble(std::move(eig), wc, group_tol, group_tol < 0);
  }
  ComplexMatrix m = a.matrix();
  ComplexMatrix w = ComplexMatrix::identity(n);
  jacobi_complex(m, w);
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i).real();
  return assemble(std::move(eig), w, group_tol, group_tol < 0);
}

SpectralDecomposition spectral_decompose(const HermitianOperator& a) {
  return spectral_decompose(a, -1.0);  // negative => derive default from spectrum
}

HermitianOperator spectral_projector(const SpectralDecomposition& d, std::size_t group_index) {
  require(group_index < d.groups().size(), errc::index_out_of_range, "spectral_projector group index");
  const std::size_t n = d.dim();
  ComplexMatrix p(n);
  const ComplexMatrix& v = d.vectors();
  for (std::size_t k : d.groups()[group_index].members) {
    for (std::size_t i = 0; i < n; ++i) {
      const cdouble vik = v(i, k);
      for (std::size_t j = 0; j < n; ++j) p(i, j) += vik * std::conj(v(j, k));
    }
  }
  return HermitianOperator::symmetrize(std::move(p), "proj");
}

UnitaryMatrix unitary_exp(const SpectralDecomposition& d, double t, double hbar) {
  require(hbar > 0.0, errc::invalid_argument, "hbar must be positive");
  const std::size_t n = d.dim();
  if (t == 0.0) return UnitaryMatrix::from_matrix(ComplexMatrix::identity(n));
  ComplexMatrix scaled = d.vectors();
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = -t * d.eigenvalues()[k] / hbar;
    const cdouble ph = {std::cos(phase), std::sin(phase)};
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= ph;
  }
  return UnitaryMatrix::from_matrix(scaled * d.vectors().adjoint());
}

UnitaryMatrix unitary_exp(const HermitianOperator& h, double t, double hbar) {
  return unitary_exp(spectral_decompose(h), t, hbar);
}

}  // namespace rho
