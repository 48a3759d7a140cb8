#include "rho/density.hpp"

#include <cmath>

#include "rho/errors.hpp"
#include "rho/rng.hpp"
#include "rho/spectral.hpp"

namespace rho {

namespace {

constexpr double kTraceTol = 1e-10;

double purity_of(const ComplexMatrix& m) {
  // Tr rho^2 = sum_ij |rho_ij|^2 for Hermitian rho
  long double s = 0;
  for (const auto& z : m.raw())
    s += (long double)z.real() * z.real() + (long double)z.imag() * z.imag();
  return static_cast<double>(s);
}

// Haar-ish random unitary: Gram-Schmidt of a Gaussian matrix, diagonal phases
// fixed so the result is a deterministic function of the stream.
ComplexMatrix random_unitary(std::size_t n, rng::Stream& stream) {
  ComplexMatrix g(n);
  for (auto& z : g.raw()) z = stream.next_complex_gaussian();
  // modified Gram-Schmidt on columns
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t prev = 0; prev < k; ++prev) {
      cdouble proj = 0;
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(g(i, prev)) * g(i, k);
      for (std::size_t i = 0; i < n; ++i) g(i, k) -= proj * g(i, prev);
    }
    long double nrm2 = 0;
    for (std::size_t i = 0; i < n; ++i)
      nrm2 += (long double)g(i, k).real() * g(i, k).real() + (long double)g(i, k).imag() * g(i, k).imag();
    const double nrm = static_cast<double>(std::sqrt(nrm2));
    require(nrm > 1e-12, errc::internal_check_failed, "degenerate Gaussian draw");
    for (std::size_t i = 0; i < n; ++i) g(i, k) /= nrm;
  }
  return g;
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix m, std::optional<std::vector<WeightedVector>> components)
    : mat_(std::move(m)), components_(std::move(components)) {
  purity_ = purity_of(mat_);
  cls_ = std::abs(purity_ - 1.0) <= kPurityProjectorTol ? Classification::projector
                                                        : Classification::non_projector;
}

DensityOperator DensityOperator::from_matrix_unchecked(
    ComplexMatrix m, std::optional<std::vector<WeightedVector>> components) {
  require(m.finite(), errc::non_finite, "density matrix has NaN/Inf entries");
  const double resid = m.hermiticity_residual();
  require(resid <= kHermitianTol * std::max(1.0, m.max_abs()), errc::not_hermitian,
          "density matrix hermiticity residual " + std::to_string(resid));
  m.symmetrize();
  const cdouble tr = m.trace();
  require(std::abs(tr - cdouble(1.0)) <= kTraceTol, errc::invalid_argument,
          "density matrix trace deviates from 1 by " + std::to_string(std::abs(tr - cdouble(1.0))));
  return DensityOperator(std::move(m), std::move(components));
}

DensityOperator DensityOperator::from_matrix(ComplexMatrix m, double tol) {
  require(m.dim() > 0, errc::invalid_argument, "empty density matrix");
  auto h = HermitianOperator::from_matrix(std::move(m), tol);
  const auto d = spectral_decompose(h);

  double min_eig = d.eigenvalues().front();
  require(min_eig >= -kEigenvalueClamp, errc::not_positive,
          "density matrix has eigenvalue " + std::to_string(min_eig));

  const cdouble tr = h.matrix().trace();
  require(std::abs(tr - cdouble(1.0)) <= kTraceTol, errc::invalid_argument,
          "density matrix trace deviates from 1");

  if (min_eig < 0.0) {
    // clamp the numerical negatives to zero and renormalize
    const std::size_t n = h.dim();
    std::vector<double> lam(d.eigenvalues().begin(), d.eigenvalues().end());
    long double sum = 0;
    for (auto& l : lam) {
      if (l < 0.0) l = 0.0;
      sum += l;
    }
    require(sum > 0, errc::not_positive, "density matrix is numerically zero");
    ComplexMatrix rebuilt(n);
    const ComplexMatrix& v = d.vectors();
    for (std::size_t k = 0; k < n; ++k) {
      const double w = static_cast<double>(lam[k] / sum);
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rebuilt(i, j) += w * v(i, k) * std::conj(v(j, k));
    }
    rebuilt.symmetrize();
    return DensityOperator(std::move(rebuilt), std::nullopt);
  }

  ComplexMatrix out = h.matrix();
  const double scale = 1.0 / tr.real();
  if (scale != 1.0) out *= scale;
  return DensityOperator(std::move(out), std::nullopt);
}

DensityOperator DensityOperator::without_components() const {
  DensityOperator copy = *this;
  copy.components_.reset();
  return copy;
}

DensityOperator projector_from_vector(std::span<const cdouble> psi, double tol) {
  require(!psi.empty(), errc::invalid_argument, "empty state vector");
  require(vec_finite(psi), errc::non_finite, "state vector has NaN/Inf entries");
  const double nrm = l2_norm(psi);
  if (std::abs(nrm - 1.0) > tol)
    fail(errc::not_normalized, "state vector norm " + std::to_string(nrm));
  cvector v(psi.begin(), psi.end());
  for (auto& z : v) z /= nrm;
  ComplexMatrix m = outer_product(v);
  m.symmetrize();
  std::vector<WeightedVector> comp{{1.0, std::move(v)}};
  return DensityOperator::from_matrix_unchecked(std::move(m), std::move(comp));
}

DensityOperator mixture(const MixtureSpec& spec) {
  require(!spec.components.empty(), errc::weights_invalid, "mixture needs at least one component");
  const std::size_t n = spec.components.front().second.dim();
  long double wsum = 0;
  for (const auto& [w, rho] : spec.components) {
    require(w >= 0.0, errc::weights_invalid, "negative mixture weight");
    require(rho.dim() == n, errc::dimension_mismatch, "mixture component dimension");
    wsum += w;
  }
  require(std::abs(static_cast<double>(wsum) - 1.0) <= 1e-12, errc::weights_invalid,
          "mixture weights sum to " + std::to_string(static_cast<double>(wsum)));

  ComplexMatrix m(n);
  bool all_have_components = true;
  std::size_t total = 0;
  for (const auto& [w, rho] : spec.components) {
    for (std::size_t k = 0; k < m.raw().size(); ++k) m.raw()[k] += w * rho.matrix().raw()[k];
    if (const auto* c = rho.components()) total += c->size();
    else all_have_components = false;
  }
  m.symmetrize();

  std::optional<std::vector<WeightedVector>> comp;
  if (all_have_components && total <= 256) {
    comp.emplace();
    comp->reserve(total);
    for (const auto& [w, rho] : spec.components)
      for (const auto& c : *rho.components())
        if (w * c.weight > 0.0) comp->push_back({w * c.weight, c.vec});
  }
  return DensityOperator::from_matrix_unchecked(std::move(m), std::move(comp));
}

DensityOperator random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  require(dim >= 1, errc::invalid_dimension, "dimension must be >= 1");
  require(rank >= 1 && rank <= dim, errc::invalid_rank,
          "rank must lie in [1, dim], got " + std::to_string(rank));
  auto stream = rng::Stream::keyed(seed, rng::kDomainDensity, dim * 131 + rank);

  // columns of G are unnormalized pure components; rho = G G^dagger / Tr
  std::vector<cvector> cols(rank, cvector(dim));
  long double tr = 0;
  for (std::size_t k = 0; k < rank; ++k) {
    for (std::size_t i = 0; i < dim; ++i) {
      cols[k][i] = stream.next_complex_gaussian();
      tr += (long double)std::norm(cols[k][i]);
    }
  }
  const double trace = static_cast<double>(tr);
  ComplexMatrix m(dim);
  std::vector<WeightedVector> comp;
  comp.reserve(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const double nrm = l2_norm(cols[k]);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) += cols[k][i] * std::conj(cols[k][j]) / trace;
    cvector unit = cols[k];
    for (auto& z : unit) z /= nrm;
    comp.push_back({nrm * nrm / trace, std::move(unit)});
  }
  m.symmetrize();
  return DensityOperator::from_matrix_unchecked(std::move(m), std::move(comp));
}

std::vector<MixtureSpec> alternative_decompositions(const DensityOperator& rho, std::size_t count,
                                                    std::uint64_t seed) {
  require(count >= 1, errc::invalid_argument, "count must be >= 1");
  const std::size_t n = rho.dim();
  const auto d = spectral_decompose(HermitianOperator::symmetrize(rho.matrix(), "rho"));

  // strictly positive spectrum (rank support)
  std::vector<std::pair<double, cvector>> support;  // (lambda, eigenvector)
  for (std::size_t k = 0; k < n; ++k)
    if (d.eigenvalues()[k] > 1e-12) support.push_back({d.eigenvalues()[k], d.eigenvector(k)});
  require(!support.empty(), errc::not_positive, "density operator has empty support");
  const std::size_t r = support.size();

  std::vector<MixtureSpec> out;
  out.reserve(count);

  // entry 0: the spectral decomposition itself
  {
    MixtureSpec spec;
    for (const auto& [lam, v] : support) spec.components.push_back({lam, projector_from_vector(v)});
    // weights of the retained support renormalized (discarded eigenvalues are < 1e-12)
    long double wsum = 0;
    for (auto& [w, p] : spec.components) wsum += w;
    for (auto& [w, p] : spec.components) w = static_cast<double>(w / wsum);
    out.push_back(std::move(spec));
  }

  auto mixed_spec = [&](const ComplexMatrix& u) {
    // |v_j> = sum_i U_ji sqrt(lambda_i) |v_i>, then split into (weight, projector)
    MixtureSpec spec;
    for (std::size_t j = 0; j < r; ++j) {
      cvector vj(n, 0.0);
      for (std::size_t i = 0; i < r; ++i) {
        const cdouble coef = u(j, i) * std::sqrt(support[i].first);
        for (std::size_t k = 0; k < n; ++k) vj[k] += coef * support[i].second[k];
      }
      const double w = l2_norm(vj);
      if (w * w <= 1e-15) continue;
      for (auto& z : vj) z /= w;
      spec.components.push_back({w * w, projector_from_vector(vj)});
    }
    long double wsum = 0;
    for (auto& [w, p] : spec.components) wsum += w;
    for (auto& [w, p] : spec.components) w = static_cast<double>(w / wsum);
    return spec;
  };

  if (count >= 2) {
    // DFT mixing: for I/2 this yields exactly the |+>/|-> pair
    ComplexMatrix f(r);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < r; ++i) {
        const double ph = -2.0 * 3.14159265358979323846 * static_cast<double>(j * i) / r;
        f(j, i) = cdouble{std::cos(ph), std::sin(ph)} / std::sqrt(static_cast<double>(r));
      }
    out.push_back(mixed_spec(f));
  }

  auto stream = rng::Stream::keyed(seed, rng::kDomainUnitary, 0);
  while (out.size() < count) out.push_back(mixed_spec(random_unitary(r, stream)));
  return out;
}

}  // namespace rho
