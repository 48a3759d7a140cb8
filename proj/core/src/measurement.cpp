#include "rho/measurement.hpp"

#include <cmath>

#include "rho/errors.hpp"

namespace rho {

namespace {

constexpr double kVarianceClamp = 1e-10;
constexpr double kProbabilityClamp = 1e-12;
constexpr double kSlackTol = 1e-9;

double real_trace_product(const ComplexMatrix& rho, const ComplexMatrix& a, const char* where) {
  const cdouble t = trace_product(rho, a);
  const double scale = std::max(1.0, rho.frobenius() * a.frobenius());
  require(std::abs(t.imag()) <= 1e-10 * scale, errc::internal_check_failed,
          std::string(where) + ": trace has imaginary residual " + std::to_string(t.imag()));
  return t.real();
}

}  // namespace

double OutcomeDistribution::mean() const {
  long double m = 0;
  for (const auto& e : entries) m += (long double)e.eigenvalue * e.probability;
  return static_cast<double>(m);
}

double OutcomeDistribution::variance() const {
  const long double mu = mean();
  long double v = 0;
  for (const auto& e : entries) {
    const long double d = (long double)e.eigenvalue - mu;
    v += d * d * e.probability;
  }
  return static_cast<double>(v);
}

double OutcomeDistribution::std_dev() const { return std::sqrt(std::max(0.0, variance())); }

double expectation(const DensityOperator& rho, const HermitianOperator& a) {
  require(rho.dim() == a.dim(), errc::dimension_mismatch, "expectation");
  return real_trace_product(rho.matrix(), a.matrix(), "expectation");
}

VarianceResult variance(const DensityOperator& rho, const HermitianOperator& x) {
  require(rho.dim() == x.dim(), errc::dimension_mismatch, "variance");
  double var;
  if (const auto* comp = rho.components()) {
    // rank-factored route: Tr rho (X - mu)^2 = sum_i w_i ||(X - mu) v_i||^2,
    // a sum of squares with no catastrophic cancellation
    long double mu_acc = 0;
    std::vector<cvector> applied;
    applied.reserve(comp->size());
    for (const auto& c : *comp) {
      applied.push_back(x.matrix().apply(c.vec));
      mu_acc += (long double)c.weight * vdot(c.vec, applied.back()).real();
    }
    const double mu = static_cast<double>(mu_acc);
    long double acc = 0;
    for (std::size_t k = 0; k < comp->size(); ++k) {
      const auto& c = (*comp)[k];
      long double nrm2 = 0;
      for (std::size_t i = 0; i < c.vec.size(); ++i) {
        const cdouble d = applied[k][i] - mu * c.vec[i];
        nrm2 += (long double)d.real() * d.real() + (long double)d.imag() * d.imag();
      }
      acc += c.weight * nrm2;
    }
    var = static_cast<double>(acc);
  } else {
    const ComplexMatrix x2 = x.matrix() * x.matrix();
    const double m2 = real_trace_product(rho.matrix(), x2, "variance");
    const double m1 = real_trace_product(rho.matrix(), x.matrix(), "variance");
    var = m2 - m1 * m1;
  }
  if (var < 0.0) {
    require(var >= -kVarianceClamp, errc::negative_variance,
            "variance " + std::to_string(var) + " below clamp threshold");
    var = 0.0;
  }
  return {var, std::sqrt(var)};
}

OutcomeDistribution outcome_distribution(const DensityOperator& rho, const SpectralDecomposition& d) {
  require(rho.dim() == d.dim(), errc::dimension_mismatch, "outcome_distribution");
  const std::size_t n = d.dim();
  OutcomeDistribution dist;
  dist.entries.reserve(d.groups().size());

  const auto* comp = rho.components();
  for (std::size_t g = 0; g < d.groups().size(); ++g) {
    const auto& grp = d.groups()[g];
    double w;
    if (comp) {
      // W(a_n) = sum_i w_i ||P_n v_i||^2 via projections onto the group's
      // eigenvectors; quadratic in the roundoff of the overlaps
      long double acc = 0;
      for (const auto& c : *comp) {
        for (std::size_t k : grp.members) {
          std::complex<long double> ov = 0;
          for (std::size_t i = 0; i < n; ++i)
            ov += std::conj(std::complex<long double>(d.vectors()(i, k))) *
                  std::complex<long double>(c.vec[i]);
          acc += c.weight * (ov.real() * ov.real() + ov.imag() * ov.imag());
        }
      }
      w = static_cast<double>(acc);
    } else {
      const HermitianOperator proj = spectral_projector(d, g);
      w = real_trace_product(rho.matrix(), proj.matrix(), "outcome_distribution");
    }
    dist.entries.push_back({grp.eigenvalue, w, grp.degeneracy()});
  }

  // clamp numerical negatives, renormalize
  long double total = 0;
  for (auto& e : dist.entries) {
    if (e.probability < 0.0) {
      require(e.probability >= -kProbabilityClamp, errc::not_positive,
              "outcome probability " + std::to_string(e.probability));
      e.probability = 0.0;
    }
    total += e.probability;
  }
  require(std::abs(static_cast<double>(total) - 1.0) <= 1e-10, errc::internal_check_failed,
          "outcome probabilities sum to " + std::to_string(static_cast<double>(total)));
  for (auto& e : dist.entries) e.probability = static_cast<double>(e.probability / total);
  return dist;
}

OutcomeDistribution outcome_distribution(const DensityOperator& rho, const HermitianOperator& a) {
  require(rho.dim() == a.dim(), errc::dimension_mismatch, "outcome_distribution");
  return outcome_distribution(rho, spectral_decompose(a));
}

UncertaintyReport uncertainty_check(const DensityOperator& rho, const HermitianOperator& a,
                                    const HermitianOperator& b) {
  require(rho.dim() == a.dim() && rho.dim() == b.dim(), errc::dimension_mismatch,
          "uncertainty_check");
  const double da = variance(rho, a).std_dev;
  const double db = variance(rho, b).std_dev;
  const HermitianOperator c = c_operator(a, b);
  const double bound = 0.5 * std::abs(real_trace_product(rho.matrix(), c.matrix(), "uncertainty"));
  const double product = da * db;
  const double slack = product - bound;
  return {da, db, product, bound, slack, slack >= -kSlackTol};
}

ObservableBasis observable_basis(std::size_t dim) {
  require(dim >= 2, errc::invalid_dimension, "observable basis needs dim >= 2");
  ObservableBasis basis{dim, {}};
  basis.operators.reserve(dim * dim - 1);
  std::size_t idx = 1;
  auto label = [&idx]() { return "G" + std::to_string(idx++); };

  // symmetric pairs: E(j,k) + E(k,j)
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = j + 1; k < dim; ++k) {
      ComplexMatrix m(dim);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      basis.operators.push_back(HermitianOperator::symmetrize(std::move(m), label()));
    }
  // antisymmetric pairs: -i E(j,k) + i E(k,j)
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = j + 1; k < dim; ++k) {
      ComplexMatrix m(dim);
      m(j, k) = cdouble(0.0, -1.0);
      m(k, j) = cdouble(0.0, 1.0);
      basis.operators.push_back(HermitianOperator::symmetrize(std::move(m), label()));
    }
  // diagonal traceless: sqrt(2/(l(l+1))) diag(1,...,1,-l,0,...)
  for (std::size_t l = 1; l < dim; ++l) {
    ComplexMatrix m(dim);
    const double scale = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    for (std::size_t i = 0; i < l; ++i) m(i, i) = scale;
    m(l, l) = -scale * static_cast<double>(l);
    basis.operators.push_back(HermitianOperator::symmetrize(std::move(m), label()));
  }
  return basis;
}

std::vector<double> expectations_from_state(const DensityOperator& rho, const ObservableBasis& basis) {
  require(rho.dim() == basis.dim, errc::dimension_mismatch, "expectations_from_state");
  std::vector<double> out;
  out.reserve(basis.operators.size());
  for (const auto& g : basis.operators) out.push_back(expectation(rho, g));
  return out;
}

DensityOperator state_from_expectations(std::span<const double> values, const ObservableBasis& basis) {
  require(values.size() == basis.operators.size(), errc::dimension_mismatch,
          "expected " + std::to_string(basis.operators.size()) + " values, got " +
              std::to_string(values.size()));
  const std::size_t n = basis.dim;
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < values.size(); ++k) {
    require(std::isfinite(values[k]), errc::non_finite, "expectation value is not finite");
    const auto& g = basis.operators[k].matrix();
    for (std::size_t idx = 0; idx < m.raw().size(); ++idx)
      m.raw()[idx] += 0.5 * values[k] * g.raw()[idx];
  }
  return DensityOperator::from_matrix(std::move(m));
}

}  // namespace rho
