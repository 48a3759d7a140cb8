#pragma once

#include "rho/density.hpp"
#include "rho/spectral.hpp"

namespace rho {

/// Probability distribution of ideal measurement outcomes: one entry per
/// eigenvalue group, W(a_n) = Tr[rho A_n], eigenvalues strictly ascending.
struct OutcomeDistribution {
  struct Entry {
    double eigenvalue;
    double probability;
    std::size_t degeneracy;
  };
  std::vector<Entry> entries;

  double mean() const;
  double variance() const;
  double std_dev() const;
};

struct VarianceResult {
  double variance;
  double std_dev;
};

/// Result of pairing two observables against the commutator bound
/// Delta A * Delta B >= |<C>|/2 with C = -i[A, B].
struct UncertaintyReport {
  double delta_a;
  double delta_b;
  double product;
  double bound;
  double slack;  // product - bound
  bool satisfied;
};

/// n^2 - 1 Hermitian, traceless, trace-orthogonal operators with
/// Tr(G_i G_j) = 2 delta_ij (generalized Gell-Mann construction).
struct ObservableBasis {
  std::size_t dim;
  std::vector<HermitianOperator> operators;
};

/// <A> = Re Tr(rho A); the imaginary residual of the trace is checked
/// against 1e-10 relative to the operator scale.
double expectation(const DensityOperator& rho, const HermitianOperator& a);

/// Tr(rho X^2) - (Tr rho X)^2 and its square root. Values in (-1e-10, 0) are
/// clamped to zero; anything lower signals broken input and throws.
VarianceResult variance(const DensityOperator& rho, const HermitianOperator& x);

OutcomeDistribution outcome_distribution(const DensityOperator& rho, const HermitianOperator& a);
/// Same, reusing a decomposition of the observable.
OutcomeDistribution outcome_distribution(const DensityOperator& rho, const SpectralDecomposition& d);

UncertaintyReport uncertainty_check(const DensityOperator& rho, const HermitianOperator& a,
                                    const HermitianOperator& b);

ObservableBasis observable_basis(std::size_t dim);

/// Forward tomography map: the n^2 - 1 values Tr(rho G_i).
std::vector<double> expectations_from_state(const DensityOperator& rho, const ObservableBasis& basis);

/// Inverse tomography map: rho = I/n + (1/2) sum_i v_i G_i. Throws
/// not_positive when the values do not correspond to any state.
DensityOperator state_from_expectations(std::span<const double> values, const ObservableBasis& basis);

}  // namespace rho
