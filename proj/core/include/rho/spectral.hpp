#pragma once

#include <vector>

#include "rho/operators.hpp"

namespace rho {

/// One eigenvalue cluster: representative value (mean over members), the
/// column indices of its eigenvectors, and hence its degeneracy.
struct SpectralGroup {
  double eigenvalue = 0.0;
  std::vector<std::size_t> members;
  std::size_t degeneracy() const noexcept { return members.size(); }
};

/// Eigenvalues ascending, orthonormal eigenvector columns, and eigenvalue
/// groups (adjacent eigenvalues within the grouping tolerance are chained
/// into one group). Eigenvector phases are fixed by making the
/// largest-magnitude component real positive, so decompositions are
/// reproducible run to run.
class SpectralDecomposition {
 public:
  SpectralDecomposition(std::vector<double> eigenvalues, ComplexMatrix vectors,
                        std::vector<SpectralGroup> groups)
      : eigenvalues_(std::move(eigenvalues)), vectors_(std::move(vectors)), groups_(std::move(groups)) {}

  /// Assemble from a known eigensystem (eigenvalues must already be
  /// ascending, columns orthonormal); used for operators whose eigensystem
  /// is available in closed form.
  static SpectralDecomposition from_parts(std::vector<double> eigenvalues, ComplexMatrix vectors,
                                          double group_tol);

  std::size_t dim() const noexcept { return vectors_.dim(); }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  const ComplexMatrix& vectors() const noexcept { return vectors_; }
  const std::vector<SpectralGroup>& groups() const noexcept { return groups_; }
  const SpectralGroup& group(std::size_t i) const;

  cvector eigenvector(std::size_t k) const;

  /// ||V Lambda V^dagger - A||_F
  double reconstruction_error(const HermitianOperator& a) const;
  /// ||V^dagger V - I||_F
  double orthonormality_error() const;

 private:
  std::vector<double> eigenvalues_;
  ComplexMatrix vectors_;  // columns are eigenvectors
  std::vector<SpectralGroup> groups_;
};

/// Default degeneracy-grouping tolerance: 1e-8 * max(1, |lambda|_max).
double default_group_tol(std::span<const double> eigenvalues) noexcept;

/// Transitive chaining: a new group starts where the gap between adjacent
/// (ascending) eigenvalues exceeds group_tol.
std::vector<SpectralGroup> group_eigenvalues(std::span<const double> eigenvalues, double group_tol);

/// Cyclic Jacobi diagonalization (50-sweep budget, throws convergence_failure
/// beyond it). Real-symmetric inputs take a pure-real fast path.
SpectralDecomposition spectral_decompose(const HermitianOperator& a, double group_tol);
SpectralDecomposition spectral_decompose(const HermitianOperator& a);

/// A_n = sum over the group of |v><v|; idempotent and mutually orthogonal.
HermitianOperator spectral_projector(const SpectralDecomposition& d, std::size_t group_index);

/// U = V exp(-i (t/hbar) Lambda) V^dagger.
UnitaryMatrix unitary_exp(const HermitianOperator& h, double t, double hbar = 1.0);
/// Same, reusing an existing decomposition of h.
UnitaryMatrix unitary_exp(const SpectralDecomposition& d, double t, double hbar = 1.0);

}  // namespace rho
