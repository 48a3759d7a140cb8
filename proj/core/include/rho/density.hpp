#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rho/operators.hpp"

namespace rho {

inline constexpr double kEigenvalueClamp = 1e-10;  // negatives above this are an error
inline constexpr double kPurityProjectorTol = 1e-10;

/// Weighted pure component of a density operator, ||vec||_2 = 1.
struct WeightedVector {
  double weight;
  cvector vec;
};

/// Unit-trace positive Hermitian operator. Classified as a projector when
/// |Tr rho^2 - 1| <= 1e-10.
///
/// When the operator is assembled from pure states (projectors, mixtures,
/// samples, unitary images of those) the weighted state vectors are kept
/// alongside the matrix. Measurement code uses them as a rank factorization:
/// the factored path evaluates the same traces with error quadratic rather
/// than linear in the entry roundoff, which is what makes the 1e-12-level
/// postconditions downstream attainable.
class DensityOperator {
 public:
  enum class Classification { projector, non_projector };

  /// Full validation: hermiticity gate, eigenvalue clamp (values in
  /// (-1e-10, 0) set to zero, operator renormalized; worse negativity throws
  /// not_positive), unit trace within 1e-10.
  static DensityOperator from_matrix(ComplexMatrix m, double tol = kHermitianTol);

  /// Trusted path for matrices positive by construction. Still checks
  /// hermiticity and trace cheaply; skips the eigenvalue scan.
  static DensityOperator from_matrix_unchecked(ComplexMatrix m,
                                               std::optional<std::vector<WeightedVector>> components);

  std::size_t dim() const noexcept { return mat_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return mat_; }
  double purity() const noexcept { return purity_; }
  Classification classification() const noexcept { return cls_; }
  bool is_projector() const noexcept { return cls_ == Classification::projector; }

  /// Rank factorization if known, nullptr otherwise.
  const std::vector<WeightedVector>* components() const noexcept {
    return components_ ? &*components_ : nullptr;
  }

  /// Copy without the rank factorization (forces dense code paths).
  DensityOperator without_components() const;

 private:
  DensityOperator(ComplexMatrix m, std::optional<std::vector<WeightedVector>> components);

  ComplexMatrix mat_;
  std::optional<std::vector<WeightedVector>> components_;
  double purity_;
  Classification cls_;
};

/// Statistical mixture specification: weights >= 0 summing to 1 within 1e-12.
struct MixtureSpec {
  std::vector<std::pair<double, DensityOperator>> components;
};

/// rho = |psi><psi| for a unit vector (NotNormalized beyond tol; the vector
/// is renormalized exactly before the outer product).
DensityOperator projector_from_vector(std::span<const cdouble> psi, double tol = kHermitianTol);

/// rho = sum_i alpha_i rho_i.
DensityOperator mixture(const MixtureSpec& spec);

/// Deterministic test state with exactly `rank` nonzero eigenvalues,
/// rho = G G^dagger / Tr(G G^dagger) for a seeded Gaussian dim x rank G.
DensityOperator random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);

/// `count` distinct convex decompositions of rho, each reconstructing rho
/// within 1e-12 Frobenius. Entry 0 is the spectral decomposition; entry 1
/// mixes the weighted eigenvectors through the DFT matrix of the rank; later
/// entries use seeded Haar-random unitaries.
std::vector<MixtureSpec> alternative_decompositions(const DensityOperator& rho, std::size_t count,
                                                    std::uint64_t seed);

}  // namespace rho
