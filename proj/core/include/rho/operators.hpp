#pragma once

#include <string>

#include "rho/complex_matrix.hpp"

namespace rho {

inline constexpr double kHermitianTol = 1e-10;

/// Validated observable. The stored matrix is exactly Hermitian: construction
/// symmetrizes A <- (A + A^dagger)/2 after the tolerance gate passes.
class HermitianOperator {
 public:
  /// Validation gateway: rejects non-finite input and matrices whose
  /// anti-Hermitian part exceeds tol relative to the largest entry magnitude.
  /// The measured residual stays queryable on the result.
  static HermitianOperator from_matrix(ComplexMatrix m, double tol = kHermitianTol,
                                       std::string label = {});

  /// Trusted constructor for operators Hermitian by construction (commutator
  /// combinations, projector sums, spectral conjugations). Symmetrizes
  /// unconditionally; no tolerance gate.
  static HermitianOperator symmetrize(ComplexMatrix m, std::string label = {});

  std::size_t dim() const noexcept { return mat_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return mat_; }
  const std::string& label() const noexcept { return label_; }
  double hermiticity_residual() const noexcept { return residual_; }

  HermitianOperator with_label(std::string label) const;

 private:
  HermitianOperator(ComplexMatrix m, std::string label, double residual)
      : mat_(std::move(m)), label_(std::move(label)), residual_(residual) {}

  ComplexMatrix mat_;
  std::string label_;
  double residual_;
};

/// C defined by AB - BA = iC, i.e. C = -i[A, B]. Hermitian for Hermitian
/// inputs; verified against the input scale.
HermitianOperator c_operator(const HermitianOperator& a, const HermitianOperator& b);

class UnitaryMatrix {
 public:
  /// Validates ||U^dagger U - I||_F <= tol.
  static UnitaryMatrix from_matrix(ComplexMatrix m, double tol = kHermitianTol);

  std::size_t dim() const noexcept { return mat_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return mat_; }

  /// U A U^dagger
  ComplexMatrix conjugate(const ComplexMatrix& a) const;
  cvector apply(std::span<const cdouble> v) const { return mat_.apply(v); }

  double unitarity_residual() const;

 private:
  explicit UnitaryMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

}  // namespace rho
