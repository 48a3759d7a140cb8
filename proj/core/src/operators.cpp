#include "rho/operators.hpp"

#include <cmath>

#include "rho/errors.hpp"

namespace rho {

HermitianOperator HermitianOperator::from_matrix(ComplexMatrix m, double tol, std::string label) {
  require(m.dim() > 0, errc::invalid_argument, "empty matrix");
  require(m.finite(), errc::non_finite, "matrix has NaN/Inf entries");
  const double residual = m.hermiticity_residual();
  const double scale = m.max_abs();
  if (residual > tol * scale)
    fail(errc::not_hermitian, "hermiticity residual " + std::to_string(residual) +
                                  " exceeds tol * max|entry| = " + std::to_string(tol * scale) +
                                  (label.empty() ? "" : " for " + label));
  m.symmetrize();
  return HermitianOperator(std::move(m), std::move(label), residual);
}

HermitianOperator HermitianOperator::symmetrize(ComplexMatrix m, std::string label) {
  require(m.dim() > 0, errc::invalid_argument, "empty matrix");
  require(m.finite(), errc::non_finite, "matrix has NaN/Inf entries");
  const double residual = m.hermiticity_residual();
  m.symmetrize();
  return HermitianOperator(std::move(m), std::move(label), residual);
}

HermitianOperator HermitianOperator::with_label(std::string label) const {
  return HermitianOperator(mat_, std::move(label), residual_);
}

HermitianOperator c_operator(const HermitianOperator& a, const HermitianOperator& b) {
  require(a.dim() == b.dim(), errc::dimension_mismatch, "c_operator");
  const ComplexMatrix ab = a.matrix() * b.matrix();
  const ComplexMatrix ba = b.matrix() * a.matrix();
  ComplexMatrix c = ab;
  c -= ba;
  c *= cdouble(0.0, -1.0);
  // C is Hermitian in exact arithmetic; the residual scales with the product
  // of the input magnitudes, not with |C| (which may be ~0 for commuting A, B).
  const double scale = std::max(1.0, a.matrix().max_abs() * b.matrix().max_abs());
  const double residual = c.hermiticity_residual();
  require(residual <= kHermitianTol * scale, errc::internal_check_failed,
          "commutator lost hermiticity: residual " + std::to_string(residual));
  std::string label;
  if (!a.label().empty() || !b.label().empty()) label = "C(" + a.label() + "," + b.label() + ")";
  return HermitianOperator::symmetrize(std::move(c), std::move(label));
}

UnitaryMatrix UnitaryMatrix::from_matrix(ComplexMatrix m, double tol) {
  require(m.dim() > 0, errc::invalid_argument, "empty matrix");
  require(m.finite(), errc::non_finite, "matrix has NaN/Inf entries");
  UnitaryMatrix u(std::move(m));
  const double r = u.unitarity_residual();
  require(r <= tol, errc::internal_check_failed,
          "unitarity residual " + std::to_string(r) + " exceeds " + std::to_string(tol));
  return u;
}

ComplexMatrix UnitaryMatrix::conjugate(const ComplexMatrix& a) const {
  require(a.dim() == dim(), errc::dimension_mismatch, "unitary conjugation");
  return mat_ * a * mat_.adjoint();
}

double UnitaryMatrix::unitarity_residual() const {
  const ComplexMatrix g = mat_.adjoint() * mat_;
  return frobenius_distance(g, ComplexMatrix::identity(dim()));
}

}  // namespace rho
