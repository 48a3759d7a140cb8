#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rho {

using cdouble = std::complex<double>;
using cvector = std::vector<cdouble>;

/// Dense square complex matrix, row-major. Carrier for every operator in the
/// library. Reductions (trace, norms, inner products) accumulate in long
/// double; this is what lets downstream code meet 1e-12-level tolerances.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// Row-wise construction, mainly for tests and small fixed operators.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cdouble>> rows);

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  cdouble& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * dim_ + j]; }
  const cdouble& operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * dim_ + j]; }

  std::span<cdouble> row(std::size_t i) noexcept { return {a_.data() + i * dim_, dim_}; }
  std::span<const cdouble> row(std::size_t i) const noexcept { return {a_.data() + i * dim_, dim_}; }

  std::vector<cdouble>& raw() noexcept { return a_; }
  const std::vector<cdouble>& raw() const noexcept { return a_; }

  bool finite() const noexcept;

  ComplexMatrix adjoint() const;

  cdouble trace() const noexcept;
  double frobenius() const noexcept;
  double max_abs() const noexcept;

  /// max_ij |a(i,j) - conj(a(j,i))|
  double hermiticity_residual() const noexcept;

  /// In-place (A + A^dagger)/2 with an exactly real diagonal and exact
  /// conjugate symmetry of the stored entries.
  void symmetrize() noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cdouble s) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cdouble s) { return a *= s; }
  friend ComplexMatrix operator*(cdouble s, ComplexMatrix a) { return a *= s; }

  /// Matrix product; throws on dimension mismatch.
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  /// Matrix-vector product with long double accumulation.
  cvector apply(std::span<const cdouble> v) const;

 private:
  std::size_t dim_ = 0;
  std::vector<cdouble> a_;
};

/// sum_ij A(i,j) B(j,i), long double accumulation. Equals Tr(AB).
cdouble trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// conj(a) . b with long double accumulation.
cdouble vdot(std::span<const cdouble> a, std::span<const cdouble> b);
double l2_norm(std::span<const cdouble> v);
bool vec_finite(std::span<const cdouble> v) noexcept;

/// |v><w| (outer product); |v><v| when w omitted via the 1-arg overload.
ComplexMatrix outer_product(std::span<const cdouble> v, std::span<const cdouble> w);
ComplexMatrix outer_product(std::span<const cdouble> v);

}  // namespace rho
