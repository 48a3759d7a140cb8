#include "rho/complex_matrix.hpp"

#include <cmath>

#include "rho/errors.hpp"

namespace rho {

using cldouble = std::complex<long double>;

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cdouble>> rows) {
  const std::size_t n = rows.size();
  ComplexMatrix m(n);
  std::size_t i = 0;
  for (const auto& r : rows) {
    require(r.size() == n, errc::invalid_argument, "from_rows: ragged row");
    std::size_t j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool ComplexMatrix::finite() const noexcept {
  for (const auto& z : a_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

cdouble ComplexMatrix::trace() const noexcept {
  cldouble t = 0;
  for (std::size_t i = 0; i < dim_; ++i) t += cldouble((*this)(i, i));
  return {static_cast<double>(t.real()), static_cast<double>(t.imag())};
}

double ComplexMatrix::frobenius() const noexcept {
  long double s = 0;
  for (const auto& z : a_) s += (long double)z.real() * z.real() + (long double)z.imag() * z.imag();
  return static_cast<double>(std::sqrt(s));
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0;
  for (const auto& z : a_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::hermiticity_residual() const noexcept {
  double r = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    r = std::max(r, std::abs((*this)(i, i).imag()));
    for (std::size_t j = i + 1; j < dim_; ++j)
      r = std::max(r, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  }
  return r;
}

void ComplexMatrix::symmetrize() noexcept {
  for (std::size_t i = 0; i < dim_; ++i) {
    (*this)(i, i) = cdouble((*this)(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const cdouble m = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
      (*this)(i, j) = m;
      (*this)(j, i) = std::conj(m);
    }
  }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require(o.dim_ == dim_, errc::dimension_mismatch, "matrix add");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require(o.dim_ == dim_, errc::dimension_mismatch, "matrix sub");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble s) noexcept {
  for (auto& z : a_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.dim_ == b.dim_, errc::dimension_mismatch, "matrix product");
  const std::size_t n = a.dim_;
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cdouble* arow = a.a_.data() + i * n;
    cdouble* crow = c.a_.data() + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const cdouble aik = arow[k];
      if (aik == cdouble{}) continue;
      const cdouble* brow = b.a_.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

cvector ComplexMatrix::apply(std::span<const cdouble> v) const {
  require(v.size() == dim_, errc::dimension_mismatch, "matrix apply");
  cvector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    cldouble acc = 0;
    const cdouble* arow = a_.data() + i * dim_;
    for (std::size_t j = 0; j < dim_; ++j) acc += cldouble(arow[j]) * cldouble(v[j]);
    out[i] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

cdouble trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.dim() == b.dim(), errc::dimension_mismatch, "trace_product");
  const std::size_t n = a.dim();
  cldouble acc = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) acc += cldouble(a(i, j)) * cldouble(b(j, i));
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.dim() == b.dim(), errc::dimension_mismatch, "frobenius_distance");
  long double s = 0;
  for (std::size_t k = 0; k < a.raw().size(); ++k) {
    const cdouble d = a.raw()[k] - b.raw()[k];
    s += (long double)d.real() * d.real() + (long double)d.imag() * d.imag();
  }
  return static_cast<double>(std::sqrt(s));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.dim() == b.dim(), errc::dimension_mismatch, "max_abs_diff");
  double m = 0;
  for (std::size_t k = 0; k < a.raw().size(); ++k) m = std::max(m, std::abs(a.raw()[k] - b.raw()[k]));
  return m;
}

cdouble vdot(std::span<const cdouble> a, std::span<const cdouble> b) {
  require(a.size() == b.size(), errc::dimension_mismatch, "vdot");
  cldouble acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(cldouble(a[i])) * cldouble(b[i]);
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

double l2_norm(std::span<const cdouble> v) {
  long double s = 0;
  for (const auto& z : v) s += (long double)z.real() * z.real() + (long double)z.imag() * z.imag();
  return static_cast<double>(std::sqrt(s));
}

bool vec_finite(std::span<const cdouble> v) noexcept {
  for (const auto& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexMatrix outer_product(std::span<const cdouble> v, std::span<const cdouble> w) {
  require(v.size() == w.size(), errc::dimension_mismatch, "outer_product");
  ComplexMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
  return m;
}

ComplexMatrix outer_product(std::span<const cdouble> v) { return outer_product(v, v); }

}  // namespace rho
