#include "rho/spin.hpp"

#include <cmath>

#include "rho/errors.hpp"

namespace rho {

SpinOperators spin_operators(unsigned two_j, double hbar) {
  require(two_j >= 1, errc::invalid_spin, "two_j must be >= 1");
  require(hbar > 0, errc::invalid_argument, "hbar must be positive");
  const std::size_t dim = two_j + 1;
  const double j = static_cast<double>(two_j) / 2.0;

  // basis index k corresponds to m = j - k
  ComplexMatrix jp(dim);  // raising: m -> m + 1, i.e. index k -> k - 1
  for (std::size_t k = 1; k < dim; ++k) {
    const double m = j - static_cast<double>(k);
    jp(k - 1, k) = hbar * std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  const ComplexMatrix jm = jp.adjoint();

  ComplexMatrix jx = jp;
  jx += jm;
  jx *= 0.5;
  ComplexMatrix jy = jp;
  jy -= jm;
  jy *= cdouble(0.0, -0.5);
  ComplexMatrix jz(dim);
  for (std::size_t k = 0; k < dim; ++k) jz(k, k) = hbar * (j - static_cast<double>(k));

  return {HermitianOperator::symmetrize(std::move(jx), "Jx"),
          HermitianOperator::symmetrize(std::move(jy), "Jy"),
          HermitianOperator::symmetrize(std::move(jz), "Jz")};
}

}  // namespace rho
