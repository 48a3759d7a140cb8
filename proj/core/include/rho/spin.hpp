#pragma once

#include "rho/operators.hpp"

namespace rho {

struct SpinOperators {
  HermitianOperator jx;
  HermitianOperator jy;
  HermitianOperator jz;
};

/// Angular momentum multiplet of spin j = two_j / 2, dimension two_j + 1,
/// built from the ladder operators. Satisfies [Jx, Jy] = i hbar Jz exactly
/// and Jx^2 + Jy^2 + Jz^2 = hbar^2 j (j + 1) I.
SpinOperators spin_operators(unsigned two_j, double hbar = 1.0);

}  // namespace rho
