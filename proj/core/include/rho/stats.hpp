#pragma once

#include <cstddef>
#include <vector>

namespace rho::stats {

/// log Gamma(x), x > 0 (Lanczos).
double gamma_ln(double x);

/// Regularized lower/upper incomplete gamma functions P(a, x), Q(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

/// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_pvalue(double statistic, std::size_t dof);

struct ChiSquareResult {
  double statistic;
  std::size_t dof;
  double p_value;
};

/// Pearson chi-square test of independence on an r x c contingency table of
/// observed counts. No bin merging here; callers prepare the table.
ChiSquareResult chi_square_contingency(const std::vector<std::vector<double>>& observed);

}  // namespace rho::stats
