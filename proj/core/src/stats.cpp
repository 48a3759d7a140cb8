#include "rho/stats.hpp"

#include <cmath>
#include <limits>

#include "rho/errors.hpp"

namespace rho::stats {

double gamma_ln(double x) {
  require(x > 0.0, errc::invalid_argument, "gamma_ln needs x > 0");
  static const double cof[14] = {
      57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
      -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
      -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
      0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
      -0.261908384015814087e-4, 0.368991826595316234e-5};
  double y = x;
  const double tmp0 = x + 5.24218750000000000;
  const double tmp = (x + 0.5) * std::log(tmp0) - tmp0;
  double ser = 0.999999999999997092;
  for (double c : cof) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

namespace {

// series expansion of P(a, x), valid for x < a + 1
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 10000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16)
      return sum * std::exp(-x + a * std::log(x) - gamma_ln(a));
  }
  fail(errc::convergence_failure, "incomplete gamma series did not converge");
}

// continued fraction for Q(a, x), valid for x >= a + 1 (modified Lentz)
double gamma_q_cf(double a, double x) {
  const double fpmin = std::numeric_limits<double>::min() / 1e-16;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return std::exp(-x + a * std::log(x) - gamma_ln(a)) * h;
  }
  fail(errc::convergence_failure, "incomplete gamma continued fraction did not converge");
}

}  // namespace

double gamma_p(double a, double x) {
  require(a > 0.0 && x >= 0.0, errc::invalid_argument, "gamma_p domain");
  if (x == 0.0) return 0.0;
  return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  require(a > 0.0 && x >= 0.0, errc::invalid_argument, "gamma_q domain");
  if (x == 0.0) return 1.0;
  return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi_square_pvalue(double statistic, std::size_t dof) {
  require(statistic >= 0.0, errc::invalid_argument, "chi-square statistic must be >= 0");
  if (dof == 0) return 1.0;
  return gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_contingency(const std::vector<std::vector<double>>& observed) {
  const std::size_t r = observed.size();
  require(r >= 2, errc::insufficient_data, "need at least two groups");
  const std::size_t c = observed.front().size();
  require(c >= 1, errc::insufficient_data, "need at least one outcome bin");
  for (const auto& row : observed)
    require(row.size() == c, errc::invalid_argument, "ragged contingency table");

  std::vector<double> row_tot(r, 0.0), col_tot(c, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      require(observed[i][j] >= 0.0, errc::invalid_argument, "negative count");
      row_tot[i] += observed[i][j];
      col_tot[j] += observed[i][j];
      total += observed[i][j];
    }
  require(total > 0.0, errc::insufficient_data, "empty contingency table");

  double stat = 0.0;
  std::size_t effective_cols = 0;
  for (std::size_t j = 0; j < c; ++j)
    if (col_tot[j] > 0.0) ++effective_cols;
  for (std::size_t i = 0; i < r; ++i) {
    if (row_tot[i] == 0.0) continue;
    for (std::size_t j = 0; j < c; ++j) {
      if (col_tot[j] == 0.0) continue;
      const double expected = row_tot[i] * col_tot[j] / total;
      const double d = observed[i][j] - expected;
      stat += d * d / expected;
    }
  }
  std::size_t effective_rows = 0;
  for (std::size_t i = 0; i < r; ++i)
    if (row_tot[i] > 0.0) ++effective_rows;
  require(effective_rows >= 2, errc::insufficient_data, "fewer than two non-empty groups");

  const std::size_t dof = (effective_rows - 1) * (effective_cols >= 1 ? effective_cols - 1 : 0);
  return {stat, dof, chi_square_pvalue(stat, dof)};
}

}  // namespace rho::stats
