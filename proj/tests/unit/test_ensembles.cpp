#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_helpers.hpp"

using namespace rho;

namespace {

const HermitianOperator& sigma_z() {
  static auto op =
      HermitianOperator::from_matrix(ComplexMatrix::from_rows({{1, 0}, {0, -1}}), 1e-10, "sz");
  return op;
}

const HermitianOperator& sigma_x() {
  static auto op =
      HermitianOperator::from_matrix(ComplexMatrix::from_rows({{0, 1}, {1, 0}}), 1e-10, "sx");
  return op;
}

EnsembleSpec z_pair(std::size_t each) {
  return EnsembleSpec::heterogeneous({{"zero", each, projector_from_vector(cvector{1.0, 0.0})},
                                      {"one", each, projector_from_vector(cvector{0.0, 1.0})}});
}

EnsembleSpec x_pair(std::size_t each) {
  const double s = 1.0 / std::sqrt(2.0);
  return EnsembleSpec::heterogeneous({{"plus", each, projector_from_vector(cvector{s, s})},
                                      {"minus", each, projector_from_vector(cvector{s, -s})}});
}

}  // namespace

TEST_CASE("effective density: matrix-level indistinguishability of distinct mixtures") {
  auto rz = effective_density(z_pair(5000));
  auto rx = effective_density(x_pair(5000));
  CHECK(max_abs_diff(rz.matrix(), ComplexMatrix::from_rows({{0.5, 0}, {0, 0.5}})) == 0.0);
  CHECK(frobenius_distance(rz.matrix(), rx.matrix()) <= 1e-15);

  auto rho_h = random_density(3, 2, 8);
  auto h = EnsembleSpec::homogeneous(100, rho_h);
  CHECK(max_abs_diff(effective_density(h).matrix(), rho_h.matrix()) == 0.0);
}

TEST_CASE("sampling an eigenprojector population is deterministic in the outcome") {
  rng::Stream st(3);
  auto a = testing::random_hermitian(3, st);
  auto d = spectral_decompose(a);
  auto spec = EnsembleSpec::homogeneous(500, projector_from_vector(d.eigenvector(1)));
  auto records = sample_measurements(spec, a, 99);
  REQUIRE(records.size() == 500);
  for (const auto& r : records)
    CHECK(r.eigenvalue == doctest::Approx(d.eigenvalues()[1]).epsilon(1e-12));
}

TEST_CASE("sampling is reproducible bit for bit") {
  auto spec = z_pair(200);
  auto r1 = sample_measurements(spec, sigma_x(), 7);
  auto r2 = sample_measurements(spec, sigma_x(), 7);
  REQUIRE(r1.size() == r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].eigenvalue == r2[i].eigenvalue);
    CHECK(r1[i].member_index == r2[i].member_index);
    CHECK(r1[i].label == r2[i].label);
  }
  auto r3 = sample_measurements(spec, sigma_x(), 8);
  bool any_different = false;
  for (std::size_t i = 0; i < r1.size(); ++i)
    any_different = any_different || r1[i].eigenvalue != r3[i].eigenvalue;
  CHECK(any_different);
}

TEST_CASE("binomial concentration of the maximally mixed qubit under sigma_z") {
  const std::size_t n = 10000;
  auto half = effective_density(z_pair(n / 2));
  auto spec = EnsembleSpec::homogeneous(n, half);
  auto records = sample_measurements(spec, sigma_z(), 2024);
  std::size_t plus = 0;
  long double mean = 0;
  for (const auto& r : records) {
    plus += r.eigenvalue > 0 ? 1 : 0;
    mean += r.eigenvalue;
  }
  mean /= n;
  const double freq = static_cast<double>(plus) / n;
  CHECK(std::abs(freq - 0.5) <= 3.0 * std::sqrt(0.25 / n));
  // empirical mean within 4 standard errors of Tr(rho A) = 0
  CHECK(std::abs((double)mean) <= 4.0 / std::sqrt((double)n));
}

TEST_CASE("by-label subdivision rejects the deterministic z ensemble") {
  auto records = sample_measurements(z_pair(5000), sigma_z(), 5);
  auto verdict = subdivision_test(records, Partition::by_label(), 0.01);
  CHECK(verdict.p_value < 1e-6);
  CHECK_FALSE(verdict.homogeneous_at(0.01));
  CHECK(verdict.statistic == doctest::Approx(10000.0));
}

TEST_CASE("the same ensemble is homogeneous in the sigma_x basis") {
  auto records = sample_measurements(z_pair(5000), sigma_x(), 5);
  auto verdict = subdivision_test(records, Partition::by_label(), 0.01);
  CHECK(verdict.homogeneous_at(0.01));
}

TEST_CASE("random halves of a homogeneous ensemble pass the null test") {
  auto half = effective_density(z_pair(5000));
  auto records = sample_measurements(EnsembleSpec::homogeneous(10000, half), sigma_z(), 1);
  auto verdict = subdivision_test(records, Partition::random_halves(1), 0.01);
  CHECK(verdict.homogeneous_at(0.01));
  CHECK(verdict.dof == 1);
}

TEST_CASE("null-hypothesis calibration over 100 seeds") {
  auto half = effective_density(z_pair(500));
  int passes = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto records = sample_measurements(EnsembleSpec::homogeneous(1000, half), sigma_z(), seed);
    auto verdict = subdivision_test(records, Partition::random_halves(seed + 1000), 0.01);
    passes += verdict.homogeneous_at(0.01) ? 1 : 0;
  }
  CHECK(passes >= 95);
}

TEST_CASE("equal effective densities yield statistically equal outcome records") {
  const std::size_t each = 5000;
  auto rz = sample_measurements(z_pair(each), sigma_x(), 31);
  auto rx = sample_measurements(x_pair(each), sigma_x(), 32);
  // pool and compare via the label partition of the merged record set
  std::vector<OutcomeRecord> merged;
  for (auto& r : rz) merged.push_back({r.member_index, "first", r.eigenvalue});
  for (auto& r : rx) merged.push_back({r.member_index + 2 * each, "second", r.eigenvalue});
  auto verdict = subdivision_test(merged, Partition::by_label(), 0.01);
  CHECK(verdict.homogeneous_at(0.01));
}

TEST_CASE("insufficient data paths") {
  auto half = effective_density(z_pair(10));
  auto spec = EnsembleSpec::homogeneous(20, half);
  auto records = sample_measurements(spec, sigma_z(), 1);
  // single label: by_label cannot partition
  CHECK_THROWS_AS(subdivision_test(records, Partition::by_label(), 0.01), Error);
  // empty records
  CHECK_THROWS_AS(subdivision_test(std::vector<OutcomeRecord>{}, Partition::by_label(), 0.01), Error);

  // all outcomes identical: trivially homogeneous
  auto up = EnsembleSpec::homogeneous(40, projector_from_vector(cvector{1.0, 0.0}));
  auto det = sample_measurements(up, sigma_z(), 1);
  auto verdict = subdivision_test(det, Partition::random_halves(2), 0.01);
  CHECK(verdict.p_value == 1.0);
  CHECK(verdict.homogeneous);
}

TEST_CASE("sampled mean converges to the effective-density expectation") {
  // biased qubit: Tr(rho sigma_z) = 0.6
  auto rho_b = mixture({{{0.8, projector_from_vector(cvector{1.0, 0.0})},
                         {0.2, projector_from_vector(cvector{0.0, 1.0})}}});
  const std::size_t n = 20000;
  auto records = sample_measurements(EnsembleSpec::homogeneous(n, rho_b), sigma_z(), 77);
  long double mean = 0;
  for (const auto& r : records) mean += r.eigenvalue;
  mean /= n;
  const double se = std::sqrt((1.0 - 0.6 * 0.6) / n);
  CHECK(std::abs((double)mean - 0.6) <= 4.0 * se);
}
