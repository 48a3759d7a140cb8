#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_helpers.hpp"

using namespace rho;

namespace {

const HermitianOperator& sigma_z() {
  static auto op = HermitianOperator::from_matrix(ComplexMatrix::from_rows({{1, 0}, {0, -1}}));
  return op;
}

}  // namespace

TEST_CASE("expectation basics") {
  auto up = projector_from_vector(cvector{1.0, 0.0});
  CHECK(expectation(up, sigma_z()) == doctest::Approx(1.0));

  auto half = mixture({{{0.5, projector_from_vector(cvector{1.0, 0.0})},
                        {0.5, projector_from_vector(cvector{0.0, 1.0})}}});
  // any traceless observable averages to zero in the maximally mixed state
  rng::Stream st(31);
  auto basis = observable_basis(2);
  for (const auto& g : basis.operators) CHECK(std::abs(expectation(half, g)) < 1e-14);
}

TEST_CASE("variance: eigenprojector has zero variance, mixed state does not") {
  auto up = projector_from_vector(cvector{1.0, 0.0});
  CHECK(variance(up, sigma_z()).variance == 0.0);

  auto half = mixture({{{0.5, projector_from_vector(cvector{1.0, 0.0})},
                        {0.5, projector_from_vector(cvector{0.0, 1.0})}}});
  auto v = variance(half, sigma_z());
  CHECK(v.variance == doctest::Approx(1.0));
  CHECK(v.std_dev == doctest::Approx(1.0));
}

TEST_CASE("variance on the dense path matches the factored path") {
  rng::Stream st(77);
  for (std::size_t dim = 2; dim <= 6; ++dim) {
    auto rho_f = random_density(dim, dim > 2 ? dim - 1 : 1, st.next_u64());
    auto x = testing::random_hermitian(dim, st);
    const double vf = variance(rho_f, x).variance;
    const double vd = variance(rho_f.without_components(), x).variance;
    CHECK(vf == doctest::Approx(vd).epsilon(1e-10));
  }
}

TEST_CASE("variance flags genuinely broken input") {
  // trace-one hermitian matrix that is not positive: variance can go negative
  auto bad = DensityOperator::from_matrix_unchecked(
      ComplexMatrix::from_rows({{2.0, 0}, {0, -1.0}}), std::nullopt);
  // <X> = 0 but <X^2> = -2 for X = diag(1, 2)
  auto x = HermitianOperator::from_matrix(ComplexMatrix::from_rows({{1, 0}, {0, 2}}));
  CHECK_THROWS_AS(variance(bad, x), Error);
  try {
    variance(bad, x);
  } catch (const Error& e) {
    CHECK(e.code() == errc::negative_variance);
  }
}

TEST_CASE("outcome_distribution: degenerate observable under the maximally mixed state") {
  auto third = mixture({{{1.0 / 3, projector_from_vector(cvector{1.0, 0.0, 0.0})},
                         {1.0 / 3, projector_from_vector(cvector{0.0, 1.0, 0.0})},
                         {1.0 / 3, projector_from_vector(cvector{0.0, 0.0, 1.0})}}});
  auto a = HermitianOperator::from_matrix(ComplexMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
  auto dist = outcome_distribution(third, a);
  REQUIRE(dist.entries.size() == 2);
  CHECK(dist.entries[0].eigenvalue == doctest::Approx(1.0));
  CHECK(dist.entries[0].probability == doctest::Approx(2.0 / 3));
  CHECK(dist.entries[0].degeneracy == 2);
  CHECK(dist.entries[1].eigenvalue == doctest::Approx(2.0));
  CHECK(dist.entries[1].probability == doctest::Approx(1.0 / 3));
  CHECK(dist.entries[1].degeneracy == 1);
}

TEST_CASE("outcome_distribution: measurement results are certain on eigenprojectors") {
  rng::Stream st(83);
  auto a = testing::random_hermitian(4, st);
  auto d = spectral_decompose(a);
  auto rho_2 = projector_from_vector(d.eigenvector(2));
  auto dist = outcome_distribution(rho_2, a);
  for (std::size_t g = 0; g < dist.entries.size(); ++g) {
    bool contains = false;
    for (std::size_t k : d.groups()[g].members) contains = contains || k == 2;
    CHECK(dist.entries[g].probability == doctest::Approx(contains ? 1.0 : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("probability theorem vs brute force on random pairs, both code paths") {
  rng::Stream st(91);
  for (std::size_t dim = 2; dim <= 8; ++dim) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t rank = 1 + st.next_u64() % dim;
      auto rho_r = random_density(dim, rank, st.next_u64());
      auto a = testing::random_hermitian(dim, st);
      auto d = spectral_decompose(a);
      const auto brute = testing::brute_force_outcome_probabilities(rho_r, d);

      for (bool dense : {false, true}) {
        const auto dist = dense ? outcome_distribution(rho_r.without_components(), d)
                                : outcome_distribution(rho_r, d);
        REQUIRE(dist.entries.size() == brute.size());
        double worst = 0;
        for (std::size_t g = 0; g < brute.size(); ++g)
          worst = std::max(worst, std::abs(dist.entries[g].probability - brute[g]));
        CHECK(worst <= 1e-10);
      }
    }
  }
}

TEST_CASE("mean consistency: sum a_n W(a_n) = Tr(rho A)") {
  rng::Stream st(97);
  for (std::size_t dim = 2; dim <= 8; ++dim) {
    auto rho_r = random_density(dim, dim, st.next_u64());
    auto a = testing::random_hermitian(dim, st);
    auto dist = outcome_distribution(rho_r, a);
    CHECK(std::abs(dist.mean() - expectation(rho_r, a)) <= 1e-9);
  }
}

TEST_CASE("uncertainty: spin-1/2 equality case") {
  auto s = spin_operators(1, 1.0);
  auto up = projector_from_vector(cvector{1.0, 0.0});
  auto r = uncertainty_check(up, s.jx, s.jy);
  CHECK(r.delta_a == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.delta_b == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.bound == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(r.product == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(std::abs(r.slack) <= 1e-12);
  CHECK(r.satisfied);
}

TEST_CASE("uncertainty: maximally mixed state has a vanishing bound") {
  auto s = spin_operators(1, 1.0);
  auto half = mixture({{{0.5, projector_from_vector(cvector{1.0, 0.0})},
                        {0.5, projector_from_vector(cvector{0.0, 1.0})}}});
  auto r = uncertainty_check(half, s.jx, s.jy);
  CHECK(r.bound == doctest::Approx(0.0));
  CHECK(r.product == doctest::Approx(0.25));
  CHECK(r.satisfied);
}

TEST_CASE("uncertainty: commuting observables bound nothing") {
  rng::Stream st(3);
  auto a = HermitianOperator::from_matrix(ComplexMatrix::from_rows({{1, 0}, {0, 3}}));
  auto b = HermitianOperator::from_matrix(ComplexMatrix::from_rows({{-2, 0}, {0, 5}}));
  for (int trial = 0; trial < 5; ++trial) {
    auto rho_r = random_density(2, 1 + st.next_u64() % 2, st.next_u64());
    auto r = uncertainty_check(rho_r, a, b);
    CHECK(r.bound == doctest::Approx(0.0));
    CHECK(r.satisfied);
  }
}

TEST_CASE("uncertainty inequality holds across random triples") {
  rng::Stream st(111);
  for (std::size_t dim = 2; dim <= 8; ++dim) {
    for (int trial = 0; trial < 40; ++trial) {
      auto rho_r = random_density(dim, 1 + st.next_u64() % dim, st.next_u64());
      auto a = testing::random_hermitian(dim, st);
      auto b = testing::random_hermitian(dim, st);
      CHECK(uncertainty_check(rho_r, a, b).slack >= -1e-9);
    }
  }
}

TEST_CASE("observable basis: dim 2 reproduces the pauli triple") {
  auto basis = observable_basis(2);
  REQUIRE(basis.operators.size() == 3);
  CHECK(max_abs_diff(basis.operators[0].matrix(), ComplexMatrix::from_rows({{0, 1}, {1, 0}})) == 0.0);
  CHECK(max_abs_diff(basis.operators[1].matrix(),
                     ComplexMatrix::from_rows({{0, cdouble(0, -1)}, {cdouble(0, 1), 0}})) == 0.0);
  CHECK(max_abs_diff(basis.operators[2].matrix(), ComplexMatrix::from_rows({{1, 0}, {0, -1}})) == 0.0);
}

TEST_CASE("observable basis: counts, tracelessness, orthogonality") {
  for (std::size_t dim : {2u, 3u, 5u}) {
    auto basis = observable_basis(dim);
    CHECK(basis.operators.size() == dim * dim - 1);
    for (std::size_t i = 0; i < basis.operators.size(); ++i) {
      CHECK(std::abs(basis.operators[i].matrix().trace()) <= 1e-14);
      for (std::size_t j = i; j < basis.operators.size(); ++j) {
        const double want = i == j ? 2.0 : 0.0;
        CHECK(std::abs(trace_product(basis.operators[i].matrix(), basis.operators[j].matrix()) -
                       cdouble(want)) <= 1e-10);
      }
    }
  }
  CHECK_THROWS_AS(observable_basis(1), Error);
}

TEST_CASE("tomography: bloch north pole") {
  auto basis = observable_basis(2);
  auto up = projector_from_vector(cvector{1.0, 0.0});
  auto vals = expectations_from_state(up, basis);
  CHECK(vals[0] == doctest::Approx(0.0));
  CHECK(vals[1] == doctest::Approx(0.0));
  CHECK(vals[2] == doctest::Approx(1.0));

  auto back = state_from_expectations(std::vector<double>{0.0, 0.0, 1.0}, basis);
  CHECK(max_abs_diff(back.matrix(), ComplexMatrix::from_rows({{1, 0}, {0, 0}})) < 1e-14);
}

TEST_CASE("tomography: bloch vector outside the ball is rejected") {
  auto basis = observable_basis(2);
  CHECK_THROWS_AS(state_from_expectations(std::vector<double>{0.0, 0.0, 2.0}, basis), Error);
  try {
    state_from_expectations(std::vector<double>{0.0, 0.0, 2.0}, basis);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_positive);
  }
}

TEST_CASE("tomography: round trip is the identity on states") {
  rng::Stream st(119);
  for (std::size_t dim = 2; dim <= 6; ++dim) {
    auto basis = observable_basis(dim);
    for (int trial = 0; trial < 20; ++trial) {
      auto rho_r = random_density(dim, 1 + st.next_u64() % dim, st.next_u64());
      auto vals = expectations_from_state(rho_r, basis);
      auto back = state_from_expectations(vals, basis);
      CHECK(frobenius_distance(back.matrix(), rho_r.matrix()) <= 1e-10);
    }
  }
}

TEST_CASE("tomography: inverse-then-forward is the identity on admissible values") {
  rng::Stream st(127);
  for (std::size_t dim : {2u, 4u, 6u}) {
    auto basis = observable_basis(dim);
    for (int trial = 0; trial < 10; ++trial) {
      // values drawn from an actual state are admissible by construction
      auto vals = expectations_from_state(random_density(dim, dim, st.next_u64()), basis);
      auto forward = expectations_from_state(state_from_expectations(vals, basis), basis);
      for (std::size_t k = 0; k < vals.size(); ++k)
        CHECK(std::abs(forward[k] - vals[k]) <= 1e-10);
    }
  }
}

TEST_CASE("tomography: wrong value count is rejected") {
  auto basis = observable_basis(3);
  CHECK_THROWS_AS(state_from_expectations(std::vector<double>{0.1, 0.2}, basis), Error);
}
