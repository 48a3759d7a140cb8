// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 10 drives the installed CLI binary; its path comes from
// the RHO_ENGINE_CLI environment variable (set automatically under ctest).

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "rho/rho.hpp"
#include "test_helpers.hpp"

using namespace rho;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;
  std::function<void(Outcome&)> run;
};

// --- 1: uncertainty inequality --------------------------------------------

void criterion_uncertainty(Outcome& out) {
  for (std::size_t dim = 2; dim <= 8; ++dim) {
    auto stream = rng::Stream::keyed(2024, 0x616363ull, dim);
    double min_slack = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t rank = 1 + stream.next_u64() % dim;
      const auto rho_t = random_density(dim, rank, stream.next_u64());
      const auto a = testing::random_hermitian(dim, stream);
      const auto b = testing::random_hermitian(dim, stream);
      min_slack = std::min(min_slack, uncertainty_check(rho_t, a, b).slack);
    }
    out.check(min_slack >= -1e-9,
              "dim " + std::to_string(dim) + " min slack " + std::to_string(min_slack));
  }
  const auto s = spin_operators(1, 1.0);
  const auto up = projector_from_vector(cvector{1.0, 0.0});
  const auto r = uncertainty_check(up, s.jx, s.jy);
  out.check(std::abs(r.slack) <= 1e-12, "equality-case slack " + std::to_string(r.slack));
}

// --- 2: free particle ------------------------------------------------------

void criterion_free_particle(Outcome& out) {
  const auto g = GridSystem::ring(1.0, 256);
  const auto ops = grid_operators(g);
  const long j = 3;
  const double pk = g.mode_momentum(j);

  const auto cosw = to_projector(ring_cosine(g, j));
  const auto plus = to_projector(ring_plane_wave(g, j));
  const auto minus = to_projector(ring_plane_wave(g, -j));

  out.check(std::abs(expectation(cosw, ops.p)) <= 1e-10, "<p> cosine");
  out.check(std::abs(expectation(plus, ops.p) - pk) <= 1e-10, "<p> plane+");
  out.check(std::abs(expectation(minus, ops.p) + pk) <= 1e-10, "<p> plane-");

  const double ec = expectation(cosw, ops.h_free);
  const double ep = expectation(plus, ops.h_free);
  const double em = expectation(minus, ops.h_free);
  out.check(std::abs(ep - ec) <= 1e-10 && std::abs(em - ec) <= 1e-10, "energies differ");
}

// --- 3: well dual distributions --------------------------------------------

void criterion_well_dual(Outcome& out) {
  const double a = 1.0, hbar = 1.0;
  const auto g = GridSystem::hard_wall(a, 512, 1.0, hbar);
  const auto ops = grid_operators(g);
  const auto decomp = spectral_decompose(ops.h_free);

  for (std::size_t n : {1u, 2u, 5u}) {
    const auto [psi, eps_n] = well_eigenstate(g, n);
    const auto rho_n = to_projector(psi);

    const auto dist = outcome_distribution(rho_n, decomp);
    double w_eps = 0;
    for (const auto& e : dist.entries)
      if (std::abs(e.eigenvalue - eps_n) <= 0.005 * eps_n) w_eps += e.probability;
    out.check(w_eps >= 0.999, "W(eps_" + std::to_string(n) + ") = " + std::to_string(w_eps));

    out.check(variance(rho_n, ops.p).std_dev > 0.0, "momentum std_dev not positive");

    const double energy = expectation(rho_n, ops.h_free);  // <p^2>/2m, V = 0 in the well
    out.check(std::abs(energy - eps_n) / eps_n <= 1e-3,
              "energy rel err " + std::to_string(std::abs(energy - eps_n) / eps_n));

    // pointwise oracle comparison on a representative momentum set
    const double kappa = n * kPi / (2.0 * a);
    auto psi_x = [&](double x) {
      return (n % 2 == 1) ? std::cos(kappa * x) / std::sqrt(a) : std::sin(kappa * x) / std::sqrt(a);
    };
    std::vector<double> ps;
    for (int i = 0; i <= 160; ++i) ps.push_back(-20.0 * n * hbar / a + 0.25 * n * i);
    const auto dens = well_momentum_density(a, n, ps, hbar);
    double worst = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      auto integrand = [&](double x) {
        return std::complex<double>(std::polar(psi_x(x), -ps[i] * x / hbar));
      };
      const auto phi = testing::simpson(integrand, -a, a, 8192) / std::sqrt(2.0 * kPi * hbar);
      worst = std::max(worst, std::abs(dens[i] - std::norm(phi)));
    }
    out.check(worst <= 1e-8, "oracle mismatch " + std::to_string(worst));

    // trapezoid normalization over [-40 n hbar/a, 40 n hbar/a]
    const double pmax = 40.0 * n * hbar / a;
    const std::size_t quad_n = 4000 * n + 1;
    std::vector<double> qp(quad_n);
    for (std::size_t i = 0; i < quad_n; ++i)
      qp[i] = -pmax + 2.0 * pmax * static_cast<double>(i) / (quad_n - 1);
    const auto qd = well_momentum_density(a, n, qp, hbar);
    long double integral = 0;
    for (std::size_t i = 0; i + 1 < quad_n; ++i)
      integral += 0.5L * (qd[i] + qd[i + 1]) * (qp[i + 1] - qp[i]);
    out.check(std::abs((double)integral - 1.0) <= 1e-4,
              "normalization " + std::to_string((double)integral));
  }
}

// --- 4: collapse contradiction ----------------------------------------------

void criterion_collapse(Outcome& out) {
  const auto g = GridSystem::ring(1.0, 256);
  const auto rho_p = to_projector(ring_plane_wave(g, 3));
  const double dp = outcome_distribution(rho_p, ring_momentum_decomposition(g)).std_dev();
  const double dx = outcome_distribution(rho_p, position_decomposition(g)).std_dev();
  out.check(dp <= 1e-12, "delta_p = " + std::to_string(dp));
  out.check(dx > 0.0, "delta_x not positive");
  out.check(dx * dp < 0.99 * 0.5 * g.hbar, "product not below 0.99 hbar/2");
}

// --- 5: classical limit ------------------------------------------------------

void criterion_classical_limit(Outcome& out) {
  const auto g = GridSystem::ring(1.0, 2048);
  const double x0 = 0.1 * g.length;
  double prev_dx = std::numeric_limits<double>::infinity();
  double prev_rel_dp = std::numeric_limits<double>::infinity();
  for (int m = 0; m < 4; ++m) {
    const double sigma = g.length / std::pow(2.0, 3 + m);
    const double p0 = g.mode_momentum(8L << (2 * m));
    const auto w = gaussian_packet(g, x0, p0, sigma);
    const auto xm = position_moments(w);
    const auto pm = momentum_moments(w);
    const double ratio = xm.std_dev * pm.std_dev / (0.5 * g.hbar);
    const double rel_dp = pm.std_dev / p0;
    out.check(xm.std_dev / g.length < prev_dx, "dx/L not strictly decreasing");
    out.check(rel_dp < prev_rel_dp, "dp/p0 not strictly decreasing");
    // [1, 1.05] as a real interval; 1e-9 floating-point slack at the closed edge
    out.check(ratio >= 1.0 - 1e-9 && ratio <= 1.05,
              "ratio " + std::to_string(ratio) + " outside [1, 1.05]");
    prev_dx = xm.std_dev / g.length;
    prev_rel_dp = rel_dp;
  }
}

// --- 6: tomography -----------------------------------------------------------

void criterion_tomography(Outcome& out) {
  for (std::size_t dim = 2; dim <= 6; ++dim) {
    const auto basis = observable_basis(dim);
    auto stream = rng::Stream::keyed(99, 0x746f6dull, dim);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t rank = 1 + stream.next_u64() % dim;
      const auto rho_t = random_density(dim, rank, stream.next_u64());
      const auto vals = expectations_from_state(rho_t, basis);
      const auto back = state_from_expectations(vals, basis);
      worst = std::max(worst, frobenius_distance(back.matrix(), rho_t.matrix()));
    }
    out.check(worst <= 1e-10, "dim " + std::to_string(dim) + " roundtrip " + std::to_string(worst));
  }
  bool raised = false;
  try {
    state_from_expectations(std::vector<double>{0.0, 0.0, 2.0}, observable_basis(2));
  } catch (const Error& e) {
    raised = e.code() == errc::not_positive;
  }
  out.check(raised, "NotPositive not raised for bloch vector (0,0,2)");
}

// --- 7: dynamics --------------------------------------------------------------

void criterion_dynamics(Outcome& out) {
  const auto h = HermitianOperator::from_matrix(
      ComplexMatrix::from_rows({{0.5, 0}, {0, -0.5}}), 1e-10, "H");
  const auto sx =
      HermitianOperator::from_matrix(ComplexMatrix::from_rows({{0, 1}, {1, 0}}), 1e-10, "sx");
  const double s = 1.0 / std::sqrt(2.0);
  const auto rho0 = projector_from_vector(cvector{s, s});

  std::vector<double> times;
  for (int i = 0; i <= 200; ++i) times.push_back(2.0 * kPi * i / 200.0);
  const auto rec = trajectory(rho0, Schedule::constant(h), times, {sx});
  double max_err = 0;
  for (std::size_t i = 0; i < times.size(); ++i)
    max_err = std::max(max_err, std::abs(rec.expectations.at("sx")[i] - std::cos(times[i])));
  out.check(max_err <= 1e-8, "precession error " + std::to_string(max_err));

  // 1e4 midpoint steps through the sampled-schedule path
  const auto sched_const = Schedule::sampled(2, [&](double) { return h; });
  const double t_final = 2.0 * kPi;
  const auto rho_t = evolve_timedep(rho0, sched_const, t_final, t_final / 10000.0);
  const double trace_drift = std::abs(rho_t.matrix().trace() - cdouble(1.0));
  const double purity_drift = std::abs(rho_t.purity() - rho0.purity());
  out.check(trace_drift <= 1e-10, "trace drift " + std::to_string(trace_drift));
  out.check(purity_drift <= 1e-9, "purity drift " + std::to_string(purity_drift));

  // dt-halving against a fine reference: second-order stepping
  auto h_of_t = [](double t) {
    return HermitianOperator::symmetrize(
        ComplexMatrix::from_rows({{0.7, 0.4 * t}, {0.4 * t, -0.7}}), "H(t)");
  };
  const auto sched = Schedule::sampled(2, h_of_t);
  const auto ref = evolve_timedep(rho0, sched, 1.0, 1.0 / 2048);
  const double e1 = frobenius_distance(evolve_timedep(rho0, sched, 1.0, 1.0 / 16).matrix(),
                                       ref.matrix());
  const double e2 = frobenius_distance(evolve_timedep(rho0, sched, 1.0, 1.0 / 32).matrix(),
                                       ref.matrix());
  out.check(e1 / e2 >= 3.5 && e1 / e2 <= 4.5, "dt-halving ratio " + std::to_string(e1 / e2));

  // finite-difference check of d rho/dt = -(i/hbar)[H, rho]
  const auto rho_mid = evolve_const(rho0, h, 0.8);
  ComplexMatrix rhs = h.matrix() * rho_mid.matrix();
  rhs -= rho_mid.matrix() * h.matrix();
  rhs *= cdouble(0, -1.0);
  auto fd_err = [&](double step) {
    ComplexMatrix fd = evolve_const(rho0, h, 0.8 + step).matrix();
    fd -= evolve_const(rho0, h, 0.8 - step).matrix();
    fd *= cdouble(1.0 / (2.0 * step));
    return frobenius_distance(fd, rhs);
  };
  const double f1 = fd_err(0.02), f2 = fd_err(0.01);
  out.check(f1 / f2 >= 3.5 && f1 / f2 <= 4.5,
            "equation-of-motion FD ratio " + std::to_string(f1 / f2));
}

// --- 8: ensembles --------------------------------------------------------------

void criterion_ensembles(Outcome& out) {
  const std::size_t members = 10000;
  const double s = 1.0 / std::sqrt(2.0);
  const auto z_pair =
      EnsembleSpec::heterogeneous({{"zero", members / 2, projector_from_vector(cvector{1.0, 0.0})},
                                   {"one", members / 2, projector_from_vector(cvector{0.0, 1.0})}});
  const auto x_pair =
      EnsembleSpec::heterogeneous({{"plus", members / 2, projector_from_vector(cvector{s, s})},
                                   {"minus", members / 2, projector_from_vector(cvector{s, -s})}});
  const double frob = frobenius_distance(effective_density(z_pair).matrix(),
                                         effective_density(x_pair).matrix());
  out.check(frob <= 1e-15, "effective densities differ by " + std::to_string(frob));

  const auto sz =
      HermitianOperator::from_matrix(ComplexMatrix::from_rows({{1, 0}, {0, -1}}), 1e-10, "sz");
  const auto verdict =
      subdivision_test(sample_measurements(z_pair, sz, 7), Partition::by_label(), 0.01);
  out.check(verdict.p_value < 1e-6, "by-label p " + std::to_string(verdict.p_value));

  const auto half = effective_density(z_pair);
  int passes = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto records = sample_measurements(EnsembleSpec::homogeneous(members, half), sz, seed);
    const auto v = subdivision_test(records, Partition::random_halves(seed + 5000), 0.01);
    passes += v.homogeneous_at(0.01) ? 1 : 0;
  }
  out.check(passes >= 95, "random-halves null passes " + std::to_string(passes) + "/100");
}

// --- 9: probability-theorem oracle ----------------------------------------------

void criterion_probability_oracle(Outcome& out) {
  auto stream = rng::Stream::keyed(7, 0x6f7261ull, 0);
  double worst = 0;
  int pairs = 0;
  while (pairs < 500) {
    const std::size_t dim = 2 + pairs % 7;  // cycles dims 2..8
    const std::size_t rank = 1 + stream.next_u64() % dim;
    const auto rho_t = random_density(dim, rank, stream.next_u64());
    const auto a = testing::random_hermitian(dim, stream);
    const auto d = spectral_decompose(a);
    const auto brute = testing::brute_force_outcome_probabilities(rho_t, d);
    // exercise both the factored and the dense implementation routes
    const auto dist = (pairs % 2 == 0) ? outcome_distribution(rho_t, d)
                                       : outcome_distribution(rho_t.without_components(), d);
    for (std::size_t g = 0; g < brute.size(); ++g)
      worst = std::max(worst, std::abs(dist.entries[g].probability - brute[g]));
    ++pairs;
  }
  out.check(worst <= 1e-10, "max |W - brute| = " + std::to_string(worst));
}

// --- 10: full CLI suite -----------------------------------------------------------

void criterion_cli(Outcome& out) {
  std::string cli;
  if (const char* env = std::getenv("RHO_ENGINE_CLI")) cli = env;
  if (cli.empty()) {
    for (const char* guess : {"./tools/rho-engine", "./build/tools/rho-engine", "rho-engine"}) {
      if (std::filesystem::exists(guess)) {
        cli = guess;
        break;
      }
    }
  }
  if (cli.empty()) {
    out.check(false, "CLI binary not found; set RHO_ENGINE_CLI");
    return;
  }

  const auto dir = std::filesystem::temp_directory_path() /
                   ("rho-accept-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const char* demos[] = {"FreeParticle",     "WellDual",     "CollapseCheck", "ClassicalLimit",
                         "UncertaintySweep", "EnsembleDemo", "Evolve",        "Tomography"};
  const auto t0 = std::chrono::steady_clock::now();
  for (const char* demo : demos) {
    const std::string cmd = cli + " run " + demo + " --format json --out " +
                            (dir / (std::string(demo) + ".json")).string() + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    const int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    out.check(code == 0, std::string(demo) + " exited with " + std::to_string(code));
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.check(elapsed < 120.0, "suite took " + std::to_string(elapsed) + " s");
  std::filesystem::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "uncertainty inequality over random triples, equality case exact", 10.0,
       criterion_uncertainty},
      {2, "free-particle momenta and shared energy", 1.0, criterion_free_particle},
      {3, "well dual distributions and momentum-density oracle", 30.0, criterion_well_dual},
      {4, "momentum-eigenprojector uncertainty-product contradiction", 1.0, criterion_collapse},
      {5, "classical limit: shrinking relative widths at fixed product", 10.0,
       criterion_classical_limit},
      {6, "tomography round trip and positivity rejection", 10.0, criterion_tomography},
      {7, "dynamics: precession, invariants, convergence orders", 20.0, criterion_dynamics},
      {8, "ensembles: indistinguishability and homogeneity tests", 30.0, criterion_ensembles},
      {9, "probability theorem vs brute-force eigenvector sums", 10.0,
       criterion_probability_oracle},
      {10, "full CLI demo suite exits cleanly", 120.0, criterion_cli},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  bool all_pass = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.check(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed >= c.time_limit_s)
      out.check(false, "runtime " + std::to_string(elapsed) + " s exceeds limit");
    all_pass = all_pass && out.pass;
    std::printf("[%s] criterion %2d: %s (%.2f s / %.0f s)%s%s\n", out.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), elapsed, c.time_limit_s, out.detail.empty() ? "" : " -- ",
                out.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
