#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "demos.hpp"
#include "rho/errors.hpp"

namespace {

int run(const std::string& name, const rho::demos::DemoOptions& options) {
  const auto id = rho::demos::demo_from_name(name);
  if (!id) {
    std::cerr << "unknown demo '" << name << "'; see `rho-engine list`\n";
    return 2;
  }
  const auto cfg = rho::demos::resolve_config(*id, options);
  const auto report = rho::demos::run_demo(cfg);
  rho::demos::emit_report(report, cfg);
  std::cerr << "demo " << report.demo_id << ": " << (report.pass ? "PASS" : "FAIL") << "\n";
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"density-operator quantum mechanics engine"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "enumerate demos and the claims they reproduce");

  auto* run_cmd = app.add_subcommand("run", "run one demo and emit its report");
  std::string demo_name;
  run_cmd->add_option("demo", demo_name, "demo id (see `list`)")->required();

  rho::demos::DemoOptions opt;
  std::size_t grid_n = 0, members = 0;
  double a = 0, mass = 0, hbar = 0, dt = 0, t_final = 0;
  long mode_n = 0;
  std::uint64_t seed = 0;
  std::string format, out_path;

  auto* o_grid = run_cmd->add_option("--grid-n", grid_n, "grid point count N");
  auto* o_a = run_cmd->add_option("--a", a, "well half-width (hard wall) or circumference (ring)");
  auto* o_mass = run_cmd->add_option("--mass", mass, "particle mass m0");
  auto* o_hbar = run_cmd->add_option("--hbar", hbar, "reduced Planck constant");
  auto* o_mode = run_cmd->add_option("--mode-n", mode_n, "mode number (j on a ring, n in the well)");
  auto* o_seed = run_cmd->add_option("--seed", seed, "random stream seed")->envname("RHO_ENGINE_SEED");
  auto* o_members = run_cmd->add_option("--members", members, "ensemble member count");
  auto* o_dt = run_cmd->add_option("--dt", dt, "integrator step (default t_final/1000)");
  auto* o_tf = run_cmd->add_option("--t-final", t_final, "evolution end time");
  auto* o_fmt = run_cmd->add_option("--format", format, "report format: csv or json")
                    ->check(CLI::IsMember({"csv", "json"}));
  auto* o_out = run_cmd->add_option("--out", out_path, "report output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (list_cmd->parsed()) {
    for (const auto& d : rho::demos::demo_catalog())
      std::printf("%-18s %s\n", d.name, d.claim);
    return 0;
  }

  if (o_grid->count()) opt.grid_n = grid_n;
  if (o_a->count()) opt.a = a;
  if (o_mass->count()) opt.mass = mass;
  if (o_hbar->count()) opt.hbar = hbar;
  if (o_mode->count()) opt.mode_n = mode_n;
  if (o_seed->count()) opt.seed = seed;
  if (o_members->count()) opt.members = members;
  if (o_dt->count()) opt.dt = dt;
  if (o_tf->count()) opt.t_final = t_final;
  if (o_fmt->count()) opt.format = format;
  if (o_out->count()) opt.out_path = out_path;

  try {
    return run(demo_name, opt);
  } catch (const rho::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == rho::errc::report_write_failure ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
