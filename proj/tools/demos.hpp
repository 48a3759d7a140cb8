#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace rho::demos {

using Json = nlohmann::ordered_json;

enum class DemoId {
  free_particle,
  well_dual,
  collapse_check,
  classical_limit,
  uncertainty_sweep,
  ensemble_demo,
  evolve,
  tomography,
};

struct DemoInfo {
  DemoId id;
  const char* name;   // CLI spelling
  const char* claim;  // one-line statement of what the demo reproduces
};

const std::vector<DemoInfo>& demo_catalog();
std::optional<DemoId> demo_from_name(const std::string& name);

/// Flags the user actually passed; unset fields take per-demo defaults.
struct DemoOptions {
  std::optional<std::size_t> grid_n;
  std::optional<double> a;  // well half-width, or ring circumference for ring demos
  std::optional<double> mass;
  std::optional<double> hbar;
  std::optional<long> mode_n;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> members;
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<std::string> format;  // "csv" | "json"
  std::optional<std::string> out_path;
};

/// Fully resolved configuration (defaults applied).
struct DemoConfig {
  DemoId id;
  std::size_t grid_n;
  double a;
  double mass;
  double hbar;
  long mode_n;
  std::uint64_t seed;
  std::size_t members;
  double dt;       // 0 => t_final / 1000
  double t_final;
  std::string format = "json";
  std::string out_path;  // empty => stdout
};

DemoConfig resolve_config(DemoId id, const DemoOptions& options);

struct DemoReport {
  std::string demo_id;
  std::string claim;
  Json parameters;                   // object echoing the resolved config
  std::vector<std::string> columns;  // CSV column order
  std::vector<Json> rows;            // objects keyed by (a subset of) columns
  std::vector<std::string> notes;
  bool pass = false;
};

DemoReport run_demo(const DemoConfig& config);

std::string to_json_string(const DemoReport& report);
std::string to_csv_string(const DemoReport& report);

/// Serializes per config.format and writes to config.out_path or stdout.
void emit_report(const DemoReport& report, const DemoConfig& config);

}  // namespace rho::demos
