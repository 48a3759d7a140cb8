#pragma once

#include <cstdint>
#include <string>

#include "rho/density.hpp"
#include "rho/measurement.hpp"

namespace rho {

/// Labeled member populations. A homogeneous ensemble is a single population
/// whose members all carry the same density operator; a heterogeneous one
/// mixes distinctly prepared subpopulations.
struct EnsembleSpec {
  struct Population {
    std::string label;
    std::size_t count;
    DensityOperator rho;
  };
  std::vector<Population> populations;

  static EnsembleSpec homogeneous(std::size_t count, DensityOperator rho);
  static EnsembleSpec heterogeneous(std::vector<Population> populations);

  bool is_homogeneous() const noexcept { return populations.size() == 1; }
  std::size_t total_members() const noexcept;
  std::size_t dim() const;
};

/// Sampled measurement outcome of one member.
struct OutcomeRecord {
  std::size_t member_index;
  std::string label;
  double eigenvalue;
};

/// How to split records into subensembles for the homogeneity test.
struct Partition {
  enum class Kind { by_label, random_halves };
  Kind kind;
  std::uint64_t seed = 0;

  static Partition by_label() { return {Kind::by_label, 0}; }
  static Partition random_halves(std::uint64_t seed) { return {Kind::random_halves, seed}; }
};

struct HomogeneityVerdict {
  std::string partition;
  double statistic;
  std::size_t dof;
  double p_value;
  double alpha;
  bool homogeneous;  // = homogeneous_at(alpha)

  bool homogeneous_at(double a) const noexcept { return p_value >= a; }
};

/// Homogeneous -> its rho; heterogeneous -> sum (count_i / N) rho_i.
DensityOperator effective_density(const EnsembleSpec& spec);

/// One record per member, drawn from the outcome distribution of the
/// member's density operator under A. Each member uses its own
/// counter-based stream keyed by (seed, member index), so results are
/// order-independent and reproducible.
std::vector<OutcomeRecord> sample_measurements(const EnsembleSpec& spec, const HermitianOperator& a,
                                               std::uint64_t seed);

/// Pearson chi-square test of the outcome-frequency contingency across
/// subensembles. Adjacent outcome bins with expected counts below 5 are
/// merged first. homogeneous_at(alpha) = (p_value >= alpha).
HomogeneityVerdict subdivision_test(std::span<const OutcomeRecord> records, const Partition& part,
                                    double alpha = 0.01);

}  // namespace rho
