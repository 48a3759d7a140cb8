#include "rho/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "rho/errors.hpp"
#include "rho/rng.hpp"
#include "rho/stats.hpp"

namespace rho {

EnsembleSpec EnsembleSpec::homogeneous(std::size_t count, DensityOperator rho) {
  require(count >= 1, errc::invalid_argument, "ensemble needs at least one member");
  EnsembleSpec s;
  s.populations.push_back({"all", count, std::move(rho)});
  return s;
}

EnsembleSpec EnsembleSpec::heterogeneous(std::vector<Population> populations) {
  require(!populations.empty(), errc::invalid_argument, "ensemble needs populations");
  const std::size_t d = populations.front().rho.dim();
  for (const auto& p : populations) {
    require(p.count >= 1, errc::invalid_argument, "population counts must be >= 1");
    require(p.rho.dim() == d, errc::dimension_mismatch, "population dimensions differ");
  }
  EnsembleSpec s;
  s.populations = std::move(populations);
  return s;
}

std::size_t EnsembleSpec::total_members() const noexcept {
  std::size_t n = 0;
  for (const auto& p : populations) n += p.count;
  return n;
}

std::size_t EnsembleSpec::dim() const {
  require(!populations.empty(), errc::invalid_argument, "empty ensemble");
  return populations.front().rho.dim();
}

DensityOperator effective_density(const EnsembleSpec& spec) {
  require(!spec.populations.empty(), errc::invalid_argument, "empty ensemble");
  if (spec.is_homogeneous()) return spec.populations.front().rho;
  const double total = static_cast<double>(spec.total_members());
  MixtureSpec mix;
  for (const auto& p : spec.populations)
    mix.components.push_back({static_cast<double>(p.count) / total, p.rho});
  return mixture(mix);
}

std::vector<OutcomeRecord> sample_measurements(const EnsembleSpec& spec, const HermitianOperator& a,
                                               std::uint64_t seed) {
  require(spec.dim() == a.dim(), errc::dimension_mismatch, "sample_measurements");
  const SpectralDecomposition d = spectral_decompose(a);

  std::vector<OutcomeRecord> records;
  records.reserve(spec.total_members());
  std::size_t member = 0;
  for (const auto& pop : spec.populations) {
    const OutcomeDistribution dist = outcome_distribution(pop.rho, d);
    // cumulative table for inverse-CDF draws
    std::vector<double> cdf(dist.entries.size());
    long double acc = 0;
    for (std::size_t i = 0; i < dist.entries.size(); ++i) {
      acc += dist.entries[i].probability;
      cdf[i] = static_cast<double>(acc);
    }
    cdf.back() = 1.0;
    for (std::size_t i = 0; i < pop.count; ++i, ++member) {
      const double u = rng::Stream::keyed(seed, rng::kDomainMeasurement, member).next_double();
      const std::size_t pick =
          std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
      const std::size_t idx = std::min(pick, dist.entries.size() - 1);
      records.push_back({member, pop.label, dist.entries[idx].eigenvalue});
    }
  }
  return records;
}

HomogeneityVerdict subdivision_test(std::span<const OutcomeRecord> records, const Partition& part,
                                    double alpha) {
  require(!records.empty(), errc::insufficient_data, "no outcome records");
  require(alpha > 0.0 && alpha < 1.0, errc::invalid_argument, "alpha must lie in (0, 1)");

  // subensemble assignment
  std::map<std::string, std::size_t> group_of;
  std::vector<std::size_t> assignment(records.size());
  std::string description;
  if (part.kind == Partition::Kind::by_label) {
    description = "by_label";
    for (std::size_t i = 0; i < records.size(); ++i) {
      auto [it, inserted] = group_of.try_emplace(records[i].label, group_of.size());
      assignment[i] = it->second;
    }
    require(group_of.size() >= 2, errc::insufficient_data,
            "by_label partition needs at least two labels");
  } else {
    description = "random_halves(seed=" + std::to_string(part.seed) + ")";
    group_of["half0"] = 0;
    group_of["half1"] = 1;
    for (std::size_t i = 0; i < records.size(); ++i) {
      const double u =
          rng::Stream::keyed(part.seed, rng::kDomainPartition, records[i].member_index).next_double();
      assignment[i] = u < 0.5 ? 0 : 1;
    }
  }
  const std::size_t n_groups = group_of.size();

  // outcome bins: distinct eigenvalues, ascending
  std::vector<double> values;
  for (const auto& r : records) values.push_back(r.eigenvalue);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  if (values.size() < 2) {
    // a single outcome value: all subensembles trivially identical
    return {description, 0.0, 0, 1.0, alpha, true};
  }

  std::vector<std::vector<double>> table(n_groups, std::vector<double>(values.size(), 0.0));
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::size_t col =
        std::lower_bound(values.begin(), values.end(), records[i].eigenvalue) - values.begin();
    table[assignment[i]][col] += 1.0;
  }

  // merge adjacent outcome bins until every expected count reaches 5
  const double total = static_cast<double>(records.size());
  std::vector<double> row_tot(n_groups, 0.0);
  for (std::size_t g = 0; g < n_groups; ++g)
    for (double v : table[g]) row_tot[g] += v;

  auto min_expected_col = [&](std::size_t col) {
    double col_tot = 0;
    for (std::size_t g = 0; g < n_groups; ++g) col_tot += table[g][col];
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < n_groups; ++g) m = std::min(m, row_tot[g] * col_tot / total);
    return m;
  };

  while (table.front().size() > 2) {
    std::size_t worst = 0;
    double worst_min = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < table.front().size(); ++c) {
      const double m = min_expected_col(c);
      if (m < worst_min) {
        worst_min = m;
        worst = c;
      }
    }
    if (worst_min >= 5.0) break;
    const std::size_t into = (worst == 0) ? 1 : worst - 1;
    for (std::size_t g = 0; g < n_groups; ++g) {
      table[g][into] += table[g][worst];
      table[g].erase(table[g].begin() + static_cast<std::ptrdiff_t>(worst));
    }
  }
  if (table.front().size() == 2) {
    const double m = std::min(min_expected_col(0), min_expected_col(1));
    require(m >= 5.0, errc::insufficient_data,
            "expected counts below 5 even after merging outcome bins");
  }

  const auto res = stats::chi_square_contingency(table);
  return {description, res.statistic, res.dof, res.p_value, alpha, res.p_value >= alpha};
}

}  // namespace rho
