#pragma once

#include <functional>
#include <map>

#include "rho/density.hpp"
#include "rho/spectral.hpp"

namespace rho {

/// Hamiltonian schedule: constant, piecewise-constant over [t_start_i, ...),
/// or sampled through a callback H(t).
class Schedule {
 public:
  enum class Kind { constant, piecewise, sampled };

  static Schedule constant(HermitianOperator h);
  /// Segments (t_start, H) with strictly increasing t_start; segment i is
  /// active on [t_start_i, t_start_{i+1}).
  static Schedule piecewise(std::vector<std::pair<double, HermitianOperator>> segments);
  static Schedule sampled(std::size_t dim, std::function<HermitianOperator(double)> h_of_t);

  Kind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  HermitianOperator at(double t) const;
  const std::vector<std::pair<double, HermitianOperator>>& segments() const { return segments_; }

 private:
  Schedule() = default;
  Kind kind_ = Kind::constant;
  std::size_t dim_ = 0;
  std::vector<std::pair<double, HermitianOperator>> segments_;
  std::function<HermitianOperator(double)> callback_;
};

/// Expectation-value bookkeeping along an evolution.
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<DensityOperator> states;
  std::map<std::string, std::vector<double>> expectations;
  std::vector<double> purity;
  std::vector<double> trace_error;
};

/// rho(t) = U rho0 U^dagger with U = exp(-i t H / hbar). The eigenvalue
/// multiset of rho is preserved.
DensityOperator evolve_const(const DensityOperator& rho0, const HermitianOperator& h, double t,
                             double hbar = 1.0);

/// Midpoint-exponential stepping U <- exp(-i dt H(t + dt/2) / hbar) U.
/// Unitary at every step (errors appear in accuracy only, never in trace or
/// positivity); second-order accurate in dt.
DensityOperator evolve_timedep(const DensityOperator& rho0, const Schedule& sched, double t_final,
                               double dt, double hbar = 1.0);

/// States and expectation series at the given times (ascending, from >= 0).
/// Constant and piecewise schedules integrate exactly (products of segment
/// exponentials); sampled schedules use midpoint steps of size dt_hint
/// (default: span/1000 per interval).
TrajectoryRecord trajectory(const DensityOperator& rho0, const Schedule& sched,
                            std::span<const double> times,
                            const std::vector<HermitianOperator>& observables, double hbar = 1.0,
                            double dt_hint = 0.0);

}  // namespace rho
