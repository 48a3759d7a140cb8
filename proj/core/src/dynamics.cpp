#include "rho/dynamics.hpp"

#include <cmath>

#include "rho/errors.hpp"
#include "rho/measurement.hpp"

namespace rho {

namespace {

// U rho U^dagger, carrying the rank factorization through the rotation.
DensityOperator conjugate_state(const DensityOperator& rho, const UnitaryMatrix& u) {
  ComplexMatrix m = u.conjugate(rho.matrix());
  m.symmetrize();
  std::optional<std::vector<WeightedVector>> comp;
  if (const auto* c = rho.components()) {
    comp.emplace();
    comp->reserve(c->size());
    for (const auto& wv : *c) comp->push_back({wv.weight, u.apply(wv.vec)});
  }
  return DensityOperator::from_matrix_unchecked(std::move(m), std::move(comp));
}

}  // namespace

Schedule Schedule::constant(HermitianOperator h) {
  Schedule s;
  s.kind_ = Kind::constant;
  s.dim_ = h.dim();
  s.segments_.push_back({0.0, std::move(h)});
  return s;
}

Schedule Schedule::piecewise(std::vector<std::pair<double, HermitianOperator>> segments) {
  require(!segments.empty(), errc::invalid_argument, "piecewise schedule needs segments");
  Schedule s;
  s.kind_ = Kind::piecewise;
  s.dim_ = segments.front().second.dim();
  for (std::size_t i = 0; i < segments.size(); ++i) {
    require(segments[i].second.dim() == s.dim_, errc::dimension_mismatch,
            "piecewise schedule dimensions differ");
    if (i > 0)
      require(segments[i].first > segments[i - 1].first, errc::invalid_argument,
              "piecewise start times must be strictly increasing");
  }
  s.segments_ = std::move(segments);
  return s;
}

Schedule Schedule::sampled(std::size_t dim, std::function<HermitianOperator(double)> h_of_t) {
  require(dim > 0, errc::invalid_argument, "sampled schedule needs a dimension");
  require(static_cast<bool>(h_of_t), errc::invalid_argument, "sampled schedule needs a callback");
  Schedule s;
  s.kind_ = Kind::sampled;
  s.dim_ = dim;
  s.callback_ = std::move(h_of_t);
  return s;
}

HermitianOperator Schedule::at(double t) const {
  switch (kind_) {
    case Kind::constant:
      return segments_.front().second;
    case Kind::piecewise: {
      require(t >= segments_.front().first, errc::invalid_argument,
              "time precedes the first schedule segment");
      std::size_t i = 0;
      while (i + 1 < segments_.size() && segments_[i + 1].first <= t) ++i;
      return segments_[i].second;
    }
    case Kind::sampled: {
      HermitianOperator h = callback_(t);
      require(h.dim() == dim_, errc::dimension_mismatch, "sampled H dimension changed");
      return h;
    }
  }
  fail(errc::invalid_argument, "unreachable schedule kind");
}

DensityOperator evolve_const(const DensityOperator& rho0, const HermitianOperator& h, double t,
                             double hbar) {
  require(rho0.dim() == h.dim(), errc::dimension_mismatch, "evolve_const");
  if (t == 0.0) return rho0;
  return conjugate_state(rho0, unitary_exp(h, t, hbar));
}

DensityOperator evolve_timedep(const DensityOperator& rho0, const Schedule& sched, double t_final,
                               double dt, double hbar) {
  require(rho0.dim() == sched.dim(), errc::dimension_mismatch, "evolve_timedep");
  require(dt > 0.0, errc::invalid_step, "dt must be positive");
  require(dt <= t_final, errc::invalid_step, "dt must not exceed t_final");

  // constant H needs a single decomposition no matter the step count
  if (sched.kind() == Schedule::Kind::constant)
    return evolve_const(rho0, sched.at(0.0), t_final, hbar);

  ComplexMatrix u = ComplexMatrix::identity(sched.dim());
  double t = 0.0;
  while (t < t_final) {
    const double h = std::min(dt, t_final - t);
    if (h <= 0.0) break;
    const UnitaryMatrix step = unitary_exp(sched.at(t + 0.5 * h), h, hbar);
    u = step.matrix() * u;
    t += h;
  }
  return conjugate_state(rho0, UnitaryMatrix::from_matrix(std::move(u), 1e-8));
}

TrajectoryRecord trajectory(const DensityOperator& rho0, const Schedule& sched,
                            std::span<const double> times,
                            const std::vector<HermitianOperator>& observables, double hbar,
                            double dt_hint) {
  require(rho0.dim() == sched.dim(), errc::dimension_mismatch, "trajectory");
  require(!times.empty(), errc::invalid_argument, "trajectory needs at least one time");
  require(times.front() >= 0.0, errc::invalid_argument, "times must start at >= 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    require(times[i] > times[i - 1], errc::invalid_argument, "times must be ascending");
  for (const auto& obs : observables) {
    require(obs.dim() == rho0.dim(), errc::dimension_mismatch, "trajectory observable");
    require(!obs.label().empty(), errc::invalid_argument, "trajectory observables need labels");
  }

  if (sched.kind() == Schedule::Kind::piecewise)
    require(sched.segments().front().first <= 0.0, errc::invalid_argument,
            "piecewise schedule must cover t = 0");

  TrajectoryRecord rec;
  rec.times.assign(times.begin(), times.end());
  for (const auto& obs : observables) rec.expectations[obs.label()] = {};
  require(rec.expectations.size() == observables.size(), errc::invalid_argument,
          "trajectory observable labels must be unique");

  // exact segment products for constant/piecewise; midpoint steps otherwise
  std::optional<SpectralDecomposition> const_decomp;
  if (sched.kind() == Schedule::Kind::constant)
    const_decomp.emplace(spectral_decompose(sched.at(0.0)));

  auto advance = [&](const DensityOperator& state, double t0, double t1) -> DensityOperator {
    if (t1 == t0) return state;
    switch (sched.kind()) {
      case Schedule::Kind::constant:
        return conjugate_state(state, unitary_exp(*const_decomp, t1 - t0, hbar));
      case Schedule::Kind::piecewise: {
        DensityOperator s = state;
        double t = t0;
        const auto& segs = sched.segments();
        while (t < t1) {
          std::size_t i = 0;
          while (i + 1 < segs.size() && segs[i + 1].first <= t) ++i;
          const double seg_end = (i + 1 < segs.size()) ? segs[i + 1].first : t1;
          const double stop = std::min(t1, seg_end);
          if (stop > t) s = evolve_const(s, segs[i].second, stop - t, hbar);
          t = stop;
        }
        return s;
      }
      case Schedule::Kind::sampled: {
        const double span = t1 - t0;
        const double dt = dt_hint > 0.0 ? dt_hint : span / 1000.0;
        ComplexMatrix u = ComplexMatrix::identity(sched.dim());
        double t = t0;
        while (t < t1) {
          const double h = std::min(dt, t1 - t);
          if (h <= 0.0) break;
          u = unitary_exp(sched.at(t + 0.5 * h), h, hbar).matrix() * u;
          t += h;
        }
        return conjugate_state(state, UnitaryMatrix::from_matrix(std::move(u), 1e-8));
      }
    }
    fail(errc::invalid_argument, "unreachable schedule kind");
  };

  DensityOperator state = advance(rho0, 0.0, times.front());
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (k > 0) state = advance(state, times[k - 1], times[k]);
    rec.states.push_back(state);
    rec.purity.push_back(state.purity());
    rec.trace_error.push_back(std::abs(state.matrix().trace() - cdouble(1.0)));
    for (const auto& obs : observables)
      rec.expectations[obs.label()].push_back(expectation(state, obs));
  }
  return rec;
}

}  // namespace rho
