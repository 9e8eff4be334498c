#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "strosc/bounds.hpp"
#include "strosc/errors.hpp"
#include "strosc/model.hpp"
#include "strosc/numerics.hpp"
#include "strosc/periods.hpp"

namespace strosc {

struct OdeConfig {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  double initial_step = 0.0;  ///< <= 0: derived from the release acceleration
  long max_steps = 1000000;
};

class StepLimitExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepUnderflow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EventNotFound : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct Trajectory {
  std::vector<OscState> samples;  ///< strictly increasing in time; front() is the initial condition
  long accepted_steps = 0;
  long rejected_steps = 0;
  double max_energy_drift = 0.0;  ///< max over samples of |E - E0| / |E0|
};

namespace detail {

inline void require_valid(const OdeConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol >= 0.0) || !std::isfinite(cfg.initial_step) ||
      cfg.max_steps < 1)
    throw std::invalid_argument("OdeConfig: need rel_tol > 0, abs_tol >= 0, max_steps >= 1");
}

}  // namespace detail

/// Dormand-Prince 5(4) stepper for the equation of motion, with the
/// standard quartic dense-output interpolant over each trial step. attempt()
/// is pure: it never mutates the stepper, so trial steps can be replayed or
/// used at fixed step size. Local error is measured against
/// abs_tol + rel_tol * |state| per component; a step is acceptable when the
/// returned error norm is <= 1.
class Dopri5 {
 public:
  Dopri5(const StringParams& p, const OdeConfig& cfg) : p_(p), cfg_(cfg) {
    strosc::require_valid(p);
    detail::require_valid(cfg);
  }

  /// Continuous extension of one accepted step, exact at both step ends.
  struct Dense {
    double t0 = 0.0;
    double h = 0.0;
    std::array<double, 5> y_coeff{};
    std::array<double, 5> v_coeff{};

    double displacement(double t) const { return eval(y_coeff, (t - t0) / h); }
    double velocity(double t) const { return eval(v_coeff, (t - t0) / h); }

   private:
    static double eval(const std::array<double, 5>& r, double theta) {
      const double back = 1.0 - theta;
      return r[0] + theta * (r[1] + back * (r[2] + theta * (r[3] + back * r[4])));
    }
  };

  struct Attempt {
    OscState state;  ///< end state of the trial step (fifth-order solution)
    Dense dense;
    double error = 0.0;  ///< scaled norm; accept when <= 1
  };

  static constexpr int kEvaluationsPerAttempt = 7;

  Attempt attempt(const OscState& from, double h) const {
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                     a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                     a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                     b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    // fifth-order weights minus the embedded fourth-order weights
    constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                     e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    // dense-output weights
    constexpr double d1 = -12715105075.0 / 11282082432.0;
    constexpr double d3 = 87487479700.0 / 32700410799.0;
    constexpr double d4 = -10690763975.0 / 1880347072.0;
    constexpr double d5 = 701980252875.0 / 199316789632.0;
    constexpr double d6 = -1453857185.0 / 822651844.0;
    constexpr double d7 = 69997945.0 / 29380423.0;

    const double y = from.displacement;
    const double v = from.velocity;

    const double k1y = v, k1v = acceleration(p_, y);
    double ty = y + h * (a21 * k1y);
    double tv = v + h * (a21 * k1v);
    const double k2y = tv, k2v = acceleration(p_, ty);
    ty = y + h * (a31 * k1y + a32 * k2y);
    tv = v + h * (a31 * k1v + a32 * k2v);
    const double k3y = tv, k3v = acceleration(p_, ty);
    ty = y + h * (a41 * k1y + a42 * k2y + a43 * k3y);
    tv = v + h * (a41 * k1v + a42 * k2v + a43 * k3v);
    const double k4y = tv, k4v = acceleration(p_, ty);
    ty = y + h * (a51 * k1y + a52 * k2y + a53 * k3y + a54 * k4y);
    tv = v + h * (a51 * k1v + a52 * k2v + a53 * k3v + a54 * k4v);
    const double k5y = tv, k5v = acceleration(p_, ty);
    ty = y + h * (a61 * k1y + a62 * k2y + a63 * k3y + a64 * k4y + a65 * k5y);
    tv = v + h * (a61 * k1v + a62 * k2v + a63 * k3v + a64 * k4v + a65 * k5v);
    const double k6y = tv, k6v = acceleration(p_, ty);

    const double y5 = y + h * (b1 * k1y + b3 * k3y + b4 * k4y + b5 * k5y + b6 * k6y);
    const double v5 = v + h * (b1 * k1v + b3 * k3v + b4 * k4v + b5 * k5v + b6 * k6v);
    const double k7y = v5, k7v = acceleration(p_, y5);

    const double err_y = h * (e1 * k1y + e3 * k3y + e4 * k4y + e5 * k5y + e6 * k6y + e7 * k7y);
    const double err_v = h * (e1 * k1v + e3 * k3v + e4 * k4v + e5 * k5v + e6 * k6v + e7 * k7v);
    const double scale_y = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y), std::abs(y5));
    const double scale_v = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(v), std::abs(v5));
    const double ry = (err_y == 0.0) ? 0.0 : err_y / scale_y;
    const double rv = (err_v == 0.0) ? 0.0 : err_v / scale_v;

    Attempt out;
    out.state = {y5, v5, from.time + h};
    out.error = std::sqrt(0.5 * (ry * ry + rv * rv));

    const double dy = y5 - y;
    const double dv = v5 - v;
    out.dense.t0 = from.time;
    out.dense.h = h;
    out.dense.y_coeff = {y, dy, h * k1y - dy, dy - h * k7y - (h * k1y - dy),
                         h * (d1 * k1y + d3 * k3y + d4 * k4y + d5 * k5y + d6 * k6y + d7 * k7y)};
    out.dense.v_coeff = {v, dv, h * k1v - dv, dv - h * k7v - (h * k1v - dv),
                         h * (d1 * k1v + d3 * k3v + d4 * k4v + d5 * k5v + d6 * k6v + d7 * k7v)};
    return out;
  }

  /// Step-size proposal after a trial with the given error norm.
  double next_step(double h, double error, bool after_rejection) const {
    const double grow_cap = after_rejection ? 1.0 : 10.0;
    const double factor = (error == 0.0)
                              ? grow_cap
                              : std::clamp(0.9 * std::pow(error, -0.2), 0.2, grow_cap);
    return h * factor;
  }

  /// Initial step from the time scale of the release acceleration,
  /// sqrt(y / |a(y)|); falls back to the linearized period scale at the
  /// neutral point.
  double initial_step(const OscState& from) const {
    if (cfg_.initial_step > 0.0) return cfg_.initial_step;
    const double y = from.displacement;
    const double a = acceleration(p_, y);
    if (y != 0.0 && a != 0.0) return 0.02 * std::sqrt(std::abs(y) / std::abs(a));
    return 0.02 * std::sqrt(p_.mass * p_.stretched_half_length /
                            (2.0 * equilibrium_tension(p_)));
  }

  const StringParams& params() const noexcept { return p_; }
  const OdeConfig& config() const noexcept { return cfg_; }

 private:
  StringParams p_;
  OdeConfig cfg_;
};

/// Integrates the motion released from rest at amplitude y0 up to t_end,
/// recording every accepted step. Throws StepLimitExceeded when the step
/// budget runs out and StepUnderflow when the step collapses below the
/// resolution of the current time.
inline Trajectory integrate(const StringParams& p, Amplitude y0, double t_end,
                            const OdeConfig& cfg = {}) {
  if (!(std::isfinite(t_end) && t_end > 0.0))
    throw DomainError("integrate: t_end must be positive and finite");
  Dopri5 stepper(p, cfg);

  Trajectory traj;
  OscState s{y0.value(), 0.0, 0.0};
  traj.samples.push_back(s);
  const double e0 = energy(p, s);

  double h = std::min(stepper.initial_step(s), t_end);
  bool rejected_last = false;
  while (s.time < t_end) {
    if (traj.accepted_steps + traj.rejected_steps >= cfg.max_steps)
      throw StepLimitExceeded("integrate: max_steps exhausted before t_end");
    if (!(h > 0.0) || s.time + h == s.time)
      throw StepUnderflow("integrate: step size collapsed");

    double step = h;
    bool clipped = false;
    if (s.time + step >= t_end) {
      step = t_end - s.time;
      clipped = true;
    }
    const auto trial = stepper.attempt(s, step);
    if (trial.error <= 1.0) {
      s = trial.state;
      if (clipped) s.time = t_end;
      traj.samples.push_back(s);
      ++traj.accepted_steps;
      const double e = energy(p, s);
      const double deviation = std::abs(e - e0);
      if (deviation > 0.0 && e0 != 0.0)
        traj.max_energy_drift = std::max(traj.max_energy_drift, deviation / std::abs(e0));
      if (!clipped) h = stepper.next_step(step, trial.error, rejected_last);
      rejected_last = false;
    } else {
      ++traj.rejected_steps;
      h = stepper.next_step(step, trial.error, true);
      rejected_last = true;
    }
  }
  return traj;
}

/// Measures the period as four times the first downward zero crossing of
/// the displacement, located inside the crossing step with the dense
/// interpolant and refine_root at 1e-13 of the linearized period scale.
/// The quoted error estimate is a conservative tolerance-proportional
/// figure, 40 * rel_tol * t_cross.
inline PeriodResult period_ode(const StringParams& p, Amplitude y0, const OdeConfig& cfg = {}) {
  Dopri5 stepper(p, cfg);
  const double period_scale = rayleigh_period(p);

  OscState s{y0.value(), 0.0, 0.0};
  double h = stepper.initial_step(s);
  long evaluations = 0;
  long steps = 0;
  bool rejected_last = false;
  while (steps < cfg.max_steps) {
    ++steps;
    if (!(h > 0.0) || s.time + h == s.time)
      throw StepUnderflow("period_ode: step size collapsed");
    const auto trial = stepper.attempt(s, h);
    evaluations += Dopri5::kEvaluationsPerAttempt;
    if (trial.error <= 1.0) {
      if (trial.state.displacement <= 0.0) {
        const Dopri5::Dense& dense = trial.dense;
        const double t_cross =
            (trial.state.displacement == 0.0)
                ? trial.state.time
                : refine_root([&dense](double t) { return dense.displacement(t); }, s.time,
                              trial.state.time, 1e-13 * period_scale);
        return {4.0 * t_cross, PeriodMethod::OdeSimulation, 40.0 * cfg.rel_tol * t_cross,
                evaluations};
      }
      h = stepper.next_step(h, trial.error, rejected_last);
      s = trial.state;
      rejected_last = false;
    } else {
      h = stepper.next_step(h, trial.error, true);
      rejected_last = true;
    }
  }
  throw EventNotFound("period_ode: no downward zero crossing within max_steps");
}

/// Largest relative deviation of the conserved energy from its initial
/// value over the recorded samples.
inline double energy_drift(const StringParams& p, const Trajectory& traj) {
  if (traj.samples.empty()) throw DomainError("energy_drift: empty trajectory");
  const double e0 = energy(p, traj.samples.front());
  double worst = 0.0;
  for (const OscState& s : traj.samples)
    worst = std::max(worst, std::abs(energy(p, s) - e0));
  if (worst == 0.0) return 0.0;
  return worst / std::abs(e0);
}

}  // namespace strosc
