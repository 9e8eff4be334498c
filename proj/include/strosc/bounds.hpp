#pragma once

#include <cmath>
#include <numbers>

#include "strosc/model.hpp"

namespace strosc {

/// A-priori sandwich for the exact period P, plus the envelope for the
/// relative error R = (P - Pbar)/P of the constant-tension approximation:
/// envelope_low <= R <= envelope_high = 0 for every amplitude.
struct PeriodBounds {
  double lower = 0.0;
  double upper = 0.0;          ///< the constant-tension period Pbar
  double envelope_low = 0.0;   ///< dimensionless, <= 0
  double envelope_high = 0.0;  ///< always 0
};

namespace detail {

/// epsilon = y0^2 / (2 L (L - L0)), the dimensionless amplitude measure in
/// the lower bound. Written with the pre-stretch L - L0 taken directly from
/// the inputs so that near-degenerate configurations do not cancel.
inline double bound_epsilon(const StringParams& p, Amplitude y0) {
  const double l = p.stretched_half_length;
  return y0.value() * y0.value() / (2.0 * l * (l - p.rest_half_length));
}

}  // namespace detail

/// Period of the linearized motion obtained by holding the tension at its
/// equilibrium value: Pbar = 2 pi / sqrt(2 T / (m L)). Independent of the
/// amplitude, and an upper bound for the true period.
inline double rayleigh_period(const StringParams& p) {
  require_valid(p);
  return 2.0 * std::numbers::pi *
         std::sqrt(p.mass * p.stretched_half_length * p.rest_half_length /
                   (2.0 * p.spring_constant *
                    (p.stretched_half_length - p.rest_half_length)));
}

/// Closed-form lower bound Pbar / sqrt(1 + y0^2 / (2 L (L - L0))). Tends to
/// Pbar as y0 tends to 0 and obeys the same unit-scaling laws as the true
/// period.
inline double lower_bound(const StringParams& p, Amplitude y0) {
  return rayleigh_period(p) / std::sqrt(1.0 + detail::bound_epsilon(p, y0));
}

/// Lower envelope for R = (P - Pbar)/P: -y0^2 / (4 L (L - L0)), i.e.
/// -epsilon/2, from 1 - sqrt(1 + epsilon) >= -epsilon/2. Dimensionless and
/// quadratic in the amplitude.
inline double relative_error_envelope(const StringParams& p, Amplitude y0) {
  require_valid(p);
  return -0.5 * detail::bound_epsilon(p, y0);
}

inline PeriodBounds period_bounds(const StringParams& p, Amplitude y0) {
  PeriodBounds b;
  b.upper = rayleigh_period(p);
  b.lower = b.upper / std::sqrt(1.0 + detail::bound_epsilon(p, y0));
  b.envelope_low = relative_error_envelope(p, y0);
  b.envelope_high = 0.0;
  return b;
}

namespace literal {

/// Lower bound in its historically printed form,
/// Pbar / sqrt(1 + sigma m y0^2 / (2 T L0)). Dimensionally inconsistent
/// (the amplitude factor carries units of mass * length); retained only so
/// the --paper-literal diagnostic can demonstrate that it breaks the
/// unit-scaling laws and the sandwich.
inline double lower_bound(const StringParams& p, Amplitude y0) {
  const double t = equilibrium_tension(p);
  const double eps = p.spring_constant * p.mass * y0.value() * y0.value() /
                     (2.0 * t * p.rest_half_length);
  return rayleigh_period(p) / std::sqrt(1.0 + eps);
}

/// Error envelope in its historically printed form, -m y0^2 / (4 (L - L0)).
/// Dimensionally inconsistent; diagnostic use only.
inline double relative_error_envelope(const StringParams& p, Amplitude y0) {
  require_valid(p);
  return -p.mass * y0.value() * y0.value() /
         (4.0 * (p.stretched_half_length - p.rest_half_length));
}

}  // namespace literal

}  // namespace strosc
