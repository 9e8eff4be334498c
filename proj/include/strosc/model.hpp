#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "strosc/errors.hpp"

namespace strosc {

/// Physical configuration: a point mass fastened to the midpoint of an
/// elastic wire of natural length 2*rest_half_length, pre-stretched to
/// length 2*stretched_half_length and clamped at both ends. The mass moves
/// on the line perpendicular to the wire through its midpoint; the only
/// forces are the Hooke tensions of the two half-wires (no gravity, no
/// damping).
struct StringParams {
  double spring_constant = 1.0;  ///< tension per unit relative stretch
  double mass = 1.0;
  double rest_half_length = 1.0;
  double stretched_half_length = 2.0;
};

enum class ParamFault {
  NonFiniteParameter,
  NonPositiveSpringConstant,
  NonPositiveMass,
  NonPositiveRestLength,
  NotPreStretched,
};

constexpr const char* to_string(ParamFault f) {
  switch (f) {
    case ParamFault::NonFiniteParameter: return "NonFiniteParameter";
    case ParamFault::NonPositiveSpringConstant: return "NonPositiveSpringConstant";
    case ParamFault::NonPositiveMass: return "NonPositiveMass";
    case ParamFault::NonPositiveRestLength: return "NonPositiveRestLength";
    case ParamFault::NotPreStretched: return "NotPreStretched";
  }
  return "UnknownFault";
}

/// First violated invariant, or nullopt when the configuration is usable.
/// Pre-stretch (L > L0) guarantees a strictly positive equilibrium tension.
inline std::optional<ParamFault> validate(const StringParams& p) noexcept {
  if (!std::isfinite(p.spring_constant) || !std::isfinite(p.mass) ||
      !std::isfinite(p.rest_half_length) || !std::isfinite(p.stretched_half_length))
    return ParamFault::NonFiniteParameter;
  if (!(p.spring_constant > 0.0)) return ParamFault::NonPositiveSpringConstant;
  if (!(p.mass > 0.0)) return ParamFault::NonPositiveMass;
  if (!(p.rest_half_length > 0.0)) return ParamFault::NonPositiveRestLength;
  if (!(p.stretched_half_length > p.rest_half_length)) return ParamFault::NotPreStretched;
  return std::nullopt;
}

inline void require_valid(const StringParams& p) {
  if (auto fault = validate(p))
    throw ValidationError(std::string("invalid string parameters: ") + to_string(*fault));
}

/// Instantaneous state of the mass: signed vertical displacement from the
/// neutral line, signed velocity, and time.
struct OscState {
  double displacement = 0.0;
  double velocity = 0.0;
  double time = 0.0;
};

/// Release amplitude. Strictly positive: the mass is released from rest
/// above the neutral line; the degenerate equilibrium case is rejected so
/// every period computation shares one precondition.
class Amplitude {
 public:
  explicit Amplitude(double y0) : y0_(y0) {
    if (!(std::isfinite(y0) && y0 > 0.0))
      throw ValidationError("invalid amplitude: NonPositiveAmplitude (require y0 > 0)");
  }
  double value() const noexcept { return y0_; }

 private:
  double y0_;
};

/// Instantaneous half-length of the wire, sqrt(L^2 + y^2).
inline double half_length_at(const StringParams& p, double displacement) {
  const double l = p.stretched_half_length;
  return std::sqrt(l * l + displacement * displacement);
}

namespace detail {

/// sqrt(L^2 + y^2) - L0 without cancellation when L is close to L0.
inline double elongation(const StringParams& p, double displacement) {
  const double l = p.stretched_half_length;
  return (l - p.rest_half_length) +
         displacement * displacement / (half_length_at(p, displacement) + l);
}

/// 1/L0 - 2/(sqrt(L^2+y^2) + sqrt(L^2+y0^2)), the gap under the period
/// radical, as a ratio of positive terms. Strictly positive whenever the
/// wire is pre-stretched.
inline double tension_gap(const StringParams& p, double y, double y0) {
  const double l = p.stretched_half_length;
  const double l0 = p.rest_half_length;
  const double sy = half_length_at(p, y);
  const double sy0 = half_length_at(p, y0);
  const double excess = 2.0 * (l - l0) + y * y / (sy + l) + y0 * y0 / (sy0 + l);
  return excess / (l0 * (sy + sy0));
}

}  // namespace detail

/// Magnitude of the Hooke tension exerted by each half of the wire at
/// displacement y. Even in y, strictly increasing in |y|, and strictly
/// positive for a valid (pre-stretched) configuration.
inline double tension(const StringParams& p, double displacement) {
  return p.spring_constant * detail::elongation(p, displacement) / p.rest_half_length;
}

/// Tension at the neutral position, sigma * (L - L0) / L0.
inline double equilibrium_tension(const StringParams& p) {
  return p.spring_constant * (p.stretched_half_length - p.rest_half_length) /
         p.rest_half_length;
}

/// Acceleration of the mass at displacement y: the vertical component of
/// both half-wire tensions divided by the mass. Odd in y and of opposite
/// sign (restoring).
inline double acceleration(const StringParams& p, double displacement) {
  const double s = half_length_at(p, displacement);
  return -(2.0 * p.spring_constant / p.mass) * displacement *
         detail::elongation(p, displacement) / (p.rest_half_length * s);
}

/// Potential energy per unit mass, (2 sigma/m) * (y^2/(2 L0) - sqrt(L^2+y^2)).
inline double potential(const StringParams& p, double displacement) {
  const double l0 = p.rest_half_length;
  return (2.0 * p.spring_constant / p.mass) *
         (displacement * displacement / (2.0 * l0) - half_length_at(p, displacement));
}

/// Conserved specific energy v^2/2 + potential(y). Constant along exact
/// trajectories of the equation of motion.
inline double energy(const StringParams& p, const OscState& state) {
  return 0.5 * state.velocity * state.velocity + potential(p, state.displacement);
}

/// Speed at displacement y of the motion released from rest at amplitude
/// y0. The radicand is a product of nonnegative factors, so no cancellation
/// occurs even at the turning points. Requires |y| <= y0.
inline double speed_at(const StringParams& p, Amplitude y0, double displacement) {
  const double a = y0.value();
  if (!(std::abs(displacement) <= a))
    throw DomainError("speed_at: |y| exceeds the release amplitude");
  const double radicand = (2.0 * p.spring_constant / p.mass) *
                          (a * a - displacement * displacement) *
                          detail::tension_gap(p, displacement, a);
  return std::sqrt(radicand);
}

}  // namespace strosc
