#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "strosc/errors.hpp"
#include "strosc/model.hpp"
#include "strosc/numerics.hpp"

namespace strosc {

enum class PeriodMethod { PhiQuadrature, ZQuadrature, OdeSimulation };

constexpr const char* to_string(PeriodMethod m) {
  switch (m) {
    case PeriodMethod::PhiQuadrature: return "phi";
    case PeriodMethod::ZQuadrature: return "z";
    case PeriodMethod::OdeSimulation: return "ode";
  }
  return "unknown";
}

struct PeriodResult {
  double period = 0.0;
  PeriodMethod method = PeriodMethod::PhiQuadrature;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Degree-4 polynomial under the radical of the z-form period integral,
/// where z = sqrt(L^2 + y^2) ranges over [L, z0]. The roots are analytic:
/// {z0, 2*L0 - z0, L, -L}. Q is strictly positive on (L, z0) and vanishes
/// simply at both endpoints.
struct QuarticForm {
  double lead = 0.0;                  ///< coefficient of z^4
  std::array<double, 5> coeffs{};     ///< descending degree, coeffs[0] == lead
  std::array<double, 4> roots{};      ///< {z0, 2*L0 - z0, L, -L}
  double z0 = 0.0;                    ///< sqrt(L^2 + y0^2), upper endpoint
  double zL = 0.0;                    ///< L, lower endpoint

  /// Horner evaluation from the stored coefficients.
  double value(double z) const {
    double acc = coeffs[0];
    for (int i = 1; i < 5; ++i) acc = acc * z + coeffs[i];
    return acc;
  }

  /// Evaluation as lead * (z - a)(z - b)(z - c)(z - d).
  double value_from_roots(double z) const {
    return lead * (z - roots[0]) * (z - roots[1]) * (z - roots[2]) * (z - roots[3]);
  }
};

/// Builds the quartic for the configuration and amplitude. The coefficients
/// come from expanding (1/L0)(z0 - z)(z + z0 - 2 L0)(z^2 - L^2), which is
/// the polynomial forced by the substitution z^2 = L^2 + y^2 applied to the
/// quarter-period integral; the roots are the analytic factor set, so no
/// numeric root finder is involved.
inline QuarticForm build_quartic(const StringParams& p, Amplitude y0) {
  require_valid(p);
  const double l = p.stretched_half_length;
  const double l0 = p.rest_half_length;
  const double a = y0.value();
  const double z0 = std::sqrt(l * l + a * a);
  const double k = z0 * (z0 - 2.0 * l0);  // z0^2 - 2 L0 z0

  QuarticForm q;
  q.z0 = z0;
  q.zL = l;
  q.lead = -1.0 / l0;
  q.coeffs = {q.lead, 2.0, (k + l * l) / l0, -2.0 * l * l, -k * l * l / l0};
  q.roots = {z0, 2.0 * l0 - z0, l, -l};
  return q;
}

namespace detail {

inline double period_prefactor(const StringParams& p) {
  return 4.0 * std::sqrt(p.mass / (2.0 * p.spring_constant));
}

inline PeriodResult scaled(PeriodResult r, double factor) {
  r.period *= factor;
  r.error_estimate *= factor;
  return r;
}

// Amplitudes beyond this multiple of L are computed once in units of L and
// mapped back through the length-scaling law, which keeps the integrand
// well scaled without changing the result.
inline constexpr double kRescaleAmplitudeRatio = 1e3;

template <class Compute>
PeriodResult with_length_rescale(const StringParams& p, double amplitude, Compute&& compute) {
  const double l = p.stretched_half_length;
  if (amplitude > kRescaleAmplitudeRatio * l) {
    const StringParams unit{p.spring_constant, p.mass, p.rest_half_length / l, 1.0};
    return scaled(compute(unit, amplitude / l), std::sqrt(l));
  }
  return compute(p, amplitude);
}

}  // namespace detail

/// Exact period by quadrature in the displacement variable. The angle
/// substitution y = y0 sin(phi) cancels the turning-point singularity and
/// leaves a smooth integrand on [0, pi/2]:
///
///   P = 4 sqrt(m / 2 sigma) * Int_0^{pi/2} dphi / sqrt(gap(y0 sin phi, y0))
///
/// with gap(y, y0) = 1/L0 - 2/(sqrt(L^2+y^2) + sqrt(L^2+y0^2)) > 0.
inline PeriodResult period_phi(const StringParams& p, Amplitude y0,
                               const QuadConfig& cfg = {1e-11, 0.0, 2000}) {
  require_valid(p);
  return detail::with_length_rescale(
      p, y0.value(), [&cfg](const StringParams& params, double a) {
        auto integrand = [&params, a](double phi) {
          return 1.0 / std::sqrt(detail::tension_gap(params, a * std::sin(phi), a));
        };
        const QuadResult q =
            integrate_adaptive(integrand, 0.0, std::numbers::pi / 2.0, cfg);
        const double pref = detail::period_prefactor(params);
        return PeriodResult{pref * q.value, PeriodMethod::PhiQuadrature,
                            pref * q.error_estimate, q.evaluations};
      });
}

/// Exact period by quadrature in z = sqrt(L^2 + y^2). Both endpoints of
/// [L, z0] are simple roots of the quartic, so the integrand carries an
/// inverse-square-root singularity at each end; the two-sided substitution
/// z = L + (z0 - L) sin^2(theta) absorbs both at once, leaving
///
///   P = 4 sqrt(m / 2 sigma) * Int_0^{pi/2} 2 z dtheta
///         / sqrt((z - b)(z + L) / L0),   b = 2 L0 - z0,
///
/// where (z - b)(z + L)/L0 is the quartic with its two vanishing factors
/// removed, evaluated through the analytic roots.
inline PeriodResult period_z(const StringParams& p, Amplitude y0,
                             const QuadConfig& cfg = {1e-11, 0.0, 2000}) {
  require_valid(p);
  return detail::with_length_rescale(
      p, y0.value(), [&cfg](const StringParams& params, double a) {
        const double l = params.stretched_half_length;
        const double l0 = params.rest_half_length;
        const double z0 = std::sqrt(l * l + a * a);
        const double w = a * a / (z0 + l);  // z0 - L without cancellation
        auto integrand = [l, l0, w](double theta) {
          const double s = std::sin(theta);
          const double u = s * s;
          const double z = l + w * u;
          const double away_from_b = 2.0 * (l - l0) + w * (1.0 + u);  // z + z0 - 2 L0
          const double away_from_neg_l = 2.0 * l + w * u;             // z + L
          return 2.0 * z / std::sqrt(away_from_b * away_from_neg_l / l0);
        };
        const QuadResult q =
            integrate_adaptive(integrand, 0.0, std::numbers::pi / 2.0, cfg);
        const double pref = detail::period_prefactor(params);
        return PeriodResult{pref * q.value, PeriodMethod::ZQuadrature,
                            pref * q.error_estimate, q.evaluations};
      });
}

namespace literal {

/// Quartic coefficients as historically printed (descending degree, with
/// the ambiguous "l^2" read as L^2). Kept only for the --paper-literal
/// diagnostic: they do not satisfy the change-of-variables identity that
/// build_quartic's coefficients pass.
inline std::array<double, 5> quartic_coeffs(const StringParams& p, Amplitude y0) {
  require_valid(p);
  const double l = p.stretched_half_length;
  const double l0 = p.rest_half_length;
  const double a = y0.value();
  const double z0 = std::sqrt(l * l + a * a);
  return {-1.0 / (2.0 * l0), 1.0, l * l / (2.0 * l0) - z0, -l * l,
          l * l * z0 + l * l / (2.0 * l0)};
}

}  // namespace literal

}  // namespace strosc
