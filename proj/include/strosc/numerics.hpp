#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "strosc/errors.hpp"

namespace strosc {

struct QuadConfig {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;       // convergence target is max(abs_tol, rel_tol*|value|)
  int max_subdivisions = 2000;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// The subdivision budget ran out before the requested tolerance was met.
/// Carries the best estimate reached together with its error bound.
class ToleranceNotMet : public NumericalError {
 public:
  ToleranceNotMet(const std::string& what, QuadResult best_so_far)
      : NumericalError(what), best(best_so_far) {}
  QuadResult best;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1]; positive
// abscissae in descending order, centre node last. Odd indices carry the
// embedded Gauss nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelEstimate {
  double value;
  double error;  // |Kronrod - Gauss|, floored at roundoff level
};

template <class F>
PanelEstimate gauss_kronrod_15(F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double kronrod = kKronrodWeights[7] * f0;
  double gauss = kGaussWeights[3] * f0;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(mid - dx) + f(mid + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[(i - 1) / 2] * pair;
  }
  const double value = half * kronrod;
  // the two rules can agree bitwise on flat panels; roundoff of the panel
  // sum is still present, so never report less
  const double floor = std::numeric_limits<double>::epsilon() * std::abs(value);
  return {value, std::max(std::abs(half * (kronrod - gauss)), floor)};
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(static_cast<std::size_t>(n));
  w.resize(static_cast<std::size_t>(n));
  constexpr double pi = 3.141592653589793238462643383279502884;
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double xi = std::cos(pi * (i + 0.75) / (n + 0.5));
    double deriv = 0.0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0;  // P_k(xi)
      double p1 = 0.0;  // P_{k-1}(xi)
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2 * k + 1) * xi * p1 - k * p2) / (k + 1);
      }
      deriv = n * (xi * p0 - p1) / (xi * xi - 1.0);
      const double dx = p0 / deriv;
      xi -= dx;
      if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(xi) +
                              std::numeric_limits<double>::min())
        break;
    }
    const double wi = 2.0 / ((1.0 - xi * xi) * deriv * deriv);
    x[static_cast<std::size_t>(i)] = -xi;
    x[static_cast<std::size_t>(n - 1 - i)] = xi;
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(n - 1 - i)] = wi;
  }
}

}  // namespace detail

/// Fixed-order Gauss-Legendre quadrature of f over [a, b]. Exact for
/// polynomials of degree <= 2*order - 1.
template <class F>
double integrate_fixed(F&& f, double a, double b, int order) {
  if (order < 2) throw std::invalid_argument("integrate_fixed: order must be >= 2");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate_fixed: non-finite endpoint");
  if (a > b) throw DomainError("integrate_fixed: reversed interval");
  if (a == b) return 0.0;
  std::vector<double> x, w;
  detail::gauss_legendre(order, x, w);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < order; ++i)
    sum += w[static_cast<std::size_t>(i)] * f(mid + half * x[static_cast<std::size_t>(i)]);
  return half * sum;
}

/// Globally adaptive Gauss-Kronrod quadrature. The worst panel (largest
/// two-estimate error) is bisected until the summed error estimate meets
/// max(abs_tol, rel_tol*|value|), the subdivision budget runs out, or every
/// panel has reached the depth cap of 60. Endpoint singularities must be
/// removed by a change of variables before calling; the integrand is only
/// evaluated strictly inside (a, b) apart from the two panel midpoints.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, const QuadConfig& cfg = {}) {
  if (!(cfg.rel_tol > 0.0) && !(cfg.abs_tol > 0.0))
    throw std::invalid_argument("integrate_adaptive: need rel_tol > 0 or abs_tol > 0");
  if (cfg.max_subdivisions < 1)
    throw std::invalid_argument("integrate_adaptive: max_subdivisions must be >= 1");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate_adaptive: non-finite endpoint");
  if (a > b) throw DomainError("integrate_adaptive: reversed interval");
  if (a == b) return {0.0, 0.0, 0};

  struct Panel {
    double a, b, value, error;
    int depth;
  };
  constexpr int kMaxDepth = 60;

  std::vector<Panel> panels;
  auto first = detail::gauss_kronrod_15(f, a, b);
  long evaluations = 15;
  panels.push_back({a, b, first.value, first.error, 0});

  int splits = 0;
  for (;;) {
    double total = 0.0;
    double error = 0.0;
    for (const Panel& p : panels) {
      total += p.value;
      error += p.error;
    }
    if (error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)))
      return {total, error, evaluations};

    int worst = -1;
    double worst_error = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      const Panel& p = panels[i];
      const double mid = 0.5 * (p.a + p.b);
      const bool splittable = p.depth < kMaxDepth && mid > p.a && mid < p.b;
      if (splittable && p.error > worst_error) {
        worst = static_cast<int>(i);
        worst_error = p.error;
      }
    }
    if (worst < 0 || splits >= cfg.max_subdivisions)
      throw ToleranceNotMet("integrate_adaptive: tolerance not met within the subdivision budget",
                            {total, error, evaluations});

    const Panel p = panels[static_cast<std::size_t>(worst)];
    const double mid = 0.5 * (p.a + p.b);
    auto left = detail::gauss_kronrod_15(f, p.a, mid);
    auto right = detail::gauss_kronrod_15(f, mid, p.b);
    evaluations += 30;
    panels[static_cast<std::size_t>(worst)] = {p.a, mid, left.value, left.error, p.depth + 1};
    panels.push_back({mid, p.b, right.value, right.error, p.depth + 1});
    ++splits;
  }
}

/// Bracket-preserving root refinement: secant steps through the current
/// bracket with a bisection fallback whenever the interpolated point falls
/// too close to an endpoint or fails to shrink the bracket. Returns a point
/// within tol of a sign change; never leaves [lo, hi]. Endpoints with an
/// exact zero are returned directly, which also covers tangent brackets
/// admitted by the f(lo)*f(hi) <= 0 rule.
template <class F>
double refine_root(F&& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("refine_root: tol must be positive");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi))
    throw DomainError("refine_root: invalid interval");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw InvalidBracket("refine_root: no sign change over the bracket");

  bool force_bisect = false;
  for (int iter = 0; iter < 2000; ++iter) {
    const double width = hi - lo;
    const double mid = 0.5 * (lo + hi);
    if (width <= 2.0 * tol || mid <= lo || mid >= hi) return mid;

    double x = mid;
    if (!force_bisect) {
      const double secant = (fhi * lo - flo * hi) / (fhi - flo);
      const double guard = 0.125 * width;
      if (std::isfinite(secant) && secant > lo + guard && secant < hi - guard) x = secant;
    }
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (fhi > 0.0)) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
    force_bisect = (hi - lo) > 0.5 * width;
  }
  throw NumericalError("refine_root: iteration limit reached");
}

}  // namespace strosc
