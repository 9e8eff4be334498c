#pragma once

// Test-only oracles, kept independent of the library's quadrature and
// stepping paths: a composite 10-point Gauss rule with literature node and
// weight constants, the period integrand written in its plain textbook
// form, and a central-difference helper.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "strosc/model.hpp"

namespace oracle {

inline constexpr std::array<double, 5> kGauss10Nodes = {
    0.14887433898163121088482600112972,
    0.43339539412924719079926594316578,
    0.67940956829902440623432736511487,
    0.86506336668898451073209668842349,
    0.97390652851717172007796401208445,
};

inline constexpr std::array<double, 5> kGauss10Weights = {
    0.29552422471475287017389299465134,
    0.26926671930999635509122692156947,
    0.21908636251598204399553493422816,
    0.14945134915058059314577633965770,
    0.06667134430868813759356880989333,
};

template <class F>
double gauss10(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double dx = half * kGauss10Nodes[static_cast<std::size_t>(i)];
    sum += kGauss10Weights[static_cast<std::size_t>(i)] * (f(mid - dx) + f(mid + dx));
  }
  return half * sum;
}

template <class F>
double composite_gauss10(F&& f, double a, double b, int panels) {
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double pa = a + (b - a) * i / panels;
    const double pb = a + (b - a) * (i + 1) / panels;
    sum += gauss10(f, pa, pb);
  }
  return sum;
}

/// Exact period through the angle-substituted quarter-period integral with
/// the radicand written directly as 1/L0 - 2/(sqrt(L^2+y^2)+sqrt(L^2+y0^2)).
inline double period(const strosc::StringParams& p, double y0, int panels = 200) {
  const double l = p.stretched_half_length;
  const double l0 = p.rest_half_length;
  const double z0 = std::sqrt(l * l + y0 * y0);
  auto integrand = [&](double phi) {
    const double y = y0 * std::sin(phi);
    const double s = std::sqrt(l * l + y * y);
    return 1.0 / std::sqrt(1.0 / l0 - 2.0 / (s + z0));
  };
  const double pi = 3.141592653589793238462643383279502884;
  return 4.0 * std::sqrt(p.mass / (2.0 * p.spring_constant)) *
         composite_gauss10(integrand, 0.0, pi / 2.0, panels);
}

template <class F>
double central_difference(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Uniform double in [lo, hi) from the raw engine output; the mapping is
/// pinned here so sampled tests do not depend on the standard library's
/// distribution implementation.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo * std::exp(uniform(rng, 0.0, std::log(hi / lo)));
}

}  // namespace oracle
