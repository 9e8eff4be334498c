#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "strosc/bounds.hpp"
#include "strosc/periods.hpp"

using namespace strosc;

namespace {

const StringParams kRef{1.0, 1.0, 1.0, 2.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

StringParams random_params(std::mt19937_64& rng, double ratio_lo, double ratio_hi) {
  StringParams p;
  p.spring_constant = oracle::log_uniform(rng, 0.1, 10.0);
  p.mass = oracle::log_uniform(rng, 0.1, 10.0);
  p.rest_half_length = oracle::log_uniform(rng, 0.1, 10.0);
  p.stretched_half_length = p.rest_half_length * oracle::log_uniform(rng, ratio_lo, ratio_hi);
  return p;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

}  // namespace

TEST_CASE("constant-tension period closed forms") {
  CHECK(rayleigh_period(kRef) == kTwoPi);
  CHECK(rayleigh_period({2.0, 1.0, 1.0, 2.0}) ==
        Catch::Approx(4.4428829381583662).epsilon(1e-15));
  CHECK_THROWS_AS(rayleigh_period({1.0, 1.0, 2.0, 1.0}), ValidationError);
}

TEST_CASE("lower bound closed form and limits") {
  CHECK(lower_bound(kRef, Amplitude(0.5)) ==
        Catch::Approx(6.0955851027836192).epsilon(1e-15));
  // tends to the upper bound as the amplitude tends to zero
  CHECK(lower_bound(kRef, Amplitude(1e-8)) == Catch::Approx(kTwoPi).epsilon(1e-15));
  std::mt19937_64 rng(43);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_params(rng, 1.001, 50.0);
    const Amplitude a(p.stretched_half_length * oracle::log_uniform(rng, 1e-4, 10.0));
    CHECK(lower_bound(p, a) < rayleigh_period(p));
    CHECK(lower_bound(p, a) > 0.0);
  }
}

TEST_CASE("bounds bundle is internally consistent") {
  const auto b = period_bounds(kRef, Amplitude(0.5));
  CHECK(b.lower == Catch::Approx(6.0955851027836192).epsilon(1e-15));
  CHECK(b.upper == kTwoPi);
  CHECK(b.lower <= b.upper);
  CHECK(b.envelope_low == relative_error_envelope(kRef, Amplitude(0.5)));
  CHECK(b.envelope_high == 0.0);
}

TEST_CASE("error envelope closed form, quadratic growth, zero dimension") {
  CHECK(relative_error_envelope(kRef, Amplitude(0.5)) == -0.03125);
  CHECK(relative_error_envelope(kRef, Amplitude(0.25)) == -0.03125 / 4.0);
  // invariant under a uniform rescaling of all lengths
  const StringParams scaled3{1.0, 1.0, 3.0, 6.0};
  CHECK(relative_error_envelope(scaled3, Amplitude(1.5)) ==
        Catch::Approx(-0.03125).epsilon(1e-15));
  CHECK(relative_error_envelope(kRef, Amplitude(0.7)) < 0.0);
}

TEST_CASE("closed-form bounds obey the unit-scaling laws exactly") {
  for (double k : {0.25, 4.0}) {
    const double root_k = std::sqrt(k);
    const StringParams lengths{1.0, 1.0, k, 2.0 * k};
    CHECK(rayleigh_period(lengths) == root_k * rayleigh_period(kRef));
    CHECK(lower_bound(lengths, Amplitude(0.5 * k)) ==
          root_k * lower_bound(kRef, Amplitude(0.5)));
    CHECK(relative_error_envelope(lengths, Amplitude(0.5 * k)) ==
          relative_error_envelope(kRef, Amplitude(0.5)));

    const StringParams stiff{k, 1.0, 1.0, 2.0};
    CHECK(rayleigh_period(stiff) == rayleigh_period(kRef) / root_k);
    CHECK(lower_bound(stiff, Amplitude(0.5)) == lower_bound(kRef, Amplitude(0.5)) / root_k);

    const StringParams heavy{1.0, k, 1.0, 2.0};
    CHECK(rayleigh_period(heavy) == root_k * rayleigh_period(kRef));
    CHECK(lower_bound(heavy, Amplitude(0.5)) == root_k * lower_bound(kRef, Amplitude(0.5)));
  }
}

TEST_CASE("sandwich holds on a randomized sample") {
  std::mt19937_64 rng(47);
  const QuadConfig tight{1e-12, 0.0, 4000};
  for (int i = 0; i < 1500; ++i) {
    const auto p = random_params(rng, 1.001, 100.0);
    const Amplitude a(p.stretched_half_length * oracle::log_uniform(rng, 1e-5, 10.0));
    const double period = period_phi(p, a, tight).period;
    const double upper = rayleigh_period(p);
    const double lower = lower_bound(p, a);
    CHECK((period - lower) / upper >= -1e-12);
    CHECK((upper - period) / upper >= -1e-12);
  }
}

TEST_CASE("realized relative error respects the envelope") {
  std::mt19937_64 rng(53);
  const QuadConfig tight{1e-12, 0.0, 4000};
  for (int i = 0; i < 300; ++i) {
    const auto p = random_params(rng, 1.001, 50.0);
    const Amplitude a(p.stretched_half_length * oracle::log_uniform(rng, 1e-4, 5.0));
    const double period = period_phi(p, a, tight).period;
    const double pbar = rayleigh_period(p);
    const double r = (period - pbar) / period;
    CHECK(r <= 1e-12);
    CHECK(r >= relative_error_envelope(p, a) * (1.0 + 1e-9) - 1e-15);
  }
}

TEST_CASE("deviation from the constant-tension period shrinks quadratically") {
  const QuadConfig tight{1e-13, 0.0, 4000};
  const double pbar = rayleigh_period(kRef);
  std::vector<double> log_amp, log_dev;
  for (int i = 0; i < 10; ++i) {
    const double ratio = 1e-4 * std::pow(100.0, i / 9.0);  // y0/L in [1e-4, 1e-2]
    const double a = ratio * kRef.stretched_half_length;
    const double period = period_phi(kRef, Amplitude(a), tight).period;
    log_amp.push_back(std::log(a));
    log_dev.push_back(std::log(1.0 - period / pbar));
  }
  const double slope = fit_slope(log_amp, log_dev);
  CHECK(slope == Catch::Approx(2.0).margin(0.05));
}

TEST_CASE("literal printed bound forms break the unit-scaling laws") {
  const StringParams m7{1.0, 7.0, 1.0, 2.0};
  const Amplitude a(0.5);
  const double k = 4.0;
  const double root_k = std::sqrt(k);

  // derivation-consistent form scales exactly
  const StringParams m28{1.0, 7.0 * k, 1.0, 2.0};
  CHECK(lower_bound(m28, a) == root_k * lower_bound(m7, a));

  // the printed form deviates by far more than any roundoff allowance
  const double literal_scaled = literal::lower_bound(m28, a);
  const double literal_expected = root_k * literal::lower_bound(m7, a);
  CHECK(std::abs(literal_scaled / literal_expected - 1.0) > 1e-3);

  // the printed envelope is not invariant under a pure length rescaling
  const StringParams m7_lengths{1.0, 7.0, 3.0, 6.0};
  const double env_scaled = literal::relative_error_envelope(m7_lengths, Amplitude(1.5));
  const double env_base = literal::relative_error_envelope(m7, a);
  CHECK(std::abs(env_scaled / env_base - 1.0) > 1e-3);
}

TEST_CASE("literal printed lower bound can overshoot the true period") {
  // a light mass shrinks the printed amplitude correction far below the
  // derivation-consistent one, pushing the printed bound above the period
  const StringParams light{1.0, 1.0 / 64.0, 1.0, 2.0};
  const Amplitude a(0.5);
  const double period = period_phi(light, a, {1e-12, 0.0, 4000}).period;
  CHECK(literal::lower_bound(light, a) > period);
  CHECK(lower_bound(light, a) <= period);
}
