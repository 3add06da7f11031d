#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qevap/quadrature.hpp"

using qevap::integrate;
using qevap::integrate_pv;
using qevap::integrate_semi_infinite;
using qevap::KahanSum;
using qevap::QuadratureError;
using qevap::QuadratureSpec;

namespace {
const QuadratureSpec spec{};
}

TEST_CASE("rule weights sum to the interval measure", "[quadrature]") {
  double kron = qevap::detail::kronrod_weights[7];
  double gauss = qevap::detail::gauss_weights[3];
  for (int j = 0; j < 7; ++j) kron += 2.0 * qevap::detail::kronrod_weights[j];
  for (int j = 0; j < 3; ++j) gauss += 2.0 * qevap::detail::gauss_weights[j];
  CHECK(std::fabs(kron - 2.0) < 1e-15);
  CHECK(std::fabs(gauss - 2.0) < 1e-15);
}

TEST_CASE("polynomial and trigonometric integrals", "[quadrature]") {
  const double third = integrate([](double x) { return x * x; }, 0.0, 1.0, spec);
  CHECK(std::fabs(third - 1.0 / 3.0) < 1e-14);
  const double two = integrate([](double x) { return std::sin(x); }, 0.0, M_PI, spec);
  CHECK(std::fabs(two - 2.0) < 1e-12);
}

TEST_CASE("gaussian tail integral", "[quadrature]") {
  const double half_sqrt_pi =
      integrate_semi_infinite([](double x) { return std::exp(-x * x); }, spec);
  CHECK(std::fabs(half_sqrt_pi - 0.5 * std::sqrt(M_PI)) < 1e-12);
}

TEST_CASE("linearity and subdivision consistency", "[quadrature]") {
  auto f = [](double x) { return std::exp(-x * x); };
  auto g = [](double x) { return std::cos(x); };
  const double combined =
      integrate([&](double x) { return 2.0 * f(x) + 3.0 * g(x); }, 0.0, 5.0, spec);
  const double parts = 2.0 * integrate(f, 0.0, 5.0, spec) + 3.0 * integrate(g, 0.0, 5.0, spec);
  CHECK(std::fabs(combined - parts) < 1e-12);

  const double whole = integrate(f, 0.0, 5.0, spec);
  const double split = integrate(f, 0.0, 2.0, spec) + integrate(f, 2.0, 5.0, spec);
  CHECK(std::fabs(whole - split) < 1e-12);
}

TEST_CASE("complex-valued integrand", "[quadrature]") {
  const std::complex<double> val = integrate(
      [](double x) { return std::exp(std::complex<double>(0.0, x)); }, 0.0, 1.0, spec);
  CHECK(std::fabs(val.real() - std::sin(1.0)) < 1e-13);
  CHECK(std::fabs(val.imag() - (1.0 - std::cos(1.0))) < 1e-13);
}

TEST_CASE("determinism of the adaptive engine", "[quadrature]") {
  auto f = [](double x) { return std::exp(-x * x) / (1.0 + x); };
  const double a = integrate(f, 0.0, 12.0, spec);
  const double b = integrate(f, 0.0, 12.0, spec);
  CHECK(a == b);
}

TEST_CASE("principal value against independent references", "[quadrature]") {
  // mpmath, 25 digits: PV int_0^inf t e^{-t^2}/(t-1) dt.
  const double pv1 =
      integrate_pv([](double t) { return t * std::exp(-t * t); }, 1.0, spec);
  CHECK(std::fabs(pv1 - -0.41608161028565263686) < 1e-10);

  // mpmath, 25 digits: PV int_0^inf e^{-t^2}/(t-0.5) dt.
  const double pv2 =
      integrate_pv([](double t) { return std::exp(-t * t); }, 0.5, spec);
  CHECK(std::fabs(pv2 - -0.54102734271816241246) < 1e-10);
}

TEST_CASE("principal value of a constant numerator vanishes at midpoint",
          "[quadrature]") {
  const double zero = integrate_pv([](double) { return 1.0; }, 1.0, spec, 2.0);
  CHECK(std::fabs(zero) < 1e-12);
}

TEST_CASE("principal value matches symmetric exclusion", "[quadrature]") {
  auto f = [](double t) { return std::exp(-t * t); };
  const double p = 0.7;
  const double pv = integrate_pv(f, p, spec);
  const double eps = 1e-5;
  auto singular = [&](double t) { return f(t) / (t - p); };
  const double excl = integrate(singular, 0.0, p - eps, spec) +
                      integrate(singular, p + eps, 12.0, spec);
  CHECK(std::fabs(pv - excl) < 1e-3);
}

TEST_CASE("panel budget exhaustion carries the best estimate", "[quadrature]") {
  const QuadratureSpec tight(1e-14, 1e-14, 16, 12.0);
  bool thrown = false;
  try {
    integrate([](double x) { return std::cos(200.0 * x); }, 0.0, 12.0, tight);
  } catch (const QuadratureError& e) {
    thrown = true;
    CHECK(std::isfinite(e.best_estimate()));
    CHECK(e.error_bound() > 0.0);
  }
  CHECK(thrown);
}

TEST_CASE("non-finite integrand is rejected", "[quadrature]") {
  CHECK_THROWS_AS(
      integrate([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0, spec),
      QuadratureError);
}

TEST_CASE("spec construction validates its fields", "[quadrature]") {
  CHECK_THROWS_AS(QuadratureSpec(-1e-10, 1e-10), std::domain_error);
  CHECK_THROWS_AS(QuadratureSpec(1e-10, 1e-10, 8), std::domain_error);
  CHECK_THROWS_AS(QuadratureSpec(1e-10, 1e-10, 2000, 3.0), std::domain_error);
}

TEST_CASE("principal value input validation", "[quadrature]") {
  auto f = [](double t) { return std::exp(-t * t); };
  CHECK_THROWS_AS(integrate_pv(f, -1.0, spec), std::domain_error);
  CHECK_THROWS_AS(integrate_pv(f, 0.0, spec), std::domain_error);
  CHECK_THROWS_AS(integrate_pv(f, 3.0, spec, 2.0), std::domain_error);
}

TEST_CASE("compensated summation survives cancellation", "[quadrature]") {
  KahanSum acc;
  acc.add(1e16);
  acc.add(1.0);
  acc.add(-1e16);
  CHECK(acc.value() == 1.0);
}
