#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qevap/dispersion.hpp"
#include "support.hpp"

using qevap::DispersionTable;
using qevap::lambda_real;
using qevap::zeta;

namespace {
void check_rel(double got, double want, double tol) {
  CHECK(std::fabs(got - want) <= tol * std::fabs(want));
}
}  // namespace

TEST_CASE("dispersion function on the real axis", "[dispersion]") {
  const auto& ctx = testing::bose_ctx();
  CHECK(lambda_real(0.0, ctx) == 1.0);
  check_rel(lambda_real(0.3, ctx), 0.77378405308233059906, 1e-9);
  check_rel(lambda_real(1.0, ctx), -0.12814549980682370496, 1e-9);
  check_rel(lambda_real(3.0, ctx), -0.057860376002548541275, 1e-9);
  check_rel(lambda_real(50.0, ctx), -0.00016942801763508949299, 1e-8);
  // Even in its argument by construction.
  CHECK(lambda_real(-2.0, ctx) == lambda_real(2.0, ctx));
}

TEST_CASE("classical dispersion matches the Dawson-function oracle", "[dispersion]") {
  check_rel(lambda_real(1.0, testing::classical_ctx()),
            -0.076159013825536838273, 1e-9);
}

TEST_CASE("large-argument law of lambda", "[dispersion]") {
  const auto& ctx = testing::bose_ctx();
  const double asymptotic = -ctx.l / (2.0 * ctx.f0 * 2500.0);
  const double got = lambda_real(50.0, ctx);
  CHECK(std::fabs(got - asymptotic) < 0.01 * std::fabs(asymptotic));
}

TEST_CASE("boundary phase endpoints and continuity", "[dispersion]") {
  const auto& ctx = testing::bose_ctx();
  check_rel(zeta(1.0, ctx), -1.3411744456303503203, 1e-8);
  CHECK(std::fabs(zeta(1e-4, ctx) - -3.1413888066619237582) < 1e-6);
  CHECK(std::fabs(zeta(1e-4, ctx) + M_PI) < 1e-3);
  CHECK(std::fabs(zeta(12.0, ctx)) < 1e-6);
  CHECK_THROWS_AS(zeta(0.0, ctx), std::domain_error);
  CHECK_THROWS_AS(zeta(-1.0, ctx), std::domain_error);
}

TEST_CASE("zero of lambda on the positive axis", "[dispersion]") {
  const auto& ctx = testing::bose_ctx();
  const double tau0 = qevap::find_lambda_zero(ctx);
  CHECK(std::fabs(tau0 - 0.84802352928682320744) < 1e-9);
  // The phase passes through -pi/2 exactly at the zero.
  CHECK(std::fabs(zeta(tau0, ctx) + 0.5 * M_PI) < 1e-6);
}

TEST_CASE("phase integral V1 across statistics", "[dispersion]") {
  check_rel(qevap::v1(testing::bose_ctx()), 0.96181514671829733952, 1e-8);
  check_rel(qevap::v1(testing::fermi_ctx()), 1.0549920171060522648, 1e-8);
  check_rel(qevap::v1(testing::classical_ctx()), 1.0161914183233527595, 1e-8);
  const auto b05 = qevap::make_context(-0.5, qevap::GasStatistics::Bose);
  check_rel(qevap::v1(b05), 0.90906635659710540216, 1e-8);
  const auto b3 = qevap::make_context(-3.0, qevap::GasStatistics::Bose);
  check_rel(qevap::v1(b3), 1.0099877853741212384, 1e-8);
}

TEST_CASE("Cauchy integral on and off the cut", "[dispersion]") {
  const auto& ctx = testing::bose_ctx();
  check_rel(qevap::v_on_cut(1.0, ctx), 0.90039160966554447751, 1e-8);
  check_rel(qevap::v_on_cut(0.5, ctx), 0.26807434123278120058, 1e-8);
  check_rel(qevap::v_of_z(-1.0, ctx), -0.61526508315978542259, 1e-8);
  CHECK_THROWS_AS(qevap::v_of_z(1.0, ctx), std::domain_error);
  CHECK_THROWS_AS(qevap::v_on_cut(0.0, ctx), std::domain_error);
  CHECK_THROWS_AS(qevap::v_of_z(std::complex<double>(1.0, 0.0), ctx),
                  std::domain_error);

  // Conjugate symmetry of the complex branch.
  const std::complex<double> z(0.5, 1.5);
  const std::complex<double> v = qevap::v_of_z(z, ctx);
  const std::complex<double> vc = qevap::v_of_z(std::conj(z), ctx);
  CHECK(std::abs(v - std::conj(vc)) < 1e-10);
}

TEST_CASE("factorizing function", "[dispersion]") {
  const auto& ctx = testing::bose_ctx();
  const double x = qevap::x_factor(-1.0, ctx);
  check_rel(x, -std::exp(-0.61526508315978542259), 1e-8);
  check_rel(qevap::x_factor_on_cut(1.0, ctx),
            std::exp(0.90039160966554447751), 1e-8);
  CHECK_THROWS_AS(qevap::x_factor(0.0, ctx), std::domain_error);
}

TEST_CASE("dispersion table structure", "[dispersion]") {
  const DispersionTable& t = testing::bose_table();
  REQUIRE(t.tau_grid.size() >= 400);
  CHECK(t.tau_grid.front() == 1e-4);
  CHECK(std::fabs(t.tau_grid.back() - 12.0) < 1e-9);
  CHECK(std::fabs(t.zeta_vals.front() + M_PI) < 1e-3);
  CHECK(std::fabs(t.zeta_vals.back()) < 1e-6);
  for (std::size_t i = 1; i < t.tau_grid.size(); ++i) {
    CHECK(t.tau_grid[i] > t.tau_grid[i - 1]);
    CHECK(std::fabs(t.zeta_vals[i] - t.zeta_vals[i - 1]) < 0.2);
  }
  CHECK(std::fabs(t.tau_zero - 0.84802352928682320744) < 1e-9);
  check_rel(t.v1_value, 0.96181514671829733952, 1e-8);
}

TEST_CASE("table accessors and tail laws", "[dispersion]") {
  const DispersionTable& t = testing::bose_table();
  CHECK(t.zeta_at(15.0) == 0.0);
  CHECK(t.a_cont_at(15.0) == 0.0);
  // mpmath: a_cont(1) = e^{-V(1)} sin zeta(1) / pi.
  CHECK(std::fabs(t.a_cont_at(1.0) - -0.12596898146685605666) < 1e-6);
  // Beyond the grid V decays like V1/tau.
  const double v20 = t.v_pv_at(20.0);
  CHECK(std::fabs(v20 - t.v1_value / 20.0) < 0.2 * std::fabs(v20));
  // Continuity across the grid boundary.
  CHECK(std::fabs(t.v_pv_at(12.0 + 1e-9) - t.v_pv_vals.back()) < 1e-4);
}

TEST_CASE("Cauchy identity ties the table to the off-cut branch", "[dispersion]") {
  const auto& ctx = testing::bose_ctx();
  const DispersionTable& t = testing::bose_table();
  const double z = -1.0;
  const double lhs = qevap::integrate(
      [&](double eta) { return eta <= 0.0 ? 0.0 : eta * t.a_cont_at(eta) / (eta - z); },
      0.0, t.tau_max(), ctx.quad);
  const double rhs = z - t.v1_value - z * std::exp(-qevap::v_of_z(z, ctx));
  CHECK(std::fabs(lhs - rhs) < 1e-6);
}

TEST_CASE("table grid validation", "[dispersion]") {
  CHECK_THROWS_AS(qevap::build_dispersion_table(testing::bose_ctx(), 10),
                  std::domain_error);
  CHECK_THROWS_AS(qevap::build_dispersion_table(testing::bose_ctx(), 400, 5),
                  std::domain_error);
}
