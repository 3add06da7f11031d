#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "qevap/kernels.hpp"
#include "qevap/quadrature.hpp"
#include "qevap/spline.hpp"

namespace qevap {

// Dispersion function on the real axis (principal-value sense on the cut).
// Parity reduction folds the full-line integral onto (0, inf):
// lambda(eta) = 1 + (eta^2/f0) PV integral f(mu) / ((mu - eta)(mu + eta)) dmu.
inline double lambda_real(double eta, const KernelContext& ctx) {
  if (eta == 0.0) return 1.0;
  const double e = std::fabs(eta);
  // Normalizing by f0 inside the integrand keeps it O(1) for any alpha, so
  // the absolute tolerance stays meaningful deep in the dilute regime.
  const double pv = integrate_pv(
      [&](double mu) { return f_equilibrium(mu, ctx) / (ctx.f0 * (mu + e)); }, e,
      ctx.quad);
  return 1.0 + e * e * pv;
}

// Continuous boundary phase of lambda across the cut, built from the
// explicit boundary values: zeta = atan2(Im lambda+, Re lambda+) - pi.
// Ranges over (-pi, 0); passes -pi/2 at the zero of lambda.
inline double zeta(double tau, const KernelContext& ctx) {
  if (!(tau > 0.0)) throw std::domain_error("zeta: tau must be positive");
  const double im = M_PI * tau * f_equilibrium(tau, ctx) / (2.0 * ctx.f0);
  return std::atan2(im, lambda_real(tau, ctx)) - M_PI;
}

// The single zero of lambda on (0, inf), located by bisection to 1e-12.
inline double find_lambda_zero(const KernelContext& ctx) {
  double lo = 0.05;
  double flo = lambda_real(lo, ctx);
  double hi = lo;
  for (int i = 0; i < 64; ++i) {
    hi *= 1.5;
    const double fhi = lambda_real(hi, ctx);
    if (flo > 0.0 && fhi <= 0.0) break;
    lo = hi;
    flo = fhi;
    if (hi > ctx.quad.tail_cutoff)
      throw ConsistencyError("find_lambda_zero: no sign change located");
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (lambda_real(mid, ctx) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// V1 = -(1/pi) integral of zeta over (0, inf); the q = 1 jump coefficient.
// The integration splits at the zero of lambda where zeta crosses -pi/2.
inline double v1(const KernelContext& ctx) {
  const double tau0 = find_lambda_zero(ctx);
  auto z = [&](double tau) { return tau > 0.0 ? zeta(tau, ctx) : -M_PI; };
  const double head = integrate(z, 0.0, tau0, ctx.quad);
  const double tail = integrate(z, tau0, ctx.quad.tail_cutoff, ctx.quad);
  return -(head + tail) / M_PI;
}

// Cauchy integral V(z) = (1/pi) integral zeta(tau)/(tau - z) dtau for z off
// the cut (0, inf).  Accepts real z < 0 or complex z with nonzero imaginary
// part; V(z) -> 0 as |z| -> infinity.
template <class Z>
Z v_of_z(Z z, const KernelContext& ctx) {
  if constexpr (std::is_same_v<Z, double>) {
    if (!(z < 0.0)) throw std::domain_error("v_of_z: real argument must be negative");
  } else {
    if (z.imag() == 0.0 && z.real() >= 0.0)
      throw std::domain_error("v_of_z: argument must lie off the cut (0, inf)");
  }
  auto integrand = [&](double tau) -> Z {
    const double zt = tau > 0.0 ? zeta(tau, ctx) : -M_PI;
    return zt / (Z(tau) - z);
  };
  return integrate(integrand, 0.0, ctx.quad.tail_cutoff, ctx.quad) / M_PI;
}

// Principal value of V on the cut.
inline double v_on_cut(double eta, const KernelContext& ctx) {
  if (!(eta > 0.0)) throw std::domain_error("v_on_cut: eta must be positive");
  auto z = [&](double tau) { return tau > 0.0 ? zeta(tau, ctx) : -M_PI; };
  return integrate_pv(z, eta, ctx.quad) / M_PI;
}

// Factorizing function X(z) = (1/z) exp V(z) of the homogeneous problem.
template <class Z>
Z x_factor(Z z, const KernelContext& ctx) {
  if (z == Z{}) throw std::domain_error("x_factor: z must be nonzero");
  return std::exp(v_of_z(z, ctx)) / z;
}

// Principal-value X on the cut; 1/X(eta) = eta exp(-V(eta)).
inline double x_factor_on_cut(double eta, const KernelContext& ctx) {
  return std::exp(v_on_cut(eta, ctx)) / eta;
}

// Sampled dispersion data: lambda, zeta and the PV values V(tau) on a grid
// resolving both the tau -> 0 layer and the neighborhood of the lambda zero.
// Splines over the samples serve the profile formulas; v1_value holds the
// directly integrated (not splined) jump integral.
struct DispersionTable {
  std::vector<double> tau_grid;
  std::vector<double> lambda_vals;
  std::vector<double> zeta_vals;
  std::vector<double> v_pv_vals;
  double tau_zero = 0.0;
  double v1_value = 0.0;
  QuadratureSpec quad;

  CubicSpline zeta_spline;
  CubicSpline v_pv_spline;
  CubicSpline a_cont_spline;  // exp(-V(tau)) sin zeta(tau) / pi

  // Grid bounds; beyond tau_max the phase is Gaussian-dead.
  double tau_min() const { return tau_grid.front(); }
  double tau_max() const { return tau_grid.back(); }

  double zeta_at(double tau) const {
    if (tau >= tau_max()) return 0.0;
    return zeta_spline(tau);
  }

  // Continuous-spectrum weight A(eta)/G = exp(-V(eta)) sin zeta(eta) / pi.
  // Finite nonzero limit at eta -> 0+, Gaussian-dead beyond the grid.
  double a_cont_at(double tau) const {
    if (tau >= tau_max()) return 0.0;
    return a_cont_spline(tau);
  }

  // Past the grid the pole sits beyond the phase support, so the Cauchy
  // integral is regular and decays like v1_value / tau.
  double v_pv_at(double tau) const {
    if (tau <= tau_max()) return v_pv_spline(tau);
    const double cut = tau_max();
    return integrate([&](double t) { return zeta_spline(t) / (t - tau); }, 0.0,
                     cut, quad) /
           M_PI;
  }
};

// Builds the sampled table: n_log log-spaced nodes on [1e-4, tail] plus
// n_local linear nodes around the lambda zero.
inline DispersionTable build_dispersion_table(const KernelContext& ctx, int n_log = 400,
                                              int n_local = 100) {
  if (n_log < 50 || n_local < 10)
    throw std::domain_error("build_dispersion_table: grid too coarse");
  DispersionTable table;
  table.quad = ctx.quad;
  table.tau_zero = find_lambda_zero(ctx);
  table.v1_value = v1(ctx);

  const double lo = 1e-4;
  const double hi = ctx.quad.tail_cutoff;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n_log + n_local) + 2);
  const double step = std::log(hi / lo) / (n_log - 1);
  for (int i = 0; i < n_log; ++i) grid.push_back(lo * std::exp(step * i));
  const double half_width = 0.15;
  for (int i = 0; i < n_local; ++i)
    grid.push_back(table.tau_zero - half_width +
                   2.0 * half_width * i / (n_local - 1));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::fabs(a - b) < 1e-13; }),
             grid.end());

  table.tau_grid = std::move(grid);
  const std::size_t n = table.tau_grid.size();
  table.lambda_vals.resize(n);
  table.zeta_vals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = table.tau_grid[i];
    table.lambda_vals[i] = lambda_real(tau, ctx);
    const double im = M_PI * tau * f_equilibrium(tau, ctx) / (2.0 * ctx.f0);
    table.zeta_vals[i] = std::atan2(im, table.lambda_vals[i]) - M_PI;
  }
  table.zeta_spline = CubicSpline(table.tau_grid, table.zeta_vals);

  // PV values over the splined phase; the spline is exact at the nodes and
  // interpolates at 1e-9 level in between, which the PV integral inherits.
  auto zeta_s = [&](double tau) {
    if (tau <= 0.0) return -M_PI;
    if (tau >= hi) return 0.0;
    return table.zeta_spline(tau);
  };
  // Default PV domain max(tail, pole + 4) keeps the last node's pole interior;
  // the phase is identically zero past the grid, so the extension is exact.
  table.v_pv_vals.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    table.v_pv_vals[i] = integrate_pv(zeta_s, table.tau_grid[i], ctx.quad) / M_PI;
  table.v_pv_spline = CubicSpline(table.tau_grid, table.v_pv_vals);

  std::vector<double> a_vals(n);
  for (std::size_t i = 0; i < n; ++i)
    a_vals[i] = std::exp(-table.v_pv_vals[i]) * std::sin(table.zeta_vals[i]) / M_PI;
  table.a_cont_spline = CubicSpline(table.tau_grid, a_vals);
  return table;
}

}  // namespace qevap
