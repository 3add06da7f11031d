#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qevap/dispersion.hpp"
#include "qevap/jump.hpp"
#include "qevap/kernels.hpp"
#include "qevap/quadrature.hpp"

namespace qevap {

// Continuous-spectrum relaxation term of the profile:
// (1/pi) int e^{-x/eta} e^{-V(eta)} sin zeta(eta) d eta.  Decays on the
// mean-free-path scale; a(x)/G = C + x + knudsen_correction(x).
inline double knudsen_correction(double x, const DispersionTable& disp) {
  if (x < 0.0) throw std::domain_error("knudsen_correction: x must be nonnegative");
  const double lo = disp.tau_min();
  auto integrand = [&](double eta) {
    if (eta <= 0.0) return 0.0;
    return std::exp(-x / eta) * disp.a_cont_at(eta);
  };
  double value = integrate(integrand, lo, disp.tau_max(), disp.quad);
  // [0, tau_min) strip: the weight has a finite limit at eta -> 0+.
  value += disp.a_cont_at(lo) * lo * std::exp(-x / lo);
  return value;
}

// Chemical potential profile a(x)/G across the Knudsen layer.
inline double chem_potential_profile(double x, const KernelContext& ctx, double q,
                                     const DispersionTable& disp) {
  if (x < 0.0)
    throw std::domain_error("chem_potential_profile: x must be nonnegative");
  const double c = disp.v1_value + b_coefficient(ctx, q, 1.0);
  return c + x + knudsen_correction(x, disp);
}

// Closed-form wall distribution h(0, mu).  The outgoing half (mu > 0)
// reproduces the inflow value B identically; the incoming half carries the
// factorizing function evaluated off the cut at negative argument.
inline double wall_distribution(double mu, const KernelContext& ctx, double q,
                                double g_alpha) {
  if (mu == 0.0) throw std::domain_error("wall_distribution: mu must be nonzero");
  const double b = b_coefficient(ctx, q, g_alpha);
  if (mu > 0.0) return b;
  return b - g_alpha * mu * std::exp(-v_of_z(mu, ctx));
}

// Eigenfunction expansion h(x, mu)/G: drift term plus the continuous
// spectrum.  The delta part of the eigenfunction reduces to
// mu e^{-x/mu} cos zeta(mu) e^{-V(mu)}, which stays finite through the
// zero of lambda.
inline double full_distribution(double x, double mu, const KernelContext& ctx,
                                double q, const DispersionTable& disp) {
  if (x < 0.0) throw std::domain_error("full_distribution: x must be nonnegative");
  const double c = disp.v1_value + b_coefficient(ctx, q, 1.0);
  // Below this the PV pole probes would leave the domain; h is continuous
  // in mu, so the mu = 0 value serves to O(1e-6).
  if (std::fabs(mu) < 1e-6) return c + x + knudsen_correction(x, disp);
  auto weighted = [&](double eta) {
    if (eta <= 0.0) return 0.0;
    return std::exp(-x / eta) * eta * disp.a_cont_at(eta);
  };
  double value = c + x - mu;
  if (mu > 0.0) {
    const double upper = std::max(disp.tau_max(), mu + 4.0);
    value += integrate_pv(weighted, mu, disp.quad, upper);
    value += mu * std::exp(-x / mu) * std::cos(disp.zeta_at(mu)) *
             std::exp(-disp.v_pv_at(mu));
  } else {
    value += integrate(
        [&](double eta) { return eta <= 0.0 ? 0.0 : weighted(eta) / (eta - mu); },
        0.0, disp.tau_max(), disp.quad);
  }
  return value;
}

// Concentration profile coefficient P_N(x) = [a(x)/G] g2.
inline double concentration_coefficient(double x, const KernelContext& ctx, double q,
                                        const DispersionTable& disp) {
  return chem_potential_profile(x, ctx, q, disp) * ctx.g2;
}

// Dimensional concentration deviation n(x) = P_N(x) G_N.
inline double concentration_profile(double x, const KernelContext& ctx, double q,
                                    const DispersionTable& disp, double g_n) {
  return concentration_coefficient(x, ctx, q, disp) * g_n;
}

// Concentration jump coefficient C_N = C g2.
inline double concentration_jump(const KernelContext& ctx, double q) {
  return c_coefficient(ctx, q) * ctx.g2;
}

inline double concentration_jump(const KernelContext& ctx, double q,
                                 const DispersionTable& disp) {
  return (disp.v1_value + b_coefficient(ctx, q, 1.0)) * ctx.g2;
}

// Saturated density of the dilute component, N_s = N0 l.
inline double saturated_density(const KernelContext& ctx, const PhysicalParams& p) {
  return p.n0 * ctx.l;
}

// Sampled Knudsen-layer structure.
struct ProfileTable {
  std::vector<double> x_grid;
  std::vector<double> a_over_G;
  std::vector<double> knudsen_correction;
  std::vector<double> p_n;
};

// Layer-resolving default: dense to x = 2, coarser to 10, sparse to 30.
inline std::vector<double> default_profile_grid() {
  std::vector<double> xs;
  xs.reserve(47);
  for (int i = 0; i <= 20; ++i) xs.push_back(0.1 * i);
  for (int i = 0; i < 16; ++i) xs.push_back(2.5 + 0.5 * i);
  for (int i = 0; i < 10; ++i) xs.push_back(12.0 + 2.0 * i);
  return xs;
}

inline ProfileTable build_profile_table(
    const KernelContext& ctx, double q, const DispersionTable& disp,
    std::vector<double> x_grid = default_profile_grid()) {
  ProfileTable table;
  table.x_grid = std::move(x_grid);
  const double c = disp.v1_value + b_coefficient(ctx, q, 1.0);
  const std::size_t n = table.x_grid.size();
  table.a_over_G.reserve(n);
  table.knudsen_correction.reserve(n);
  table.p_n.reserve(n);
  for (double x : table.x_grid) {
    const double kc = qevap::knudsen_correction(x, disp);
    table.knudsen_correction.push_back(kc);
    table.a_over_G.push_back(c + x + kc);
    table.p_n.push_back((c + x + kc) * ctx.g2);
  }
  return table;
}

}  // namespace qevap
