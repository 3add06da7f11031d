#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qevap/dispersion.hpp"
#include "qevap/kernels.hpp"

namespace qevap {

namespace detail {

inline void require_valid_q(double q) {
  if (!(q > 0.0) || q > 1.0)
    throw std::domain_error("evaporation coefficient q must lie in (0, 1]");
}

}  // namespace detail

// Chemical potential offset of the evaporating gas relative to saturation,
// per unit gradient, from the mass-balance moment ratio (4/3) g4/g3.
// Cross-checked against the explicit log form 2l / |ln(1 -+ e^alpha)|.
inline double alpha0_shift(const KernelContext& ctx, double q, double g_alpha) {
  detail::require_valid_q(q);
  const double primary = 4.0 * ctx.g4 / (3.0 * ctx.g3) * g_alpha / q;
  double log_form = 0.0;
  switch (ctx.statistics) {
    case GasStatistics::Bose:
      log_form = -2.0 * ctx.l / std::log1p(-std::exp(ctx.alpha));
      break;
    case GasStatistics::Fermi:
      log_form = 2.0 * ctx.l / std::log1p(std::exp(ctx.alpha));
      break;
    case GasStatistics::Classical:
      log_form = 2.0 * ctx.l / std::exp(ctx.alpha);
      break;
  }
  log_form *= g_alpha / q;
  if (std::fabs(primary - log_form) > 1e-9 * std::max(1.0, std::fabs(log_form)))
    throw ConsistencyError("alpha0_shift: moment form and log form disagree");
  return primary;
}

// Inflow mismatch B of the boundary condition; vanishes at full evaporation.
inline double b_coefficient(const KernelContext& ctx, double q, double g_alpha) {
  detail::require_valid_q(q);
  if (q == 1.0) return 0.0;
  return (1.0 - q) * alpha0_shift(ctx, q, g_alpha);
}

// Dimensionless chemical potential jump C = V1 + B/G.
inline double c_coefficient(const KernelContext& ctx, double q) {
  return v1(ctx) + b_coefficient(ctx, q, 1.0);
}

// Jump coefficient K = (2 f0 / l) C of the dimensional form.
inline double k_coefficient(const KernelContext& ctx, double q) {
  return 2.0 * ctx.f0 / ctx.l * c_coefficient(ctx, q);
}

// Every jump coefficient at one (alpha, q), normalized to unit gradient.
struct JumpCoefficients {
  double v1;
  double b_over_G;
  double c_coeff;
  double k_coeff;
  double c_n;
  double alpha0_shift_over_G;
};

// Assembles the bundle from a precomputed V1 (lets callers sweeping q at
// fixed alpha pay for the dispersion integral once).
inline JumpCoefficients make_jump_coefficients(const KernelContext& ctx, double q,
                                               double v1_value) {
  detail::require_valid_q(q);
  JumpCoefficients jc{};
  jc.v1 = v1_value;
  jc.alpha0_shift_over_G = alpha0_shift(ctx, q, 1.0);
  jc.b_over_G = q == 1.0 ? 0.0 : (1.0 - q) * jc.alpha0_shift_over_G;
  jc.c_coeff = jc.v1 + jc.b_over_G;
  jc.k_coeff = 2.0 * ctx.f0 / ctx.l * jc.c_coeff;
  jc.c_n = jc.c_coeff * ctx.g2;
  return jc;
}

inline JumpCoefficients make_jump_coefficients(const KernelContext& ctx, double q) {
  return make_jump_coefficients(ctx, q, v1(ctx));
}

// Mutual diffusion coefficient of the dilute component, m^2/s.
inline double diffusion_coefficient(const KernelContext& ctx, const PhysicalParams& p) {
  return 4.0 * boltzmann_k * p.temperature /
         (3.0 * p.mass * p.collision_frequency) * ctx.g4 / ctx.f0;
}

// Dimensionless mass flow W_x and dimensional velocity U_x = W_x v_T.
struct MassFlow {
  double w_x;
  double u_x;
};

inline MassFlow mass_flow(const KernelContext& ctx, const PhysicalParams& p,
                          double g_alpha) {
  const double d12 = diffusion_coefficient(ctx, p);
  const double w = p.collision_frequency * p.mass /
                   (2.0 * boltzmann_k * p.temperature) * d12 * ctx.f0 / ctx.l *
                   g_alpha;
  return MassFlow{w, w * p.v_thermal};
}

// Dimensional jump delta-mu(0) = K sqrt(beta) D12 grad; agrees with the
// equivalent mean-free-path route C l_mfp grad at 1e-9 relative.
inline double dimensional_jump(const KernelContext& ctx, double q,
                               const PhysicalParams& p, double grad_mu) {
  const double c = c_coefficient(ctx, q);
  const double k = 2.0 * ctx.f0 / ctx.l * c;
  const double via_diffusion =
      k * std::sqrt(p.beta) * diffusion_coefficient(ctx, p) * grad_mu;
  const double via_mfp = c * p.mean_free_path * grad_mu;
  if (std::fabs(via_diffusion - via_mfp) >
      1e-9 * std::max(std::fabs(via_mfp), std::fabs(grad_mu) * p.mean_free_path))
    throw ConsistencyError("dimensional_jump: diffusion and mean-free-path routes disagree");
  return via_diffusion;
}

}  // namespace qevap
