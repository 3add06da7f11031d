#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "qevap/quadrature.hpp"

namespace qevap {

enum class GasStatistics { Bose, Fermi, Classical };

inline const char* statistics_name(GasStatistics s) {
  switch (s) {
    case GasStatistics::Bose: return "bose";
    case GasStatistics::Fermi: return "fermi";
    case GasStatistics::Classical: return "classical";
  }
  return "unknown";
}

// Thrown when two independent routes to the same quantity disagree beyond
// their stated tolerance.
class ConsistencyError : public std::runtime_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// The Bose branch diverges as alpha -> 0-, so the usable domain stops here.
inline constexpr double bose_alpha_max = -1e-4;

inline void require_valid_alpha(double alpha, GasStatistics s) {
  if (s == GasStatistics::Bose && !(alpha <= bose_alpha_max))
    throw std::domain_error(
        "bose statistics requires alpha <= -1e-4 (condensation regime is out of scope)");
  if (!std::isfinite(alpha)) throw std::domain_error("alpha must be finite");
}

// Equilibrium occupancy at reduced speed C for the given statistics:
// 1/(exp(C^2 - alpha) -+ 1), or exp(alpha - C^2) in the classical limit.
inline double f_equilibrium(double c, double alpha, GasStatistics s) {
  require_valid_alpha(alpha, s);
  const double arg = c * c - alpha;
  switch (s) {
    case GasStatistics::Bose: return 1.0 / std::expm1(arg);
    case GasStatistics::Fermi: return 1.0 / (std::exp(arg) + 1.0);
    case GasStatistics::Classical: return std::exp(-arg);
  }
  throw std::logic_error("unreachable statistics variant");
}

// d f_equilibrium / d alpha; equals f(1+f) for Bose, f(1-f) for Fermi and
// f itself classically.
inline double g_weight(double c, double alpha, GasStatistics s) {
  const double f = f_equilibrium(c, alpha, s);
  switch (s) {
    case GasStatistics::Bose: return f * (1.0 + f);
    case GasStatistics::Fermi: return f * (1.0 - f);
    case GasStatistics::Classical: return f;
  }
  throw std::logic_error("unreachable statistics variant");
}

namespace detail {

// sum_{k>=1} sigma_k exp(k alpha) / k^power with sigma_k = 1 (Bose) or
// (-1)^{k+1} (Fermi).  Valid when exp(alpha) <= 0.9; Kahan-compensated.
inline double occupancy_series(double alpha, double power, GasStatistics s) {
  KahanSum acc;
  double sign = 1.0;
  for (int k = 1; k <= 200000; ++k) {
    const double term = sign * std::exp(k * alpha) / std::pow(static_cast<double>(k), power);
    acc.add(term);
    if (std::fabs(term) < 1e-16 * std::fabs(acc.value()) && k > 4) return acc.value();
    if (s == GasStatistics::Fermi) sign = -sign;
  }
  throw ConsistencyError("occupancy series failed to converge");
}

inline bool series_applicable(double alpha, GasStatistics s) {
  if (s == GasStatistics::Classical) return false;
  return std::exp(alpha) <= 0.9;
}

// Occupancy integrands scale like e^alpha in the dilute limit, so the
// absolute tolerance must shrink with them to keep relative accuracy.
inline QuadratureSpec dilute_scaled(const QuadratureSpec& spec, double alpha) {
  const double scale = std::exp(std::min(0.0, std::max(alpha, -100.0)));
  if (scale >= 1.0) return spec;
  return QuadratureSpec(spec.abs_tol * scale, spec.rel_tol, spec.max_nodes,
                        spec.tail_cutoff);
}

}  // namespace detail

// Series value of f0 = integral of f_equilibrium over C in [0, inf):
// (sqrt(pi)/2) sum sigma_k e^{k alpha}/sqrt(k).
inline double moment_f0_series(double alpha, GasStatistics s) {
  return 0.5 * std::sqrt(M_PI) * detail::occupancy_series(alpha, 0.5, s);
}

// Series value of l = -+ integral of ln(1 -+ e^{alpha - C^2}) dC:
// (sqrt(pi)/2) sum sigma_k e^{k alpha}/k^{3/2}.
inline double moment_l_series(double alpha, GasStatistics s) {
  return 0.5 * std::sqrt(M_PI) * detail::occupancy_series(alpha, 1.5, s);
}

// Quadrature moments of the equilibrium function and its alpha-derivative.
inline double moment_f0(double alpha, GasStatistics s, const QuadratureSpec& spec) {
  require_valid_alpha(alpha, s);
  const double quad = integrate_semi_infinite(
      [&](double c) { return f_equilibrium(c, alpha, s); },
      detail::dilute_scaled(spec, alpha));
  if (detail::series_applicable(alpha, s)) {
    const double series = moment_f0_series(alpha, s);
    if (std::fabs(quad - series) > 1e-8 * std::fabs(series))
      throw ConsistencyError("moment f0: series and quadrature disagree");
  }
  return quad;
}

inline double moment_l(double alpha, GasStatistics s, const QuadratureSpec& spec) {
  require_valid_alpha(alpha, s);
  auto integrand = [&](double c) -> double {
    const double y = std::exp(alpha - c * c);
    switch (s) {
      case GasStatistics::Bose: return -std::log1p(-y);
      case GasStatistics::Fermi: return std::log1p(y);
      case GasStatistics::Classical: return y;
    }
    return 0.0;
  };
  const double quad =
      integrate_semi_infinite(integrand, detail::dilute_scaled(spec, alpha));
  if (detail::series_applicable(alpha, s)) {
    const double series = moment_l_series(alpha, s);
    if (std::fabs(quad - series) > 1e-8 * std::fabs(series))
      throw ConsistencyError("moment l: series and quadrature disagree");
  }
  return quad;
}

inline double moment_f2(double alpha, GasStatistics s, const QuadratureSpec& spec) {
  require_valid_alpha(alpha, s);
  return integrate_semi_infinite(
      [&](double c) { return c * c * f_equilibrium(c, alpha, s); },
      detail::dilute_scaled(spec, alpha));
}

// Quadrature value of integral C^n g_weight(C) dC for n in {2, 3, 4}.
inline double moment_g(int n, double alpha, GasStatistics s, const QuadratureSpec& spec) {
  if (n < 2 || n > 4) throw std::domain_error("moment_g: n must be 2, 3 or 4");
  require_valid_alpha(alpha, s);
  return integrate_semi_infinite(
      [&](double c) { return std::pow(c, n) * g_weight(c, alpha, s); },
      detail::dilute_scaled(spec, alpha));
}

// Closed form of g3: (+-1/2) ln(1 +- e^alpha), or e^alpha/2 classically.
inline double moment_g3_closed(double alpha, GasStatistics s) {
  switch (s) {
    case GasStatistics::Bose: return -0.5 * std::log1p(-std::exp(alpha));
    case GasStatistics::Fermi: return 0.5 * std::log1p(std::exp(alpha));
    case GasStatistics::Classical: return 0.5 * std::exp(alpha);
  }
  throw std::logic_error("unreachable statistics variant");
}

// Immutable bundle of the six moments every downstream formula needs.
// All stored values come from quadrature; construction cross-checks them
// against series, closed forms and the exact inter-moment identities.
struct KernelContext {
  double alpha;
  GasStatistics statistics;
  double f0;
  double l;
  double f2;
  double g2;
  double g3;
  double g4;
  QuadratureSpec quad;
};

inline double f_equilibrium(double c, const KernelContext& ctx) {
  return f_equilibrium(c, ctx.alpha, ctx.statistics);
}
inline double g_weight(double c, const KernelContext& ctx) {
  return g_weight(c, ctx.alpha, ctx.statistics);
}

inline KernelContext make_context(double alpha, GasStatistics s,
                                  const QuadratureSpec& spec = QuadratureSpec{}) {
  require_valid_alpha(alpha, s);
  KernelContext ctx{alpha, s,
                    moment_f0(alpha, s, spec), moment_l(alpha, s, spec),
                    moment_f2(alpha, s, spec), moment_g(2, alpha, s, spec),
                    moment_g(3, alpha, s, spec), moment_g(4, alpha, s, spec),
                    spec};
  auto check = [&](double got, double want, double tol, const char* what) {
    if (std::fabs(got - want) > tol * std::fabs(want))
      throw ConsistencyError(std::string("kernel moments: ") + what);
  };
  check(ctx.f2, 0.5 * ctx.l, 1e-9, "f2 must equal l/2");
  check(ctx.g2, 0.5 * ctx.f0, 1e-9, "g2 must equal f0/2");
  check(ctx.g4, 0.75 * ctx.l, 1e-8, "g4 must equal 3l/4");
  check(ctx.g3, moment_g3_closed(alpha, s), 1e-8, "g3 must match its closed form");
  if (s == GasStatistics::Classical) {
    const double base = 0.5 * std::exp(alpha) * std::sqrt(M_PI);
    check(ctx.f0, base, 1e-8, "classical f0 must equal e^alpha sqrt(pi)/2");
    check(ctx.l, base, 1e-8, "classical l must equal e^alpha sqrt(pi)/2");
  }
  if (!(ctx.f0 > 0.0 && ctx.l > 0.0 && ctx.f2 > 0.0 && ctx.g2 > 0.0 && ctx.g3 > 0.0 &&
        ctx.g4 > 0.0))
    throw ConsistencyError("kernel moments: all moments must be strictly positive");
  return ctx;
}

// Dimensional constants (SI).
inline constexpr double boltzmann_k = 1.380649e-23;   // J/K
inline constexpr double reduced_planck = 1.054571817e-34;  // J s

// Dimensional inputs plus the derived scales used by the transport formulas.
struct PhysicalParams {
  double mass;                 // kg
  double temperature;          // K
  double collision_frequency;  // 1/s
  int spin_multiplicity;       // 2s + 1
  double beta;                 // m/(2kT), s^2/m^2
  double v_thermal;            // 1/sqrt(beta), m/s
  double mean_free_path;       // v_thermal/collision_frequency, m
  double thermal_wavenumber;   // m v_thermal / hbar, 1/m
  double n0;                   // 2 pi (2s+1) m^3 / ((2 pi hbar)^3 beta^{3/2}), 1/m^3

  PhysicalParams(double mass_kg, double temperature_k, double collision_frequency_hz,
                 int spin_mult = 1)
      : mass(mass_kg),
        temperature(temperature_k),
        collision_frequency(collision_frequency_hz),
        spin_multiplicity(spin_mult) {
    if (!(mass > 0.0) || !(temperature > 0.0) || !(collision_frequency > 0.0) ||
        spin_multiplicity < 1)
      throw std::domain_error("PhysicalParams: all inputs must be strictly positive");
    beta = mass / (2.0 * boltzmann_k * temperature);
    v_thermal = 1.0 / std::sqrt(beta);
    mean_free_path = v_thermal / collision_frequency;
    thermal_wavenumber = mass * v_thermal / reduced_planck;
    const double two_pi_hbar = 2.0 * M_PI * reduced_planck;
    n0 = 2.0 * M_PI * spin_multiplicity * mass * mass * mass /
         (two_pi_hbar * two_pi_hbar * two_pi_hbar * std::pow(beta, 1.5));
  }
};

}  // namespace qevap
