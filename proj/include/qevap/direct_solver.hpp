#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qevap/jump.hpp"
#include "qevap/kernels.hpp"

namespace qevap {

// Discrete-ordinates configuration.  Ordinates are a Gauss rule per
// half-range (0, mu_max), mirrored; the mesh grades toward the wall as
// x_j = x_max (j/n)^mesh_power.
struct DirectSolverConfig {
  int n_ordinates = 48;
  double x_max = 25.0;
  int n_cells = 600;
  double sweep_tol = 1e-9;
  int max_sweeps = 20000;
  double mu_max = 6.0;
  double mesh_power = 1.5;
  double fit_tol = 1e-3;
};

struct DirectSolverResult {
  double jump_over_G = 0.0;
  double fit_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> x_cells;
  std::vector<double> a_profile;
};

namespace detail {

inline void validate(const DirectSolverConfig& cfg) {
  if (cfg.n_ordinates < 24 || cfg.n_ordinates % 2 != 0)
    throw std::domain_error("direct solver: n_ordinates must be even and >= 24");
  if (cfg.x_max < 20.0)
    throw std::domain_error("direct solver: x_max must be >= 20");
  if (cfg.n_cells < 50) throw std::domain_error("direct solver: n_cells must be >= 50");
  if (!(cfg.sweep_tol > 0.0)) throw std::domain_error("direct solver: sweep_tol must be positive");
  if (cfg.max_sweeps < 1) throw std::domain_error("direct solver: max_sweeps must be >= 1");
  if (!(cfg.mu_max > 0.0)) throw std::domain_error("direct solver: mu_max must be positive");
  if (cfg.mesh_power < 1.0)
    throw std::domain_error("direct solver: mesh_power must be >= 1");
}

// Gauss-Legendre rule on [-1, 1] by Newton iteration on the recurrence.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::fabs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace detail

// Solves the half-space relaxation problem by source iteration over
// diamond-difference transport sweeps and extracts the far-field jump.
//
// Works on the deviation w = h - G(x - mu), which obeys the same equation
// with source a_w(x) = (1/2f0) int f w dmu and tends to the constant A;
// inflow w(0, mu>0) = B + G mu, specular closure at x_max.  The drift part
// G(x - mu) solves the discrete equations exactly, so the split is lossless.
inline DirectSolverResult solve_halfspace(const KernelContext& ctx, double q,
                                          double g_alpha,
                                          const DirectSolverConfig& cfg = {}) {
  detail::validate(cfg);
  const double b = b_coefficient(ctx, q, g_alpha);

  const int m = cfg.n_ordinates / 2;
  std::vector<double> gl_x, gl_w;
  detail::gauss_legendre(m, gl_x, gl_w);
  std::vector<double> mu(m), wt(m);
  double wt_sum = 0.0;
  for (int i = 0; i < m; ++i) {
    mu[i] = 0.5 * cfg.mu_max * (gl_x[i] + 1.0);
    wt[i] = 0.5 * cfg.mu_max * gl_w[i] * f_equilibrium(mu[i], ctx);
    wt_sum += wt[i];
  }
  if (std::fabs(wt_sum - ctx.f0) > 1e-8 * ctx.f0)
    throw ConsistencyError("direct solver: ordinate weights do not reproduce f0");
  for (double& v : wt) v *= ctx.f0 / wt_sum;

  const int n = cfg.n_cells;
  std::vector<double> edges(n + 1), centers(n), widths(n);
  for (int j = 0; j <= n; ++j)
    edges[j] = cfg.x_max * std::pow(static_cast<double>(j) / n, cfg.mesh_power);
  for (int j = 0; j < n; ++j) {
    centers[j] = 0.5 * (edges[j] + edges[j + 1]);
    widths[j] = edges[j + 1] - edges[j];
  }

  std::vector<double> src(n, b), src_new(n), moment(n), out_edge(m);
  double diff_prev = 0.0;
  int sweeps = 0;
  bool converged = false;
  for (; sweeps < cfg.max_sweeps; ++sweeps) {
    std::fill(moment.begin(), moment.end(), 0.0);
    for (int i = 0; i < m; ++i) {
      double in = b + g_alpha * mu[i];
      for (int j = 0; j < n; ++j) {
        const double r = mu[i] / widths[j];
        const double out = ((r - 0.5) * in + src[j]) / (r + 0.5);
        moment[j] += wt[i] * 0.5 * (in + out);
        in = out;
      }
      out_edge[i] = in;
    }
    for (int i = 0; i < m; ++i) {
      double in = out_edge[i];
      for (int j = n - 1; j >= 0; --j) {
        const double r = mu[i] / widths[j];
        const double out = ((r - 0.5) * in + src[j]) / (r + 0.5);
        moment[j] += wt[i] * 0.5 * (in + out);
        in = out;
      }
    }
    double diff = 0.0;
    for (int j = 0; j < n; ++j) {
      src_new[j] = moment[j] / (2.0 * ctx.f0);
      diff = std::max(diff, std::fabs(src_new[j] - src[j]));
    }
    src.swap(src_new);
    // Geometric extrapolation of the remaining source-iteration error.
    if (diff_prev > 0.0 && diff < diff_prev) {
      const double rho = diff / diff_prev;
      if (diff * rho / (1.0 - rho) < cfg.sweep_tol) {
        converged = true;
        ++sweeps;
        break;
      }
    } else if (diff == 0.0) {
      converged = true;
      ++sweeps;
      break;
    }
    diff_prev = diff;
  }

  // Fit a_w = const on the asymptotic half of the domain.
  double acc = 0.0;
  int count = 0;
  for (int j = 0; j < n; ++j)
    if (centers[j] >= 0.5 * cfg.x_max) {
      acc += src[j];
      ++count;
    }
  const double a_fit = acc / count;
  double rss = 0.0;
  for (int j = 0; j < n; ++j)
    if (centers[j] >= 0.5 * cfg.x_max) {
      const double d = src[j] - a_fit;
      rss += d * d;
    }
  const double residual = std::sqrt(rss / count);
  if (residual > cfg.fit_tol * std::max(1.0, std::fabs(a_fit))) converged = false;

  DirectSolverResult result;
  result.jump_over_G = g_alpha == 0.0 ? 0.0 : a_fit / g_alpha;
  result.fit_residual = residual;
  result.iterations = sweeps;
  result.converged = converged;
  result.x_cells = centers;
  result.a_profile.resize(n);
  for (int j = 0; j < n; ++j) result.a_profile[j] = src[j] + g_alpha * centers[j];
  return result;
}

}  // namespace qevap
