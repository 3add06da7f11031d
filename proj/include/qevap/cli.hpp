#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "qevap/csv.hpp"
#include "qevap/direct_solver.hpp"
#include "qevap/dispersion.hpp"
#include "qevap/jump.hpp"
#include "qevap/kernels.hpp"
#include "qevap/profiles.hpp"

namespace qevap {

// Parsed invocation; zero-valued overrides keep each command's default.
struct RunConfig {
  std::string command;
  int figure_number = 0;
  std::vector<double> alpha;
  std::vector<double> q;
  GasStatistics statistics = GasStatistics::Bose;
  std::string output_path;
  std::string profile_output_path;
  double x_max = 0.0;
  double tol = 0.0;
  int grid_n = 0;
};

namespace detail {

inline std::vector<double> alphas_or(const RunConfig& cfg, std::vector<double> fb) {
  return cfg.alpha.empty() ? std::move(fb) : cfg.alpha;
}

inline std::vector<double> qs_or(const RunConfig& cfg, std::vector<double> fb) {
  return cfg.q.empty() ? std::move(fb) : cfg.q;
}

inline QuadratureSpec quad_spec(const RunConfig& cfg) {
  if (cfg.tol > 0.0) return QuadratureSpec(cfg.tol, cfg.tol);
  return QuadratureSpec{};
}

inline int validate_inputs(const RunConfig& cfg, std::ostream& err) {
  for (double q : cfg.q)
    if (!(q >= 0.05 && q <= 1.0)) {
      err << "error: q must lie in [0.05, 1]\n";
      return 2;
    }
  if (cfg.statistics == GasStatistics::Bose)
    for (double a : cfg.alpha)
      if (!(a <= bose_alpha_max)) {
        err << "error: bose statistics requires alpha <= -1e-4\n";
        return 2;
      }
  return 0;
}

inline int run_moments(const RunConfig& cfg, std::ostream& out) {
  csv_header(out, {"statistics", "alpha", "f0", "l", "f2", "g2", "g3", "g4"});
  for (double a : alphas_or(cfg, {-1.0})) {
    const KernelContext ctx = make_context(a, cfg.statistics, quad_spec(cfg));
    csv_row(out, statistics_name(ctx.statistics), ctx.alpha, ctx.f0, ctx.l, ctx.f2,
            ctx.g2, ctx.g3, ctx.g4);
  }
  return 0;
}

inline int run_dispersion(const RunConfig& cfg, std::ostream& out) {
  const double a = alphas_or(cfg, {-1.0}).front();
  const KernelContext ctx = make_context(a, cfg.statistics, quad_spec(cfg));
  const int n_log = cfg.grid_n > 0 ? cfg.grid_n : 400;
  const DispersionTable table = build_dispersion_table(ctx, n_log);
  csv_header(out, {"tau", "lambda", "zeta", "v_pv"});
  for (std::size_t i = 0; i < table.tau_grid.size(); ++i)
    csv_row(out, table.tau_grid[i], table.lambda_vals[i], table.zeta_vals[i],
            table.v_pv_vals[i]);
  return 0;
}

inline void emit_jump_rows(std::ostream& out, const KernelContext& ctx,
                           const std::vector<double>& qs) {
  const double v1_value = v1(ctx);
  for (double q : qs) {
    const JumpCoefficients jc = make_jump_coefficients(ctx, q, v1_value);
    csv_row(out, ctx.alpha, q, jc.v1, jc.b_over_G, jc.c_coeff, jc.k_coeff, jc.c_n);
  }
}

inline int run_jump(const RunConfig& cfg, std::ostream& out) {
  csv_header(out, {"alpha", "q", "V1", "B_over_G", "C", "K", "C_N"});
  const std::vector<double> qs = qs_or(cfg, {1.0});
  for (double a : alphas_or(cfg, {-1.0}))
    emit_jump_rows(out, make_context(a, cfg.statistics, quad_spec(cfg)), qs);
  return 0;
}

inline int run_profile(const RunConfig& cfg, std::ostream& out) {
  const double a = alphas_or(cfg, {-1.0}).front();
  const double q = qs_or(cfg, {1.0}).front();
  const KernelContext ctx = make_context(a, cfg.statistics, quad_spec(cfg));
  const DispersionTable table = build_dispersion_table(ctx);
  std::vector<double> grid;
  if (cfg.grid_n > 0) {
    const double x_end = cfg.x_max > 0.0 ? cfg.x_max : 30.0;
    for (int i = 0; i <= cfg.grid_n; ++i) grid.push_back(x_end * i / cfg.grid_n);
  } else {
    for (double x : default_profile_grid())
      if (cfg.x_max <= 0.0 || x <= cfg.x_max) grid.push_back(x);
  }
  const ProfileTable profile = build_profile_table(ctx, q, table, std::move(grid));
  csv_header(out, {"x", "a_over_G", "knudsen_correction", "p_n"});
  for (std::size_t i = 0; i < profile.x_grid.size(); ++i)
    csv_row(out, profile.x_grid[i], profile.a_over_G[i],
            profile.knudsen_correction[i], profile.p_n[i]);
  return 0;
}

// Comparison curves over the lambda grid for one alpha and both quantum
// statistics.
inline int run_figure_dispersion(const RunConfig& cfg, std::ostream& out) {
  const double a = alphas_or(cfg, {-1.0}).front();
  const QuadratureSpec spec = quad_spec(cfg);
  const KernelContext bose = make_context(a, GasStatistics::Bose, spec);
  const KernelContext fermi = make_context(a, GasStatistics::Fermi, spec);
  const int n = cfg.grid_n > 0 ? cfg.grid_n : 400;
  const double lo = 1e-4;
  const double hi = spec.tail_cutoff;
  const double step = std::log(hi / lo) / (n - 1);
  csv_header(out, {"tau", "lambda_bose", "lambda_fermi"});
  for (int i = 0; i < n; ++i) {
    const double tau = lo * std::exp(step * i);
    csv_row(out, tau, lambda_real(tau, bose), lambda_real(tau, fermi));
  }
  return 0;
}

// Jump coefficients versus q (curve sets of the q-sweep comparison) or
// versus alpha (the alpha-sweep comparison); both quantum statistics.
inline int run_figure_curves(const RunConfig& cfg, std::ostream& out, bool sweep_q) {
  const QuadratureSpec spec = quad_spec(cfg);
  csv_header(out, {"statistics", "alpha", "q", "C", "K", "C_N"});
  if (sweep_q) {
    std::vector<double> qs = cfg.q;
    if (qs.empty())
      for (int i = 0; i <= 18; ++i) qs.push_back(0.1 + 0.05 * i);
    const std::vector<std::pair<GasStatistics, double>> sets =
        cfg.alpha.empty()
            ? std::vector<std::pair<GasStatistics, double>>{
                  {GasStatistics::Bose, -0.5},
                  {GasStatistics::Bose, -3.0},
                  {GasStatistics::Fermi, -0.5}}
            : [&] {
                std::vector<std::pair<GasStatistics, double>> v;
                for (double a : cfg.alpha) v.emplace_back(cfg.statistics, a);
                return v;
              }();
    for (const auto& [stat, a] : sets) {
      const KernelContext ctx = make_context(a, stat, spec);
      const double v1_value = v1(ctx);
      for (double q : qs) {
        const JumpCoefficients jc = make_jump_coefficients(ctx, q, v1_value);
        csv_row(out, statistics_name(stat), a, q, jc.c_coeff, jc.k_coeff, jc.c_n);
      }
    }
    return 0;
  }
  std::vector<double> alphas = cfg.alpha;
  if (alphas.empty())
    for (int i = 0; i < 50; ++i) alphas.push_back(-0.1 * (50 - i));
  const std::vector<std::pair<GasStatistics, double>> sets =
      cfg.q.empty() ? std::vector<std::pair<GasStatistics, double>>{
                          {GasStatistics::Bose, 0.5},
                          {GasStatistics::Bose, 0.3},
                          {GasStatistics::Bose, 0.2},
                          {GasStatistics::Fermi, 0.5}}
                    : [&] {
                        std::vector<std::pair<GasStatistics, double>> v;
                        for (double q : cfg.q) v.emplace_back(cfg.statistics, q);
                        return v;
                      }();
  for (const auto& [stat, q] : sets)
    for (double a : alphas) {
      const KernelContext ctx = make_context(a, stat, spec);
      const JumpCoefficients jc = make_jump_coefficients(ctx, q);
      csv_row(out, statistics_name(stat), a, q, jc.c_coeff, jc.k_coeff, jc.c_n);
    }
  return 0;
}

inline int run_figure(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.figure_number) {
    case 1: return run_figure_dispersion(cfg, out);
    case 2:
    case 4: return run_figure_curves(cfg, out, true);
    case 3:
    case 5: return run_figure_curves(cfg, out, false);
    default:
      err << "error: figure requires a number in 1..5\n";
      return 2;
  }
}

inline int run_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  DirectSolverConfig solver;
  if (cfg.x_max > 0.0) solver.x_max = cfg.x_max;
  if (cfg.tol > 0.0) solver.sweep_tol = cfg.tol;
  if (cfg.grid_n > 0) solver.n_cells = cfg.grid_n;
  csv_header(out, {"statistics", "alpha", "q", "analytic_C", "numeric_jump",
                   "rel_gap", "iterations", "fit_residual"});
  bool all_converged = true;
  DirectSolverResult last;
  for (double a : alphas_or(cfg, {-1.0})) {
    const KernelContext ctx = make_context(a, cfg.statistics, quad_spec(cfg));
    const double v1_value = v1(ctx);
    for (double q : qs_or(cfg, {1.0})) {
      const double analytic = v1_value + b_coefficient(ctx, q, 1.0);
      const DirectSolverResult r = solve_halfspace(ctx, q, 1.0, solver);
      const double gap = std::fabs(r.jump_over_G - analytic) / std::fabs(analytic);
      csv_row(out, statistics_name(cfg.statistics), a, q, analytic, r.jump_over_G,
              gap, r.iterations, r.fit_residual);
      all_converged = all_converged && r.converged;
      last = r;
    }
  }
  if (!cfg.profile_output_path.empty()) {
    std::ofstream pf(cfg.profile_output_path);
    if (!pf) {
      err << "error: cannot open " << cfg.profile_output_path << "\n";
      return 2;
    }
    csv_header(pf, {"x", "a"});
    for (std::size_t j = 0; j < last.x_cells.size(); ++j)
      csv_row(pf, last.x_cells[j], last.a_profile[j]);
  }
  if (!all_converged) {
    err << "error: direct solver did not converge\n";
    return 3;
  }
  return 0;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "moments") return run_moments(cfg, out);
  if (cfg.command == "dispersion") return run_dispersion(cfg, out);
  if (cfg.command == "jump") return run_jump(cfg, out);
  if (cfg.command == "profile") return run_profile(cfg, out);
  if (cfg.command == "figure") return run_figure(cfg, out, err);
  if (cfg.command == "oracle") return run_oracle(cfg, out, err);
  err << "error: unknown command '" << cfg.command << "'\n";
  return 2;
}

}  // namespace detail

// Executes one parsed invocation; returns the process exit status
// (0 success, 2 usage or domain error, 3 numeric failure).
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (const int rc = detail::validate_inputs(cfg, err)) return rc;
  try {
    if (!cfg.output_path.empty()) {
      std::ofstream file(cfg.output_path);
      if (!file) {
        err << "error: cannot open " << cfg.output_path << "\n";
        return 2;
      }
      return detail::dispatch(cfg, file, err);
    }
    return detail::dispatch(cfg, out, err);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConsistencyError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

// Builds the CLI11 parser bound to cfg.
inline void attach_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("command", cfg.command, "moments|dispersion|jump|profile|figure|oracle")
      ->required()
      ->check(CLI::IsMember(
          {"moments", "dispersion", "jump", "profile", "figure", "oracle"}));
  app.add_option("number", cfg.figure_number, "figure number (figure command only)")
      ->check(CLI::Range(1, 5));
  app.add_option("--alpha", cfg.alpha,
                 "dimensionless chemical potential(s), comma separated")
      ->delimiter(',');
  app.add_option("--q", cfg.q, "evaporation coefficient(s) in [0.05, 1]")
      ->delimiter(',')
      ->check(CLI::Range(0.05, 1.0));
  app.add_option("--statistics", cfg.statistics, "gas statistics")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, GasStatistics>{
              {"bose", GasStatistics::Bose},
              {"fermi", GasStatistics::Fermi},
              {"classical", GasStatistics::Classical}},
          CLI::ignore_case));
  app.add_option("--out", cfg.output_path, "write CSV to this file instead of stdout");
  app.add_option("--profile-out", cfg.profile_output_path,
                 "oracle: also dump the solved profile to this file");
  app.add_option("--x-max", cfg.x_max, "domain length override");
  app.add_option("--tol", cfg.tol, "tolerance override");
  app.add_option("--grid-n", cfg.grid_n, "grid size override");
  app.set_config("--config", "", "plain key=value configuration file");
}

// Full command-line entry point used by the executable and the tests.
inline int main_entry(int argc, const char* const* argv, std::ostream& out,
                      std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Chemical potential jump of an evaporating quantum gas"};
  attach_options(app, cfg);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return run(cfg, out, err);
}

}  // namespace qevap
