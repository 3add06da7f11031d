#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace qevap {

// Thrown when the adaptive engine cannot reach the requested tolerance or an
// integrand misbehaves; carries the best estimate and its error bound so
// callers can decide whether to accept the partial result.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_estimate, double error_bound)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_bound_(error_bound) {}

  double best_estimate() const { return best_estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

// Tolerances and truncation for semi-infinite integrals with Gaussian-decay
// integrands.  The constructor enforces exp(-tail_cutoff^2) < abs_tol so the
// discarded tail sits below the requested accuracy.
struct QuadratureSpec {
  double abs_tol;
  double rel_tol;
  int max_nodes;       // cap on adaptive panels per integral
  double tail_cutoff;  // truncation point T for integrands ~ exp(-C^2)

  explicit QuadratureSpec(double abs_tolerance = 1e-10, double rel_tolerance = 1e-10,
                          int max_panel_count = 2000, double tail = 12.0)
      : abs_tol(abs_tolerance),
        rel_tol(rel_tolerance),
        max_nodes(max_panel_count),
        tail_cutoff(tail) {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw std::domain_error("QuadratureSpec: tolerances must be positive");
    if (max_nodes < 16)
      throw std::domain_error("QuadratureSpec: max_nodes must be at least 16");
    if (!(tail_cutoff > 0.0) || !(std::exp(-tail_cutoff * tail_cutoff) < abs_tol))
      throw std::domain_error("QuadratureSpec: exp(-tail_cutoff^2) must be below abs_tol");
  }
};

// Compensated accumulator for long slowly-converging sums (Neumaier variant,
// which keeps the correction when a term exceeds the running sum).
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double term) {
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      carry += (sum - t) + term;
    else
      carry += (term - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1, 1]; nodes descend from the boundary,
// kronrod_nodes[7] = 0 is the shared center.
inline constexpr double kronrod_nodes[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double kronrod_weights[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
inline constexpr double gauss_weights[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
};

template <class F, class T>
Panel<T> evaluate_panel(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T gauss = gauss_weights[3] * fc;
  T kron = kronrod_weights[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    const T lo = f(center - dx);
    const T hi = f(center + dx);
    kron += kronrod_weights[j] * (lo + hi);
    if (j % 2 == 1) gauss += gauss_weights[j / 2] * (lo + hi);
  }
  Panel<T> p{a, b, kron * half, std::abs((kron - gauss) * half)};
  if (!std::isfinite(std::abs(p.value)) || !std::isfinite(p.error))
    throw QuadratureError("quadrature: integrand produced a non-finite value", 0.0,
                          std::numeric_limits<double>::infinity());
  return p;
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a, b].  Deterministic: the
// worst panel (ties broken by position) is split until the summed error
// estimate meets max(abs_tol, rel_tol * |value|).
template <class F, class T = std::invoke_result_t<F&, double>>
T integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
  if (a == b) return T{};
  std::vector<detail::Panel<T>> panels;
  panels.push_back(detail::evaluate_panel<F, T>(f, a, b));
  for (;;) {
    T total{};
    double err = 0.0;
    for (const auto& p : panels) {
      total += p.value;
      err += p.error;
    }
    if (err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) return total;
    if (static_cast<int>(panels.size()) >= spec.max_nodes) {
      double estimate;
      if constexpr (std::is_same_v<T, double>)
        estimate = total;
      else
        estimate = std::abs(total);
      throw QuadratureError("quadrature: panel budget exhausted before convergence",
                            estimate, err);
    }
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i) {
      if (panels[i].error > panels[worst].error ||
          (panels[i].error == panels[worst].error && panels[i].a < panels[worst].a))
        worst = i;
    }
    const double mid = 0.5 * (panels[worst].a + panels[worst].b);
    const double lo = panels[worst].a;
    const double hi = panels[worst].b;
    panels[worst] = detail::evaluate_panel<F, T>(f, lo, mid);
    panels.push_back(detail::evaluate_panel<F, T>(f, mid, hi));
    std::sort(panels.begin(), panels.end(),
              [](const auto& x, const auto& y) { return x.a < y.a; });
  }
}

// Integral of f over [0, inf) for integrands decaying at least like
// exp(-C^2): truncates at spec.tail_cutoff and integrates adaptively.
template <class F>
auto integrate_semi_infinite(F&& f, const QuadratureSpec& spec) {
  return integrate(std::forward<F>(f), 0.0, spec.tail_cutoff, spec);
}

// Principal value of integral f(t)/(t - pole) dt over (0, upper), with the
// default semi-infinite domain truncated at max(tail_cutoff, pole + 4).
// Uses singularity subtraction; the subtracted constant integrates to the
// exact log term.
template <class F>
double integrate_pv(F&& f, double pole, const QuadratureSpec& spec,
                    double upper = std::numeric_limits<double>::infinity()) {
  if (!(pole > 0.0)) throw std::domain_error("integrate_pv: pole must be positive");
  const double t_end = std::isfinite(upper) ? upper : std::max(spec.tail_cutoff, pole + 4.0);
  if (!(pole < t_end))
    throw std::domain_error("integrate_pv: pole must lie strictly inside the domain");
  const double fp = f(pole);
  if (!std::isfinite(fp))
    throw QuadratureError("integrate_pv: integrand not finite at the pole", 0.0,
                          std::numeric_limits<double>::infinity());
  // Within +-cap of the pole the difference quotient is noise; use the
  // centered slope instead (the true limit is f'(pole)).
  const double cap = 1e-7 * std::max(1.0, std::fabs(pole));
  const double slope = (f(pole + cap) - f(pole - cap)) / (2.0 * cap);
  auto subtracted = [&](double t) {
    const double d = t - pole;
    if (std::fabs(d) < cap) return slope;
    return (f(t) - fp) / d;
  };
  const double left = integrate(subtracted, 0.0, pole, spec);
  const double right = integrate(subtracted, pole, t_end, spec);
  return left + right + fp * std::log((t_end - pole) / pole);
}

}  // namespace qevap
