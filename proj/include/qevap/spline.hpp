#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qevap {

// Natural cubic spline on a strictly increasing grid.  Evaluation outside
// the grid clamps to the boundary values; callers own any true tail law.
class CubicSpline {
 public:
  CubicSpline() = default;

  CubicSpline(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n)
      throw std::domain_error("CubicSpline: need at least 3 nodes with matching values");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1]))
        throw std::domain_error("CubicSpline: grid must be strictly increasing");

    // Tridiagonal system for interior second derivatives, natural ends.
    m_.assign(n, 0.0);
    std::vector<double> diag(n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x_[i] - x_[i - 1];
      const double h1 = x_[i + 1] - x_[i];
      diag[i] = 2.0 * (h0 + h1);
      rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    for (std::size_t i = 2; i + 1 < n; ++i) {
      const double h0 = x_[i] - x_[i - 1];
      const double w = h0 / diag[i - 1];
      diag[i] -= w * h0;
      rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      const double h1 = x_[i + 1] - x_[i];
      m_[i] = (rhs[i] - h1 * m_[i + 1]) / diag[i];
      if (i == 1) break;
    }
  }

  double operator()(double t) const {
    if (x_.empty()) throw std::logic_error("CubicSpline: evaluating a default-constructed spline");
    if (t <= x_.front()) return y_.front();
    if (t >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[k + 1] - x_[k];
    const double s = t - x_[k];
    const double slope = (y_[k + 1] - y_[k]) / h - h * (2.0 * m_[k] + m_[k + 1]) / 6.0;
    return y_[k] + s * (slope + s * (m_[k] / 2.0 + s * (m_[k + 1] - m_[k]) / (6.0 * h)));
  }

  bool empty() const { return x_.empty(); }
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the nodes
};

}  // namespace qevap
