#include "modspace/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace modspace {

std::vector<double> least_squares(const std::vector<std::vector<double>>& cols,
                                  const std::vector<double>& y) {
  if (cols.empty()) throw std::invalid_argument("least_squares: no columns");
  const std::size_t m = y.size();
  for (const auto& c : cols)
    if (c.size() != m)
      throw std::invalid_argument("least_squares: column length mismatch");
  Eigen::MatrixXd A(m, cols.size());
  Eigen::VectorXd b(m);
  for (std::size_t i = 0; i < m; ++i) {
    b(i) = y[i];
    for (std::size_t j = 0; j < cols.size(); ++j) A(i, j) = cols[j][i];
  }
  Eigen::VectorXd c = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  return std::vector<double>(c.data(), c.data() + c.size());
}

double log_sum_exp(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double bisect_smallest_true(const std::function<bool(double)>& pred,
                            double lo, double hi, double tol) {
  if (!pred(hi))
    throw std::invalid_argument("bisect_smallest_true: pred(hi) is false");
  if (pred(lo)) return lo;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::vector<double> log_space(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw std::invalid_argument("log_space: need 0 < lo < hi and count >= 2");
  std::vector<double> out(count);
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < count; ++i)
    out[i] = std::exp(la + (lb - la) * i / (count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace modspace
