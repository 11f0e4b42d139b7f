#include "modspace/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace modspace {

namespace {

void check_domain(double beta, double t) {
  if (!(beta > 0.0)) throw std::invalid_argument("gamma: beta must be > 0");
  if (!(t >= 0.0)) throw std::invalid_argument("gamma: t must be >= 0");
}

// Lower integral by power series: gamma_lower = t^beta e^{-t} sum_k t^k /
// (beta (beta+1) ... (beta+k)).  Converges fast for t < beta + 1.
double lower_series(double beta, double t) {
  if (t == 0.0) return 0.0;
  double ap = beta;
  double term = 1.0 / beta;
  double sum = term;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    term *= t / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16)
      return sum * std::exp(-t + beta * std::log(t));
  }
  throw std::runtime_error("gamma series failed to converge");
}

// Upper integral by modified Lentz continued fraction, valid for t >= beta+1.
double upper_fraction(double beta, double t) {
  const double tiny = 1e-300;
  double b = t + 1.0 - beta;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - beta);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16)
      return h * std::exp(-t + beta * std::log(t));
  }
  throw std::runtime_error("gamma continued fraction failed to converge");
}

}  // namespace

double gamma_upper(double beta, double t) {
  check_domain(beta, t);
  if (t < beta + 1.0) return std::tgamma(beta) - lower_series(beta, t);
  return upper_fraction(beta, t);
}

double gamma_lower(double beta, double t) {
  check_domain(beta, t);
  if (t < beta + 1.0) return lower_series(beta, t);
  return std::tgamma(beta) - upper_fraction(beta, t);
}

double inverse_gamma_upper(double beta, double u) {
  if (!(beta > 0.0)) throw std::invalid_argument("gamma: beta must be > 0");
  const double total = std::tgamma(beta);
  if (!(u > 0.0) || !(u <= total))
    throw std::invalid_argument(
        "inverse_gamma_upper: u must lie in (0, tgamma(beta)]");
  if (u == total) return 0.0;

  // gamma_upper(beta, .) decreases from total to 0; bracket then bisect.
  double lo = 0.0;
  double hi = std::max(beta, 1.0);
  while (gamma_upper(beta, hi) > u) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e7)
      throw std::runtime_error("inverse_gamma_upper: bracket overflow");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (gamma_upper(beta, mid) > u)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace modspace
