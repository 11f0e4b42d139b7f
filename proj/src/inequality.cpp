#include "modspace/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "modspace/fitting.hpp"
#include "modspace/special.hpp"
#include "modspace/transform.hpp"

namespace modspace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dual_exponent(double q) {
  if (q < 1.0) throw std::invalid_argument("q must be at least 1");
  if (q == 1.0) return kInf;
  if (std::isinf(q)) return 1.0;
  return q / (q - 1.0);
}

double max_abs(const SampledFunction& f) {
  double m = 0.0;
  for (const auto& z : f.values) m = std::max(m, std::abs(z));
  return m;
}

void require_real(const SampledFunction& u) {
  double peak = max_abs(u);
  double im = 0.0;
  for (const auto& z : u.values) im = std::max(im, std::abs(z.imag()));
  if (im > 1e-12 * std::max(peak, 1e-300))
    throw std::invalid_argument("input must be real-valued");
}

//! Largest |partial_d u| over the grid and over axes d, measured
//! spectrally.  Bounds the per-sample phase increment of e^{i lambda u}.
double max_gradient(const SampledFunction& u) {
  SampledFunction spectrum =
      u.domain == DomainTag::frequency ? u : forward_transform(u);
  double worst = 0.0;
  for (int d = 0; d < u.grid.dim; ++d) {
    std::vector<int> order(static_cast<std::size_t>(u.grid.dim), 0);
    order[static_cast<std::size_t>(d)] = 1;
    SampledFunction deriv =
        inverse_transform(spectral_power_multiply(spectrum, order, 0.0));
    worst = std::max(worst, max_abs(deriv));
  }
  return worst;
}

}  // namespace

std::string to_string(ConstantVariant v) {
  switch (v) {
    case ConstantVariant::rv_a: return "rv_a";
    case ConstantVariant::rv_b: return "rv_b";
    case ConstantVariant::sv: return "sv";
  }
  return "unknown";
}

ConstantsReport subalgebra_constant(const ConstantsParams& params, double R) {
  if (R < 2.0) throw std::invalid_argument("R must be at least 2");
  if (params.n < 1) throw std::invalid_argument("dimension must be positive");
  const double qp = dual_exponent(params.q);

  ConstantsReport rep;
  rep.variant = to_string(params.variant);
  rep.R = R;
  rep.q_prime = qp;
  rep.alpha = params.alpha;
  rep.s = params.s;
  rep.n = params.n;

  if (params.variant == ConstantVariant::sv) {
    if (params.N < 1) throw std::invalid_argument("decay order must be >= 1");
    rep.c_or_delta = 0.0;
    const double nq = std::isinf(qp) ? 0.0 : static_cast<double>(params.n) / qp;
    const double m = std::ceil(nq + static_cast<double>(params.N));
    rep.integral_value = 0.0;
    rep.constant = std::pow(2.0, m - nq) * std::pow(R, -params.N);
    return rep;
  }

  if (params.s <= 0.0)
    throw std::invalid_argument("subadditivity gain must be positive");
  double exponent = 0.0;  // decay exponent before the q' factor
  if (params.variant == ConstantVariant::rv_a) {
    if (params.alpha <= 0.0 || params.c <= 0.0)
      throw std::invalid_argument("rv_a needs alpha > 0 and c > 0");
    rep.c_or_delta = params.c;
    exponent = params.s * params.c * std::pow(R - 2.0, params.alpha);
  } else {
    if (params.delta <= 0.0 || params.alpha - params.delta <= 0.0)
      throw std::invalid_argument("rv_b needs 0 < delta < alpha");
    rep.c_or_delta = params.delta;
    exponent = params.s * std::pow(R - 2.0, params.alpha - params.delta);
  }

  if (std::isinf(qp)) {
    // The l^{q'} shell aggregate degenerates to a sup of the decay factor.
    rep.integral_value = 0.0;
    rep.constant = std::exp(-exponent);
    return rep;
  }
  const double beta = static_cast<double>(params.n) / params.alpha;
  rep.integral_value = gamma_upper(beta, qp * exponent);
  rep.constant = std::pow(rep.integral_value, 1.0 / qp);
  return rep;
}

AlgebraEntry algebra_ratio(const SampledFunction& f, const SampledFunction& g,
                           double p1, double p2, double q,
                           const WeightFunction& w, long k_max,
                           double tail_tol) {
  if (!(p1 >= 1.0) || !(p2 >= 1.0))
    throw std::invalid_argument("exponents must be at least 1");
  const double inv1 = std::isinf(p1) ? 0.0 : 1.0 / p1;
  const double inv2 = std::isinf(p2) ? 0.0 : 1.0 / p2;
  if (inv1 + inv2 > 1.0 + 1e-12)
    throw std::invalid_argument("1/p1 + 1/p2 must not exceed 1");
  if (!(f.grid == g.grid))
    throw std::invalid_argument("factors must share a grid");
  if (f.domain != DomainTag::space || g.domain != DomainTag::space)
    throw std::invalid_argument("factors must be space-domain samples");

  AlgebraEntry entry;
  entry.p1 = p1;
  entry.p2 = p2;
  entry.p = inv1 + inv2 == 0.0 ? kInf : 1.0 / (inv1 + inv2);
  entry.q = q;

  SampledFunction product = make_sampled(f.grid, DomainTag::space);
  for (std::size_t j = 0; j < product.values.size(); ++j)
    product.values[j] = f.values[j] * g.values[j];
  check_boundary_decay(product);

  NormParams np(w);
  np.q = q;
  np.k_max = k_max;
  np.tail_tol = tail_tol;

  np.p = p1;
  NormResult rf = modulation_norm(f, np);
  np.p = p2;
  NormResult rg = modulation_norm(g, np);
  np.p = entry.p;
  NormResult rfg = modulation_norm(product, np);

  entry.norm_f = rf.value;
  entry.norm_g = rg.value;
  entry.norm_fg = rfg.value;
  entry.certified = rf.certified && rg.certified && rfg.certified &&
                    !rf.boundary_warning && !rg.boundary_warning &&
                    !rfg.boundary_warning;
  if (rf.value == 0.0 || rg.value == 0.0) {
    entry.zero_input = true;
    entry.ratio = 0.0;
  } else {
    entry.ratio = rfg.value / (rf.value * rg.value);
  }
  return entry;
}

SuperpositionReport superposition_growth(const SampledFunction& u,
                                         const WeightFunction& w,
                                         const std::vector<double>& lambdas,
                                         double p, double q, long k_max,
                                         double tail_tol, double theta,
                                         int sv_n) {
  if (u.domain != DomainTag::space)
    throw std::invalid_argument("need space-domain samples");
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("p must lie strictly between 1 and infinity");
  if (sv_n < 1) throw std::invalid_argument("sv_n must be >= 1");
  require_real(u);

  SuperpositionReport rep;
  rep.weight_spec = w.description();
  rep.p = p;
  rep.q = q;
  rep.theta = theta;
  rep.bound_exponent = w.index_alpha();
  rep.lambdas = lambdas;

  NormParams np(w);
  np.p = p;
  np.q = q;
  np.k_max = k_max;
  np.tail_tol = tail_tol;
  rep.u_norm = modulation_norm(u, np).value;

  const double grad = max_gradient(u);
  const double dx = u.grid.dx();

  for (double lambda : lambdas) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    SampledFunction v = make_sampled(u.grid, DomainTag::space);
    for (std::size_t j = 0; j < v.values.size(); ++j) {
      const double phase = lambda * u.values[j].real();
      v.values[j] = std::polar(1.0, phase) - 1.0;
    }
    check_boundary_decay(v);
    NormResult res = modulation_norm(v, np);
    rep.norms.push_back(res.value);
    rep.aliased.push_back(lambda * grad * dx > 0.5);
    rep.certified.push_back(res.certified && !res.boundary_warning);
  }

  // Small-lambda normalized values: norm / (lambda |u|) at the two smallest
  // positive entries, stable when the map is locally linear.
  std::vector<std::size_t> order(lambdas.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lambdas[a] < lambdas[b];
  });
  std::vector<std::size_t> positive;
  for (std::size_t i : order)
    if (lambdas[i] > 0.0) positive.push_back(i);
  const double U = rep.u_norm;
  if (positive.size() >= 1 && U > 0.0)
    rep.small_c0 = rep.norms[positive[0]] / (lambdas[positive[0]] * U);
  if (positive.size() >= 2 && U > 0.0)
    rep.small_c1 = rep.norms[positive[1]] / (lambdas[positive[1]] * U);

  // Growth branch: points past lambda |u| = 1, aliased ones excluded.
  std::vector<std::size_t> branch;
  for (std::size_t i : order)
    if (lambdas[i] * U > 1.0 && rep.norms[i] > 0.0 && !rep.aliased[i])
      branch.push_back(i);
  if (branch.size() < 2) return rep;

  const double alpha = w.index_alpha();
  std::vector<double> xs, ys;
  for (std::size_t i : branch) {
    xs.push_back(lambdas[i] * U);
    ys.push_back(std::log(rep.norms[i]) - std::log(lambdas[i] * U));
  }

  {
    std::vector<double> ones(xs.size(), 1.0), growth(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j)
      growth[j] = std::pow(xs[j], alpha) * std::log(xs[j]);
    auto coef = least_squares({ones, growth}, ys);
    rep.fit_log_c = coef[0];
    rep.fit_b = coef[1];
    const double xm = xs.back();
    rep.rv_bound_at_max =
        std::log(xm) + coef[0] + coef[1] * std::pow(xm, alpha) * std::log(xm);
  }

  {
    // log-norm grows like a power of lambda whose exponent tracks the
    // weight index; fit it as the log-log slope over the growth branch.
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double log_norm = std::log(rep.norms[branch[j]]);
      if (log_norm <= 0.0) continue;
      lx.push_back(std::log(lambdas[branch[j]]));
      ly.push_back(std::log(log_norm));
    }
    if (lx.size() >= 2) {
      std::vector<double> ones(lx.size(), 1.0);
      rep.fitted_exponent = least_squares({ones, lx}, ly)[1];
    }
  }

  {
    const double power = 1.0 + 1.0 / static_cast<double>(sv_n);
    auto sse_at = [&](double a) {
      std::vector<double> ones(xs.size(), 1.0), col(xs.size());
      for (std::size_t j = 0; j < xs.size(); ++j)
        col[j] = theta * w(a * std::pow(xs[j], power));
      auto coef = least_squares({ones, col}, ys);
      double sse = 0.0;
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const double r = ys[j] - coef[0] - coef[1] * col[j];
        sse += r * r;
      }
      return sse;
    };
    const double log_a = golden_section_max(
        [&](double t) { return -sse_at(std::exp(t)); }, std::log(1e-3),
        std::log(1e2), 1e-4);
    const double a = std::exp(log_a);
    std::vector<double> ones(xs.size(), 1.0), col(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j)
      col[j] = theta * w(a * std::pow(xs[j], power));
    auto coef = least_squares({ones, col}, ys);
    const double xm = xs.back();
    rep.sv_bound_at_max = std::log(xm) + coef[0] +
                          coef[1] * theta * w(a * std::pow(xm, power));
  }
  return rep;
}

ContinuityReport exp_map_continuity(const SampledFunction& u,
                                    const WeightFunction& w, double xi0,
                                    const std::vector<double>& deltas,
                                    double p, double q, long k_max,
                                    double tail_tol) {
  if (u.domain != DomainTag::space)
    throw std::invalid_argument("need space-domain samples");
  require_real(u);
  if (deltas.empty())
    throw std::invalid_argument("deltas must be nonempty");
  for (double d : deltas)
    if (!(d > 0.0)) throw std::invalid_argument("deltas must be positive");

  ContinuityReport rep;
  rep.xi0 = xi0;
  rep.deltas = deltas;

  NormParams np(w);
  np.p = p;
  np.q = q;
  np.k_max = k_max;
  np.tail_tol = tail_tol;

  const double grad = max_gradient(u);
  const double dx = u.grid.dx();

  for (double delta : deltas) {
    SampledFunction v = make_sampled(u.grid, DomainTag::space);
    for (std::size_t j = 0; j < v.values.size(); ++j) {
      const double base = u.values[j].real();
      v.values[j] =
          std::polar(1.0, (xi0 + delta) * base) - std::polar(1.0, xi0 * base);
    }
    check_boundary_decay(v);
    rep.moduli.push_back(modulation_norm(v, np).value);
    rep.aliased.push_back(std::abs(xi0 + delta) * grad * dx > 0.5);
  }

  std::vector<std::size_t> order(deltas.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return deltas[a] < deltas[b];
  });
  rep.monotone = order.size() >= 2;
  for (std::size_t j = 0; j + 1 < order.size(); ++j)
    if (rep.moduli[order[j]] >= rep.moduli[order[j + 1]] + 1e-15)
      rep.monotone = false;
  if (order.size() >= 2) {
    const double r0 = rep.moduli[order[0]] / deltas[order[0]];
    const double r1 = rep.moduli[order[1]] / deltas[order[1]];
    rep.c_ratio = r1 > 0.0 ? r0 / r1 : 0.0;
  }
  return rep;
}

double DecayModel::operator()(double xi) const {
  return c * std::exp(-eps * std::pow(std::abs(xi), kappa));
}

double DecayModel::log_abs(double xi) const {
  return std::log(c) - eps * std::pow(std::abs(xi), kappa);
}

namespace {

//! Exponent of the admissibility growth factor at frequency xi.  Clamped
//! below at 0 so low-frequency quadrature panels upper-bound the integral
//! (the factor never falls below 1 where the conditions are meaningful).
double growth_exponent(const WeightFunction& w, ConstantVariant variant,
                       double alpha, double exponent_eps, double xi) {
  if (variant == ConstantVariant::sv)
    return std::max(0.0, w(std::pow(xi, 1.0 + exponent_eps)));
  if (xi <= 1.0) return 0.0;
  double value = w(xi) * std::log(xi);
  if (variant == ConstantVariant::rv_b) {
    const double lg = std::max(std::log(xi), 1.0);
    value *= w.slowly_varying_part(xi * std::pow(lg, 1.0 / alpha));
  }
  return std::max(0.0, value);
}

double simpson(const std::function<double(double)>& f, double a, double b,
               int intervals) {
  // intervals must be even
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int j = 1; j < intervals; ++j)
    sum += f(a + h * j) * (j % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

MeasureConditionReport measure_condition_check(
    const DecayModel& density, const SampledFunction& signed_spectrum,
    const WeightFunction& w, ConstantVariant variant, double xi_max,
    double l_lambda, double exponent_eps) {
  if (!(density.c > 0.0) || !(density.eps > 0.0) || !(density.kappa > 0.0))
    throw std::invalid_argument("decay model must decay");
  if (!(xi_max >= 100.0)) throw std::invalid_argument("xi_max too small");
  if (signed_spectrum.domain != DomainTag::frequency)
    throw std::invalid_argument("need a frequency-domain sample");
  const double alpha = w.index_alpha();
  if (variant == ConstantVariant::rv_b && alpha <= 0.0)
    throw std::invalid_argument("rv_b needs a weight of positive index");
  if (variant == ConstantVariant::sv && exponent_eps <= 0.0)
    throw std::invalid_argument("sv needs a positive exponent increment");

  MeasureConditionReport rep;
  rep.variant = to_string(variant);
  rep.l_lambda = l_lambda;

  rep.xi_probes = log_space(10.0, xi_max, 97);
  for (double xi : rep.xi_probes) {
    const double denom = -density.log_abs(xi);
    const double numer = growth_exponent(w, variant, alpha, exponent_eps, xi);
    rep.ratios.push_back(denom > 0.0
                             ? numer / denom
                             : std::numeric_limits<double>::infinity());
  }
  rep.final_ratio = rep.ratios.back();
  rep.trend_monotone = true;
  for (std::size_t j = 0; j + 1 < rep.xi_probes.size(); ++j) {
    if (rep.xi_probes[j] < xi_max / 100.0) continue;
    if (rep.ratios[j + 1] > rep.ratios[j] + 1e-12) rep.trend_monotone = false;
  }

  {
    std::complex<double> sum = 0.0;
    for (const auto& z : signed_spectrum.values) sum += z;
    rep.integral_value =
        std::abs(sum) * signed_spectrum.grid.freq_cell_volume();
    rep.zero_mean = rep.integral_value <= 1e-10;
  }

  // Weighted absolute integral over [0, inf), panels doubling in xi.  The
  // integrand is evaluated in the log domain so the growth factor and the
  // decay never overflow separately.
  auto integrand = [&](double xi) {
    return std::exp(l_lambda *
                        growth_exponent(w, variant, alpha, exponent_eps, xi) +
                    density.log_abs(xi));
  };
  double total = simpson(integrand, 0.0, 16.0, 1024);
  double prev_panel = total;
  rep.l_certified = false;
  rep.l_tail_bound = std::numeric_limits<double>::infinity();
  double lo = 16.0;
  int growing_streak = 0;
  for (int j = 0; j < 48; ++j) {
    const double hi = lo * 2.0;
    const double panel = simpson(integrand, lo, hi, 512);
    if (!std::isfinite(panel) || !std::isfinite(total)) {
      total = std::numeric_limits<double>::infinity();
      break;
    }
    total += panel;
    const double ratio = prev_panel > 0.0 ? panel / prev_panel : 0.0;
    growing_streak = ratio >= 1.0 ? growing_streak + 1 : 0;
    if (growing_streak >= 4) break;  // divergence evident
    if (ratio < 1.0 && panel <= 1e-14 * std::max(total, 1e-300)) {
      rep.l_tail_bound = panel * ratio / (1.0 - ratio);
      rep.l_certified = true;
      break;
    }
    prev_panel = panel;
    lo = hi;
  }
  rep.l_integral = total;
  return rep;
}

}  // namespace modspace
