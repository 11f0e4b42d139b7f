#include "modspace/mod_norm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "modspace/fitting.hpp"
#include "modspace/transform.hpp"

namespace modspace {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double lp_norm(const SampledFunction& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : f.values) m = std::max(m, std::abs(z));
    return m;
  }
  const double dv = f.grid.cell_volume();
  // Scale by the peak so |.|^p stays in range for large p.
  double peak = 0.0;
  for (const auto& z : f.values) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& z : f.values) sum += std::pow(std::abs(z) / peak, p);
  return peak * std::pow(sum * dv, 1.0 / p);
}

std::vector<std::vector<long>> enumerate_k(int dim, long k_max) {
  std::vector<std::vector<long>> ks;
  if (dim == 1) {
    for (long k = -k_max; k <= k_max; ++k) ks.push_back({k});
  } else if (dim == 2) {
    for (long k0 = -k_max; k0 <= k_max; ++k0)
      for (long k1 = -k_max; k1 <= k_max; ++k1) ks.push_back({k0, k1});
  } else {
    throw std::invalid_argument("enumerate_k: dimension must be 1 or 2");
  }
  return ks;
}

namespace {

double euclid(const std::vector<long>& k) {
  double s = 0.0;
  for (long ki : k) s += static_cast<double>(ki) * static_cast<double>(ki);
  return std::sqrt(s);
}

long sup_norm(const std::vector<long>& k) {
  long m = 0;
  for (long ki : k) m = std::max(m, std::abs(ki));
  return m;
}

// l^q aggregate of exp(log_terms) computed in the log domain; -inf when all
// terms vanish.  q = inf takes the sup.
double log_lq_aggregate(std::vector<double> log_terms, double q) {
  double m = kNegInf;
  for (double lt : log_terms) m = std::max(m, lt);
  if (m == kNegInf) return kNegInf;
  if (std::isinf(q)) return m;
  for (double& lt : log_terms) lt = q * lt;
  return log_sum_exp(log_terms) / q;
}

}  // namespace

NormResult modulation_norm_spectrum(const SampledFunction& spectrum,
                                    const NormParams& params) {
  if (spectrum.domain != DomainTag::frequency)
    throw std::invalid_argument("modulation_norm_spectrum expects a spectrum");
  if (!(params.p >= 1.0) || !(params.q >= 1.0))
    throw std::invalid_argument("modulation_norm: p, q must be >= 1");
  if (params.k_max < 2)
    throw std::invalid_argument("modulation_norm: k_max must be >= 2");
  if (static_cast<double>(params.k_max) + 1.0 > spectrum.grid.xi_max())
    throw std::invalid_argument(
        "modulation_norm: k_max exceeds the grid frequency range");

  NormResult result;
  result.p = params.p;
  result.q = params.q;
  result.k_max = params.k_max;
  result.weight_spec = params.weight.description();
  result.boundary_warning = spectrum.boundary_warning;

  const auto ks = enumerate_k(spectrum.grid.dim, params.k_max);
  std::vector<double> log_contrib(ks.size(), kNegInf);
  parallel_for(ks.size(), [&](std::size_t i) {
    const SampledFunction piece =
        box_operator_spectrum(params.window, spectrum, ks[i]);
    const double lp = lp_norm(piece, params.p);
    if (lp > 0.0)
      log_contrib[i] = params.weight(euclid(ks[i])) + std::log(lp);
  });

  result.contributions.reserve(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i)
    result.contributions.emplace_back(
        ks[i], log_contrib[i] == kNegInf ? 0.0 : std::exp(log_contrib[i]));

  const double log_value = log_lq_aggregate(log_contrib, params.q);
  result.value = log_value == kNegInf ? 0.0 : std::exp(log_value);

  // Shell aggregates over the last three sup-norm shells drive the tail
  // bound: with decay ratio rho < 1 per shell, the omitted part is at most
  // A rho (1-rho^q)^{-1/q} (sup convention: A rho).  Pieces below the
  // double-precision transform floor are roundoff, not decay; they count
  // as absent here, and the floor itself backstops the reported tail.
  const double log_floor =
      log_value == kNegInf ? kNegInf : log_value + std::log(1e-13);
  std::vector<double> shell_logs(3, kNegInf);
  for (int si = 0; si < 3; ++si) {
    const long shell = params.k_max - 2 + si;
    std::vector<double> members;
    for (std::size_t i = 0; i < ks.size(); ++i)
      if (sup_norm(ks[i]) == shell && log_contrib[i] > log_floor)
        members.push_back(log_contrib[i]);
    shell_logs[static_cast<std::size_t>(si)] =
        log_lq_aggregate(std::move(members), params.q);
  }
  const double log_a = shell_logs[2];
  if (log_a == kNegInf) {
    result.tail_estimate = 0.0;
  } else if (shell_logs[0] == kNegInf || shell_logs[1] == kNegInf) {
    result.tail_estimate = kInf;
  } else {
    const double log_rho = std::max(shell_logs[2] - shell_logs[1],
                                    shell_logs[1] - shell_logs[0]);
    if (log_rho >= 0.0) {
      result.tail_estimate = kInf;
    } else if (std::isinf(params.q)) {
      result.tail_estimate = std::exp(log_a + log_rho);
    } else {
      const double rho_q = std::exp(params.q * log_rho);
      result.tail_estimate =
          std::exp(log_a + log_rho) / std::pow(1.0 - rho_q, 1.0 / params.q);
    }
  }
  if (log_floor != kNegInf)
    result.tail_estimate = std::max(result.tail_estimate, std::exp(log_floor));
  result.certified = result.tail_estimate <= params.tail_tol;
  return result;
}

NormResult modulation_norm(const SampledFunction& f, const NormParams& params) {
  if (f.domain != DomainTag::space)
    throw std::invalid_argument("modulation_norm expects a space-domain input");
  return modulation_norm_spectrum(forward_transform(f), params);
}

std::vector<EmbeddingRow> embedding_check(const SampledFunction& f,
                                          const WeightFunction& w,
                                          const std::vector<EmbeddingPair>& pairs,
                                          long k_max, double tail_tol) {
  const SampledFunction spectrum =
      f.domain == DomainTag::frequency ? f : forward_transform(f);
  std::vector<EmbeddingRow> rows;
  rows.reserve(pairs.size());
  for (const auto& pair : pairs) {
    NormParams a(w);
    a.p = pair.p0;
    a.q = pair.q0;
    a.k_max = k_max;
    a.tail_tol = tail_tol;
    NormParams b(w);
    b.p = pair.p1;
    b.q = pair.q1;
    b.k_max = k_max;
    b.tail_tol = tail_tol;
    const NormResult ra = modulation_norm_spectrum(spectrum, a);
    const NormResult rb = modulation_norm_spectrum(spectrum, b);
    EmbeddingRow row;
    row.pair = pair;
    row.norm0 = ra.value;
    row.norm1 = rb.value;
    row.ratio = ra.value > 0.0 ? rb.value / ra.value : 0.0;
    row.certified = ra.certified && rb.certified;
    rows.push_back(row);
  }
  return rows;
}

DerivativeGrowth derivative_growth_check(const SampledFunction& f,
                                         const WeightFunction& w,
                                         const WeightSequence& seq,
                                         int a_max) {
  const double alpha = w.index_alpha();
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument(
        "derivative_growth_check: weight index must lie in (0,1)");
  if (a_max < 0 || a_max > 12)
    throw std::invalid_argument("derivative_growth_check: a_max must be in [0,12]");
  if (seq.p_max() < a_max)
    throw std::invalid_argument("derivative_growth_check: sequence too short");

  const SampledFunction spectrum =
      f.domain == DomainTag::frequency ? f : forward_transform(f);
  double peak = 0.0;
  double xi_surv = 0.0;
  const std::size_t n = spectrum.grid.axis_size();
  for (const auto& z : spectrum.values) peak = std::max(peak, std::abs(z));
  if (spectrum.grid.dim == 1) {
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(spectrum.values[j]) >= 1e-13 * peak)
        xi_surv = std::max(xi_surv, std::abs(spectrum.grid.xi_at(j)));
  } else {
    for (std::size_t j0 = 0; j0 < n; ++j0)
      for (std::size_t j1 = 0; j1 < n; ++j1)
        if (std::abs(spectrum.values[j0 * n + j1]) >= 1e-13 * peak)
          xi_surv = std::max(
              xi_surv, std::hypot(spectrum.grid.xi_at(j0), spectrum.grid.xi_at(j1)));
  }

  DerivativeGrowth out;
  out.order_ratio.resize(static_cast<std::size_t>(a_max) + 1, 0.0);
  out.max_abs.resize(static_cast<std::size_t>(a_max) + 1, 0.0);
  for (int a = 0; a <= a_max; ++a) {
    double m_a = 0.0;
    if (spectrum.grid.dim == 1) {
      const std::array<int, 1> order{a};
      const SampledFunction d = inverse_transform(
          spectral_power_multiply(spectrum, order, 1e-13));
      m_a = lp_norm(d, kInf);
    } else {
      for (int a0 = 0; a0 <= a; ++a0) {
        const std::array<int, 2> order{a0, a - a0};
        const SampledFunction d = inverse_transform(
            spectral_power_multiply(spectrum, order, 1e-13));
        m_a = std::max(m_a, lp_norm(d, kInf));
      }
    }
    out.max_abs[static_cast<std::size_t>(a)] = m_a;
    if (m_a > 0.0)
      out.order_ratio[static_cast<std::size_t>(a)] =
          std::exp((std::log(m_a) - seq.log_M(a)) / (a + 1.0));
    out.c_star = std::max(out.c_star, out.order_ratio[static_cast<std::size_t>(a)]);
  }

  const double top = out.max_abs[static_cast<std::size_t>(a_max)];
  const double amplified =
      peak * 2.2e-16 * std::pow(xi_surv, a_max);
  out.noise_warning = top > 0.0 && amplified / top > 1e-8;
  return out;
}

}  // namespace modspace
