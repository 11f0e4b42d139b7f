#include "modspace/weight_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "modspace/fitting.hpp"

namespace modspace {

namespace {
constexpr double kLogMax = 700.0;  // exp overflows just above this
}

double WeightSequence::M(int p) const {
  const double lv = log_M(p);
  if (lv > kLogMax) return std::numeric_limits<double>::infinity();
  return std::exp(lv);
}

bool WeightSequence::any_capped() const {
  return std::any_of(capped.begin(), capped.end(), [](bool b) { return b; });
}

WeightSequence associated_sequence(const WeightFunction& w, int p_max,
                                   double r_cap) {
  if (p_max < 0) throw std::invalid_argument("associated_sequence: p_max < 0");
  if (!(r_cap > 1.0)) throw std::invalid_argument("associated_sequence: r_cap <= 1");

  WeightSequence seq;
  seq.r_cap = r_cap;
  seq.alpha_zero_warning = w.index_alpha() == 0.0;
  seq.log_values.resize(static_cast<std::size_t>(p_max) + 1);
  seq.argmax_r.resize(static_cast<std::size_t>(p_max) + 1);
  seq.capped.resize(static_cast<std::size_t>(p_max) + 1, false);

  // p = 0: the integrand e^{-w(r)} is decreasing, sup at r = 0.
  seq.log_n0 = -w(0.0);

  const double r_floor = 1e-9;
  const std::vector<double> probes = log_space(r_floor, r_cap, 241);

  for (int p = 0; p <= p_max; ++p) {
    const std::size_t sp = static_cast<std::size_t>(p);
    if (p == 0) {
      seq.log_values[0] = 0.0;  // M_0 = N_0/N_0
      seq.argmax_r[0] = 0.0;
      continue;
    }
    const double dp = static_cast<double>(p);
    auto objective = [&](double r) { return dp * std::log(r) - w(r); };

    // Coarse scan, then golden-section refinement around the best probe.
    std::size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const double v = objective(probes[i]);
      if (v > best_val) {
        best_val = v;
        best = i;
      }
    }
    double arg = probes[best];
    double val = best_val;
    if (best > 0 && best + 1 < probes.size()) {
      const double t = golden_section_max(
          [&](double lr) { return objective(std::exp(lr)); },
          std::log(probes[best - 1]), std::log(probes[best + 1]), 1e-12);
      const double cand = std::exp(t);
      if (objective(cand) > val) {
        arg = cand;
        val = objective(cand);
      }
    }

    // Stationarity p = r w'(r), bisected on sign change of p/r - w'(r).
    auto slope = [&](double r) { return dp / r - w.derivative(r, 1); };
    double lo = r_floor, hi = lo;
    if (slope(lo) > 0.0) {
      bool bracketed = false;
      for (hi = std::max(1.0, 2.0 * lo); hi <= r_cap; hi *= 2.0) {
        if (slope(hi) < 0.0) {
          bracketed = true;
          break;
        }
        lo = hi;
      }
      if (bracketed) {
        for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
          const double mid = 0.5 * (lo + hi);
          (slope(mid) > 0.0 ? lo : hi) = mid;
        }
        const double cand = 0.5 * (lo + hi);
        if (objective(cand) > val) {
          arg = cand;
          val = objective(cand);
        }
      }
    }

    // The sup escapes the searched range: record the boundary value and flag.
    if (objective(r_cap) >= val || arg >= 0.99 * r_cap) {
      arg = r_cap;
      val = objective(r_cap);
      seq.capped[sp] = true;
    }

    seq.argmax_r[sp] = arg;
    seq.log_values[sp] = val - seq.log_n0;
  }

  seq.H = find_H(seq);
  return seq;
}

std::vector<int> check_log_convexity(std::span<const double> log_values) {
  std::vector<int> bad;
  for (std::size_t p = 1; p + 1 < log_values.size(); ++p)
    if (2.0 * log_values[p] >
        log_values[p - 1] + log_values[p + 1] + 1e-12)
      bad.push_back(static_cast<int>(p));
  return bad;
}

std::vector<int> check_log_convexity(const WeightSequence& seq) {
  return check_log_convexity(std::span<const double>(seq.log_values));
}

double find_H(const WeightSequence& seq, int p_limit) {
  const int pm = p_limit < 0 ? seq.p_max() : std::min(p_limit, seq.p_max());
  double log_h = 0.0;  // H >= 1 always certifiable at p = q = 0
  for (int p = 1; p <= pm; ++p)
    for (int q = p; p + q <= pm; ++q) {
      const double lg =
          (seq.log_M(p + q) - seq.log_M(p) - seq.log_M(q)) /
          static_cast<double>(p + q);
      log_h = std::max(log_h, lg);
    }
  return std::exp(log_h);
}

LowerBoundResult check_lower_bound(const WeightSequence& seq) {
  LowerBoundResult res;
  if (seq.p_max() < 4) return res;
  if (seq.any_capped()) return res;  // entries are not the true sup

  // Tail trend of log M_p / (p log p): a feasible eta must stay below its
  // minimum over the upper half of the window, else the finite-window
  // margin is an artifact of a small h.
  double eta_ceiling = std::numeric_limits<double>::infinity();
  for (int p = std::max(2, seq.p_max() / 2); p <= seq.p_max(); ++p) {
    const double dp = static_cast<double>(p);
    eta_ceiling = std::min(eta_ceiling, seq.log_M(p) / (dp * std::log(dp)));
  }

  const std::vector<double> hs = log_space(1e-6, 1.0, 25);
  for (int ei = 8; ei >= 0; --ei) {
    const double eta = 0.05 * static_cast<double>(ei + 1);
    if (!(eta < eta_ceiling)) continue;
    for (std::size_t hi = hs.size(); hi-- > 0;) {
      const double log_h = std::log(hs[hi]);
      double margin = std::numeric_limits<double>::infinity();
      for (int p = 2; p <= seq.p_max(); ++p) {
        const double dp = static_cast<double>(p);
        margin = std::min(margin, seq.log_M(p) - dp * log_h -
                                      eta * dp * std::log(dp));
      }
      if (margin >= 0.0) {
        res.found = true;
        res.eta = eta;
        res.h = hs[hi];
        res.margin = margin;
        return res;
      }
    }
  }
  return res;
}

}  // namespace modspace
