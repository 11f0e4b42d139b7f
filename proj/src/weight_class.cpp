#include "modspace/weight_class.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "modspace/fitting.hpp"

namespace modspace {

ProbeGrid ProbeGrid::standard(double t_max, int per_decade) {
  if (!(t_max >= 10.0)) throw std::invalid_argument("probe grid: t_max too small");
  ProbeGrid g;
  g.t_max = t_max;
  for (int i = 0; i <= 64; ++i)
    g.points.push_back(static_cast<double>(i) / 64.0);
  const int decades_count =
      static_cast<int>(std::ceil(std::log10(t_max) * per_decade));
  for (int i = 1; i <= decades_count; ++i)
    g.points.push_back(std::pow(10.0, static_cast<double>(i) / per_decade));
  std::sort(g.points.begin(), g.points.end());
  g.points.erase(std::unique(g.points.begin(), g.points.end()), g.points.end());
  if (g.points.back() < t_max) g.points.push_back(t_max);
  return g;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

double growth_ratio(const WeightFunction& w, double x) {
  return x * w.derivative(x, 1) / w(x);
}

}  // namespace

IndexEstimate estimate_index(const WeightFunction& w, double t_max) {
  if (!(t_max >= 1e3)) throw std::invalid_argument("estimate_index: t_max < 1e3");
  const std::vector<double> xs = log_space(t_max / 10.0, t_max, 33);
  std::vector<double> ones, inv_t, inv_tlogt, ys;
  for (double x : xs) {
    const double t = std::log(x);
    ones.push_back(1.0);
    inv_t.push_back(1.0 / t);
    inv_tlogt.push_back(1.0 / (t * std::log(t)));
    ys.push_back(growth_ratio(w, x));
  }
  const auto coef = least_squares({ones, inv_t, inv_tlogt}, ys);

  IndexEstimate est;
  est.alpha = coef[0];
  double max_resid = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fit = coef[0] + coef[1] * inv_t[i] + coef[2] * inv_tlogt[i];
    max_resid = std::max(max_resid, std::abs(ys[i] - fit));
  }
  // Residual plus the part of the correction terms still alive at t_max:
  // how far the curve can still drift past the window.
  const double t_end = std::log(t_max);
  est.uncertainty = max_resid + 0.1 * (std::abs(coef[1]) / t_end +
                                       std::abs(coef[2]) / (t_end * std::log(t_end)));
  if (est.alpha < 0.0 && est.alpha > -0.02) est.alpha = 0.0;
  return est;
}

Thresholds compute_thresholds(const WeightFunction& w, const ProbeGrid& probes,
                              double alpha) {
  Thresholds th;

  // tau: last sign change of w'' on the probes, refined by bisection.
  double tau = 0.0;
  double prev_x = 0.0;
  double prev_sign = 0.0;
  for (double x : probes.points) {
    if (x == 0.0) continue;
    const double d2 = w.derivative(x, 2);
    const double sign = d2 > 0.0 ? 1.0 : (d2 < 0.0 ? -1.0 : 0.0);
    if (prev_sign != 0.0 && sign != 0.0 && sign != prev_sign) {
      double lo = prev_x, hi = x;
      for (int it = 0; it < 100 && hi - lo > 1e-10 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double dm = w.derivative(mid, 2);
        if ((dm > 0.0 ? 1.0 : -1.0) == prev_sign)
          lo = mid;
        else
          hi = mid;
      }
      tau = 0.5 * (lo + hi);
    }
    if (sign != 0.0) {
      prev_sign = sign;
      prev_x = x;
    }
  }
  th.tau = tau;

  // x0: ratio stays under the midpoint between alpha and 1 from here on.
  const double theta = 0.5 * (1.0 + std::clamp(alpha, 0.0, 1.0));
  std::vector<double> ratios(probes.points.size(), 0.0);
  for (std::size_t i = 0; i < probes.points.size(); ++i) {
    const double x = probes.points[i];
    ratios[i] = x == 0.0 ? 0.0 : std::abs(growth_ratio(w, x));
  }
  std::size_t first_ok = probes.points.size();
  double running_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = probes.points.size(); i-- > 0;) {
    running_max = std::max(running_max, ratios[i]);
    if (running_max < theta) first_ok = i;
  }
  if (first_ok == probes.points.size()) {
    th.valid = false;
    return th;
  }
  th.x0 = probes.points[first_ok];

  // x1: from here x/w(x) is nondecreasing and dominates every earlier probe.
  std::vector<double> pvals(probes.points.size());
  for (std::size_t i = 0; i < probes.points.size(); ++i)
    pvals[i] = probes.points[i] / w(probes.points[i]);
  std::size_t x1_idx = probes.points.size();
  bool suffix_monotone = true;
  double prefix_max = 0.0;
  std::vector<double> prefix(probes.points.size());
  for (std::size_t i = 0; i < probes.points.size(); ++i) {
    prefix[i] = prefix_max;
    prefix_max = std::max(prefix_max, pvals[i]);
  }
  for (std::size_t i = probes.points.size(); i-- > first_ok;) {
    if (i + 1 < probes.points.size() && pvals[i] > pvals[i + 1] + 1e-12)
      suffix_monotone = false;
    if (suffix_monotone && pvals[i] >= prefix[i] - 1e-12) x1_idx = i;
  }
  if (x1_idx == probes.points.size()) {
    th.valid = false;
    return th;
  }
  th.x1 = probes.points[x1_idx];
  th.x_tilde = std::max({th.tau, 2.0 * th.x0, 2.0 * th.x1, 1.0});
  th.valid = true;
  return th;
}

bool ClassReport::all_pass() const {
  for (const auto& [label, res] : verdicts)
    if (res.verdict != Verdict::pass) return false;
  return true;
}

ClassReport check_conditions(const WeightFunction& w, const ProbeGrid& probes) {
  ClassReport report;
  const auto& xs = probes.points;

  // A1: regular variation index strictly below 1.
  report.index = estimate_index(w, probes.t_max);
  {
    ConditionResult r;
    r.witness = probes.t_max;
    if (report.index.alpha >= 0.99) {
      r.verdict = Verdict::fail;
      r.note = "index at or above 1";
    } else if (report.index.uncertainty > 0.05 || report.index.alpha < 0.0) {
      r.verdict = Verdict::inconclusive;
      r.note = "index fit did not settle";
    } else {
      r.verdict = Verdict::pass;
    }
    report.verdicts["A1"] = r;
  }

  // A2: values at least 1 everywhere.
  {
    ConditionResult r;
    r.verdict = Verdict::pass;
    for (double x : xs) {
      if (w(x) < 1.0 - 1e-12) {
        r.verdict = Verdict::fail;
        r.witness = x;
        r.note = "value below 1";
        break;
      }
    }
    report.verdicts["A2"] = r;
  }

  // A3: strictly increasing between consecutive probes.
  {
    ConditionResult r;
    r.verdict = Verdict::pass;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double a = w(xs[i]), b = w(xs[i + 1]);
      if (b < a - 1e-12) {
        r.verdict = Verdict::fail;
        r.witness = xs[i + 1];
        r.note = "decrease between probes";
        break;
      }
      if (b <= a && r.verdict == Verdict::pass) {
        r.verdict = Verdict::inconclusive;
        r.witness = xs[i + 1];
        r.note = "flat at probe resolution";
      }
    }
    report.verdicts["A3"] = r;
  }

  // A4: growth beyond every multiple of log t.  Direct probes of
  // w(t) - M log t only certify small M on a finite window, so the verdict
  // comes from the trend of w(t)/log t over the last two decades; per-M
  // status lines are recorded in the note.
  {
    ConditionResult r;
    std::vector<double> tail;
    for (double x : xs)
      if (x >= probes.t_max / 100.0) tail.push_back(x);
    bool ratio_increasing = true;
    for (std::size_t i = 0; i + 1 < tail.size(); ++i) {
      const double a = w(tail[i]) / std::log(tail[i]);
      const double b = w(tail[i + 1]) / std::log(tail[i + 1]);
      if (b <= a + 1e-13) {
        ratio_increasing = false;
        r.witness = tail[i + 1];
        break;
      }
    }
    std::string per_m;
    for (double M : {1.0, 10.0, 100.0}) {
      bool direct = true;
      for (std::size_t i = 0; i + 1 < tail.size(); ++i)
        if (w(tail[i + 1]) - M * std::log(tail[i + 1]) <=
            w(tail[i]) - M * std::log(tail[i]))
          direct = false;
      per_m += (per_m.empty() ? "M=" : "; M=") + std::to_string(static_cast<int>(M)) +
               (direct ? " direct" : " trend");
    }
    r.note = per_m;
    r.verdict = ratio_increasing ? Verdict::pass : Verdict::fail;
    report.verdicts["A4"] = r;
  }

  // A5: derivative vanishes at 0+.
  {
    ConditionResult r;
    double h = 0.1, last = std::abs(w.derivative(0.1, 1));
    bool decreasing = true;
    for (h = 0.01; h >= 1e-7 / 2.0; h /= 10.0) {
      const double d = std::abs(w.derivative(h, 1));
      if (d > last + 1e-12) decreasing = false;
      last = d;
    }
    r.witness = 1e-7;
    if (last < 0.01 && decreasing)
      r.verdict = Verdict::pass;
    else if (last >= 0.01)
      r.verdict = Verdict::fail, r.note = "derivative does not vanish at 0+";
    else
      r.verdict = Verdict::inconclusive, r.note = "derivative trend unsettled";
    report.verdicts["A5"] = r;
  }

  // A6: finitely many inflections; tau the last one.
  {
    ConditionResult r;
    int changes = 0;
    double prev_sign = 0.0, last_change = 0.0, last_x = 0.0;
    for (double x : xs) {
      if (x == 0.0) continue;
      const double d2 = w.derivative(x, 2);
      const double sign = d2 > 0.0 ? 1.0 : (d2 < 0.0 ? -1.0 : 0.0);
      if (prev_sign != 0.0 && sign != 0.0 && sign != prev_sign) {
        ++changes;
        last_change = x;
      }
      if (sign != 0.0) prev_sign = sign;
      last_x = x;
    }
    r.witness = last_change;
    if (changes > 0 && last_change >= probes.t_max / 10.0) {
      r.verdict = Verdict::inconclusive;
      r.note = "sign still changing near the probe horizon";
    } else {
      r.verdict = Verdict::pass;
      r.note = std::to_string(changes) + " sign changes";
    }
    (void)last_x;
    report.verdicts["A6"] = r;
  }

  const double alpha = std::max(report.index.alpha, 0.0);
  report.thresholds = compute_thresholds(w, probes, alpha);
  if (!report.thresholds.valid &&
      report.verdicts["A1"].verdict == Verdict::pass) {
    report.verdicts["A1"].verdict = Verdict::inconclusive;
    report.verdicts["A1"].note = "no growth-ratio threshold below t_max";
  }
  report.subclass = alpha >= 0.05 ? "W1" : "W0";
  return report;
}

namespace {

// Margin of the split inequality at (x, y); nonnegative means it holds.
inline double split_margin(double wx, double wy, double wd, double s) {
  return wy + wd - s * std::min(wy, wd) - wx;
}

struct ScanHit {
  bool violated = false;
  double x = 0.0, y = 0.0, margin = 0.0;
  double worst = std::numeric_limits<double>::infinity();
};

// Scans lattice points (i h, j h) plus dense boundary lines.  The weight is
// precomputed on lattice multiples so each lattice point costs three table
// reads; |x - y| of lattice points is again a lattice point.
ScanHit scan_region(const WeightFunction& w, double s, double x_tilde,
                    double X, double h) {
  ScanHit hit;
  const std::size_t count = static_cast<std::size_t>(std::floor(X / h)) + 1;
  std::vector<double> table(count);
  for (std::size_t i = 0; i < count; ++i)
    table[i] = w(static_cast<double>(i) * h);

  auto consider = [&](double x, double y, double margin) {
    if (margin < hit.worst) {
      hit.worst = margin;
      hit.x = x;
      hit.y = y;
    }
    if (margin < -1e-12) {
      hit.violated = true;
      hit.margin = margin;
    }
  };

  for (std::size_t i = 0; i < count && !hit.violated; ++i) {
    const double x = static_cast<double>(i) * h;
    for (std::size_t j = 0; j < count; ++j) {
      const double y = static_cast<double>(j) * h;
      if (!subadditivity_admissible(x, y, x_tilde)) continue;
      const std::size_t d = i > j ? i - j : j - i;
      consider(x, y, split_margin(table[i], table[j], table[d], s));
      if (hit.violated) break;
    }
  }
  if (hit.violated) return hit;

  // Boundary lines sampled off-lattice: x = 2 x_tilde, y = x/2, y = x, y = 0.
  const double fine = h / 16.0;
  auto eval_point = [&](double x, double y) {
    if (x < 0.0 || y < 0.0 || x > X || y > X) return;
    if (!subadditivity_admissible(x, y, x_tilde)) return;
    consider(x, y, split_margin(w(x), w(y), w(std::abs(x - y)), s));
  };
  for (double t = 0.0; t <= X && !hit.violated; t += fine) {
    eval_point(2.0 * x_tilde, t);
    eval_point(t, 0.5 * t);
    eval_point(t, t);
    eval_point(t, 0.0);
  }
  return hit;
}

}  // namespace

SubadditivityCertificate find_subadditivity_s(const WeightFunction& w,
                                              double x_tilde, double X,
                                              double h) {
  if (!(X >= 4.0 * x_tilde))
    throw std::invalid_argument("find_subadditivity_s: X < 4 x_tilde");
  if (!(h <= 0.5) || !(h > 0.0))
    throw std::invalid_argument("find_subadditivity_s: require 0 < h <= 0.5");

  SubadditivityCertificate cert;
  cert.x_tilde = x_tilde;
  cert.domain_bound = X;
  cert.grid_step = h;

  const ScanHit at_min = scan_region(w, 1e-3, x_tilde, X, h);
  if (at_min.violated) {
    cert.valid = false;
    cert.violation_x = at_min.x;
    cert.violation_y = at_min.y;
    cert.worst_margin = at_min.margin;
    return cert;
  }

  double lo = 1e-3, hi = 1.0;  // holds at lo; search the largest holding s
  if (!scan_region(w, hi, x_tilde, X, h).violated) {
    lo = hi;
  } else {
    while (hi - lo > 1e-3) {
      const double mid = 0.5 * (lo + hi);
      if (scan_region(w, mid, x_tilde, X, h).violated)
        hi = mid;
      else
        lo = mid;
    }
  }
  const ScanHit final_hit = scan_region(w, lo, x_tilde, X, h);
  cert.s = lo;
  cert.valid = true;
  cert.worst_margin = final_hit.worst;
  return cert;
}

std::vector<SubadditivityViolation> verify_subadditivity(
    const WeightFunction& w, const SubadditivityCertificate& cert, double X2,
    double h2) {
  if (!cert.valid)
    throw std::invalid_argument("verify_subadditivity: certificate invalid");
  std::vector<SubadditivityViolation> out;
  const std::size_t count = static_cast<std::size_t>(std::floor(X2 / h2)) + 1;
  std::vector<double> table(count);
  for (std::size_t i = 0; i < count; ++i)
    table[i] = w(static_cast<double>(i) * h2);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = static_cast<double>(i) * h2;
    for (std::size_t j = 0; j < count; ++j) {
      const double y = static_cast<double>(j) * h2;
      if (!subadditivity_admissible(x, y, cert.x_tilde)) continue;
      const std::size_t d = i > j ? i - j : j - i;
      const double m = split_margin(table[i], table[j], table[d], cert.s);
      if (m < -1e-12) out.push_back({x, y, m});
    }
  }
  return out;
}

DoublingResult find_doubling_D(const WeightFunction& w, double t_max) {
  if (!(t_max >= 1e4 - 1e-9))
    throw std::invalid_argument("find_doubling_D: t_max < 1e4");
  const ProbeGrid probes = ProbeGrid::standard(t_max);
  auto holds = [&](double D) {
    for (double t : probes.points)
      if (2.0 * w(t) > w(D * t) + D + 1e-12) return false;
    return true;
  };
  DoublingResult res;
  double hi = 0.0, lo = 0.0;
  for (int e = 0; e <= 20; ++e) {
    const double D = std::pow(2.0, e);
    if (holds(D)) {
      hi = D;
      break;
    }
    lo = D;
  }
  if (hi == 0.0) return res;
  if (hi == 1.0) {  // D = 1 already holds; 1 is the smallest admissible D
    res.found = true;
    res.D = 1.0;
    return res;
  }
  while (hi - lo > 1e-2) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? hi : lo) = mid;
  }
  res.found = true;
  res.D = hi;
  return res;
}

SeriesProxy series_convergence_proxy(const WeightFunction& w, double s,
                                     double q_prime, int n, int k_max) {
  if (n != 1 && n != 2)
    throw std::invalid_argument("series proxy: dimension must be 1 or 2");
  if (!(s > 0.0) || !(q_prime > 0.0))
    throw std::invalid_argument("series proxy: s and q' must be positive");
  SeriesProxy proxy;
  for (int K = 0; K <= k_max; ++K) {
    double inc = 0.0;
    if (n == 1) {
      const double term = std::exp(-s * q_prime * w(static_cast<double>(K)));
      inc = K == 0 ? term : 2.0 * term;
    } else {
      if (K == 0) {
        inc = std::exp(-s * q_prime * w(0.0));
      } else {
        // Shell |m|_inf = K: edges x = +-K (2K+1 points each) and
        // y = +-K excluding corners (2K-1 each); radii coincide pairwise.
        for (int m = -K; m <= K; ++m) {
          const double term = std::exp(
              -s * q_prime *
              w(std::hypot(static_cast<double>(K), static_cast<double>(m))));
          inc += 2.0 * term;
          if (std::abs(m) != K) inc += 2.0 * term;
        }
      }
    }
    proxy.shell_increments.push_back(inc);
  }
  for (std::size_t i = 1; i < proxy.shell_increments.size(); ++i) {
    const double a = proxy.shell_increments[i - 1];
    const double b = proxy.shell_increments[i];
    proxy.ratios.push_back(a > 0.0 ? b / a : 0.0);
  }
  // Evidence: over the last half of the shells the ratios sit below 1 and
  // do not increase beyond jitter.
  bool ok = proxy.ratios.size() >= 4;
  for (std::size_t i = proxy.ratios.size() / 2; ok && i < proxy.ratios.size(); ++i) {
    if (proxy.ratios[i] >= 1.0) ok = false;
    if (i > proxy.ratios.size() / 2 &&
        proxy.ratios[i] > proxy.ratios[i - 1] + 0.05)
      ok = false;
  }
  proxy.geometric = ok;
  return proxy;
}

}  // namespace modspace
