#include "modspace/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>

#include "modspace/corpus.hpp"
#include "modspace/fitting.hpp"
#include "modspace/inequality.hpp"
#include "modspace/mod_norm.hpp"
#include "modspace/partition.hpp"
#include "modspace/special.hpp"
#include "modspace/transform.hpp"
#include "modspace/weight_class.hpp"
#include "modspace/weight_sequence.hpp"

namespace modspace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<std::string> corpus_ids() {
  return {"gaussian:sigma=1", "gaussian:sigma=2",     "gaussian:sigma=1,m=5",
          "gevrey:mu=-1",     "gevrey:mu=-2",         "window"};
}

Grid default_grid() { return Grid::make(1, 32.0, 4096); }

//! Least-squares slope of y against x.
double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> ones(x.size(), 1.0);
  return least_squares({ones, x}, y)[1];
}

AcceptanceCheck check_partition() {
  AcceptanceCheck c{1, "partition-of-unity", false, ""};
  const Partition part = make_window();
  const double defect1 = verify_partition(part, default_grid());
  const double defect2 = verify_partition(part, Grid::make(2, 16.0, 256));
  const PartitionProperties props =
      measure_partition_properties(part, default_grid(), 3);
  const bool sums = defect1 <= 1e-12 && defect2 <= 1e-12;
  const bool support = props.support_leak == 0.0;
  const bool range = props.range_min >= 0.0 && props.range_max <= 1.0 + 1e-15;
  const bool half_cube = props.half_cube_min > 0.0;
  const bool bounded = props.max_first_difference <= 64.0 &&
                       props.max_second_difference <= 4096.0;
  const bool translates = props.translate_defect == 0.0;
  c.passed = sums && support && range && half_cube && bounded && translates;
  c.detail = "defect 1d=" + fmt(defect1) + " 2d=" + fmt(defect2) +
             ", leak=" + fmt(props.support_leak) +
             ", range=[" + fmt(props.range_min) + "," + fmt(props.range_max) +
             "], half-cube min=" + fmt(props.half_cube_min) +
             ", d1=" + fmt(props.max_first_difference) +
             ", d2=" + fmt(props.max_second_difference) +
             ", translate=" + fmt(props.translate_defect);
  return c;
}

AcceptanceCheck check_transform() {
  AcceptanceCheck c{2, "transform-fidelity", false, ""};
  const Grid grid = default_grid();
  const SampledFunction f = gaussian(0.0, 1.0, 0.0, grid);
  const SampledFunction spectrum = forward_transform(f);
  double dual_err = 0.0;
  for (std::size_t j = 0; j < grid.total(); ++j) {
    const double xi = grid.xi_at(j);
    if (std::abs(xi) > 10.0) continue;
    dual_err = std::max(dual_err, std::abs(spectrum.values[j] -
                                           std::complex<double>(
                                               std::exp(-xi * xi / 2.0))));
  }
  double trip_err = 0.0;
  for (const SampledFunction& probe :
       {f, gevrey_bump(-1.0, grid)}) {
    const SampledFunction back = inverse_transform(forward_transform(probe));
    for (std::size_t j = 0; j < probe.values.size(); ++j)
      trip_err = std::max(trip_err,
                          std::abs(back.values[j] - probe.values[j]));
  }
  c.passed = dual_err <= 1e-10 && trip_err <= 1e-12;
  c.detail = "self-duality err=" + fmt(dual_err) +
             ", round-trip err=" + fmt(trip_err);
  return c;
}

AcceptanceCheck check_weight_class() {
  AcceptanceCheck c{3, "weight-class-verdicts", false, ""};
  const ProbeGrid probes = ProbeGrid::standard(1e4);
  bool ok = true;
  std::string detail;
  struct Case {
    const char* spec;
    bool expect_pass;
    const char* subclass;
  };
  for (const Case& cs : {Case{"gevrey:s=2", true, "W1"},
                         Case{"gevrey:s=4", true, "W1"},
                         Case{"loglog", true, "W0"}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const ClassReport rep = check_conditions(parse_weight(cs.spec), probes);
    const double elapsed = seconds_since(t0);
    const bool this_ok =
        rep.all_pass() == cs.expect_pass && rep.subclass == cs.subclass &&
        elapsed < 5.0;
    ok = ok && this_ok;
    detail += std::string(cs.spec) + ": " +
              (rep.all_pass() ? "pass" : "fail") + "/" + rep.subclass +
              " idx=" + fmt(rep.index.alpha) + " t=" + fmt(elapsed) + "s; ";
  }
  {
    const ClassReport rep = check_conditions(parse_weight("bracket"), probes);
    const bool a1_fails = rep.verdicts.at("A1").verdict == Verdict::fail;
    ok = ok && a1_fails;
    detail += "bracket A1=" + to_string(rep.verdicts.at("A1").verdict) +
              " idx=" + fmt(rep.index.alpha);
  }
  c.passed = ok;
  c.detail = detail;
  return c;
}

AcceptanceCheck check_subadditivity() {
  AcceptanceCheck c{4, "subadditivity-certificates", false, ""};
  const WeightFunction w = parse_weight("gevrey:s=2");
  const IndexEstimate idx = estimate_index(w, 1e4);
  const Thresholds th =
      compute_thresholds(w, ProbeGrid::standard(1e4), idx.alpha);
  const SubadditivityCertificate cert =
      find_subadditivity_s(w, th.x_tilde, 200.0, 0.25);
  const auto violations = verify_subadditivity(w, cert, 200.0, 0.125);
  const SubadditivityCertificate control =
      find_subadditivity_s(parse_weight("linear"), 1.0, 200.0, 0.25);
  c.passed = th.valid && cert.valid && cert.s > 0.0 && violations.empty() &&
             !control.valid;
  c.detail = "s=" + fmt(cert.s) + " x~=" + fmt(cert.x_tilde) +
             " margin=" + fmt(cert.worst_margin) + ", refined violations=" +
             std::to_string(violations.size()) + ", linear control " +
             (control.valid ? "certified (unexpected)" : "rejected");
  return c;
}

AcceptanceCheck check_sequence() {
  AcceptanceCheck c{5, "associated-sequence", false, ""};
  const WeightSequence root = associated_sequence(parse_weight("sqrt"), 20);
  double rel_err = 0.0;
  for (int p = 1; p <= 20; ++p) {
    const double log_oracle = 2.0 * p * std::log(2.0 * p) - 2.0 * p;
    const double log_value = root.log_M(p) + root.log_n0;
    rel_err = std::max(rel_err, std::abs(std::expm1(log_value - log_oracle)));
  }
  const WeightSequence gev = associated_sequence(parse_weight("gevrey:s=2"), 50);
  const auto violations = check_log_convexity(gev);
  double band_lo = kInf, band_hi = 0.0;
  for (int p = 10; p <= 50; ++p) {
    const double b = std::exp((gev.log_M(p) - 2.0 * std::lgamma(p + 1.0)) / p);
    band_lo = std::min(band_lo, b);
    band_hi = std::max(band_hi, b);
  }
  c.passed = rel_err <= 1e-6 && violations.empty() && band_hi / band_lo <= 4.0;
  c.detail = "sqrt oracle rel err=" + fmt(rel_err) +
             ", convexity violations=" + std::to_string(violations.size()) +
             ", factorial band=[" + fmt(band_lo) + "," + fmt(band_hi) +
             "] spread=" + fmt(band_hi / band_lo);
  return c;
}

AcceptanceCheck check_doubling() {
  AcceptanceCheck c{6, "doubling-trend", false, ""};
  const DoublingResult gev = find_doubling_D(parse_weight("gevrey:s=2"), 1e4);
  const WeightFunction slow = parse_weight("loglog");
  const DoublingResult d4 = find_doubling_D(slow, 1e4);
  const DoublingResult d5 = find_doubling_D(slow, 1e5);
  const DoublingResult d6 = find_doubling_D(slow, 1e6);
  const bool trend = d4.found && d5.found && d6.found &&
                     d5.D >= 1.25 * d4.D && d6.D >= 1.25 * d5.D;
  c.passed = gev.found && trend;
  c.detail = "gevrey D=" + fmt(gev.D) + ", loglog D(1e4..1e6)=" + fmt(d4.D) +
             "," + fmt(d5.D) + "," + fmt(d6.D);
  return c;
}

AcceptanceCheck check_algebra() {
  AcceptanceCheck c{7, "product-norm-ratios", false, ""};
  const Grid grid = default_grid();
  const WeightFunction w = parse_weight("gevrey:s=2");
  std::vector<SampledFunction> fns;
  for (const std::string& id : corpus_ids())
    fns.push_back(make_function(FunctionSpec::parse(id), grid));

  std::vector<double> ratios;
  bool all_finite = true;
  for (std::size_t i = 0; i < fns.size(); ++i) {
    for (std::size_t j = i; j < fns.size(); ++j) {
      const AlgebraEntry e = algebra_ratio(fns[i], fns[j], 2.0, 2.0, 1.0, w);
      if (!std::isfinite(e.ratio) || e.zero_input) all_finite = false;
      ratios.push_back(e.ratio);
    }
  }
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double max_ratio = sorted.back();

  const SampledFunction scaled = make_function(
      FunctionSpec::parse("gaussian:sigma=1,amp=3"), grid);
  const AlgebraEntry base = algebra_ratio(fns[0], fns[3], 2.0, 2.0, 1.0, w);
  const AlgebraEntry resc = algebra_ratio(scaled, fns[3], 2.0, 2.0, 1.0, w);
  const double scale_drift = std::abs(resc.ratio / base.ratio - 1.0);

  c.passed = all_finite && max_ratio < 10.0 * median && scale_drift <= 1e-12;
  c.detail = "pairs=" + std::to_string(ratios.size()) +
             ", max=" + fmt(max_ratio) + ", median=" + fmt(median) +
             ", max/median=" + fmt(max_ratio / median) +
             ", rescale drift=" + fmt(scale_drift);
  return c;
}

AcceptanceCheck check_constants() {
  AcceptanceCheck c{8, "tail-constants", false, ""};
  ConstantsParams pa;
  pa.variant = ConstantVariant::rv_a;
  pa.n = 1;
  pa.q = 2.0;
  pa.alpha = 0.5;
  pa.s = 0.5;
  pa.c = 1.0;
  double prev = kInf;
  bool decreasing = true;
  double at2 = 0.0;
  for (double R : {2.0, 2.5, 3.0, 4.0, 6.0, 10.0, 20.0}) {
    const ConstantsReport rep = subalgebra_constant(pa, R);
    if (R == 2.0) at2 = rep.integral_value;
    if (rep.integral_value >= prev) decreasing = false;
    prev = rep.integral_value;
  }
  const double gamma_err = std::abs(at2 - std::tgamma(1.0 / pa.alpha));

  ConstantsParams ps;
  ps.variant = ConstantVariant::sv;
  ps.n = 1;
  ps.q = 2.0;
  ps.N = 3;
  const double c10 = subalgebra_constant(ps, 10.0).constant;
  const double c20 = subalgebra_constant(ps, 20.0).constant;
  const double sv_err = std::abs(c10 / c20 - 8.0);

  c.passed = decreasing && gamma_err <= 1e-10 && sv_err <= 8e-12;
  c.detail = std::string("integral ") +
             (decreasing ? "strictly decreasing" : "not decreasing") +
             ", |I(2) - Gamma(2)|=" + fmt(gamma_err) +
             ", sv ratio err=" + fmt(sv_err);
  return c;
}

AcceptanceCheck check_inverse_gamma() {
  AcceptanceCheck c{9, "inverse-gamma-asymptotics", false, ""};
  double beta1_err = 0.0;
  for (double u : {1e-2, 1e-4, 1e-8})
    beta1_err = std::max(
        beta1_err, std::abs(inverse_gamma_upper(1.0, u) - std::log(1.0 / u)));

  std::vector<double> us{1e-2, 1e-4, 1e-6, 1e-8};
  std::vector<double> ratios;
  for (double u : us)
    ratios.push_back(inverse_gamma_upper(2.0, u) / std::log(1.0 / u));
  bool monotone = true;
  for (std::size_t j = 0; j + 1 < ratios.size(); ++j)
    if (ratios[j + 1] >= ratios[j]) monotone = false;
  const double gap = std::abs(ratios.back() - 1.0);

  c.passed = beta1_err <= 1e-10 && monotone && gap <= 0.05;
  c.detail = "beta=1 err=" + fmt(beta1_err) + ", beta=2 ratios=" +
             fmt(ratios[0]) + "," + fmt(ratios[1]) + "," + fmt(ratios[2]) +
             "," + fmt(ratios[3]) + (monotone ? " (monotone)" : " (not monotone)") +
             ", |ratio-1|=" + fmt(gap) + " vs 0.05 target";
  return c;
}

AcceptanceCheck check_superposition() {
  AcceptanceCheck c{10, "oscillation-growth", false, ""};
  const Grid grid = Grid::make(1, 32.0, 16384);
  const SampledFunction u =
      make_function(FunctionSpec::parse("gevrey:mu=-1,height=1"), grid);
  const WeightFunction w = parse_weight("gevrey:s=2");
  const std::vector<double> lambdas{0.0, 0.01, 0.1, 0.5, 1.0,
                                    2.0, 4.0,  8.0, 16.0};
  SuperpositionReport rep =
      superposition_growth(u, w, lambdas, 2.0, 1.0, 96);

  std::vector<double> lx, ly;
  bool usable = true;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i] < 2.0) continue;
    if (rep.aliased[i] || rep.norms[i] <= 1.0) usable = false;
    if (rep.norms[i] > 1.0) {
      lx.push_back(std::log(lambdas[i]));
      ly.push_back(std::log(std::log(rep.norms[i])));
    }
  }
  const double exponent = lx.size() >= 2 ? slope_of(lx, ly) : kInf;
  const double small_drift = std::abs(rep.small_c0 / rep.small_c1 - 1.0);

  c.passed = usable && exponent <= 0.6 && small_drift <= 0.1;
  c.detail = "growth exponent=" + fmt(exponent) + " (<= 0.6), small-lambda drift=" +
             fmt(small_drift) + ", |u|=" + fmt(rep.u_norm) +
             ", report exponent=" + fmt(rep.fitted_exponent);
  return c;
}

AcceptanceCheck check_continuity() {
  AcceptanceCheck c{11, "phase-continuity", false, ""};
  const Grid grid = default_grid();
  const SampledFunction u =
      make_function(FunctionSpec::parse("gevrey:mu=-1,height=1"), grid);
  const WeightFunction w = parse_weight("gevrey:s=2");
  const std::vector<double> deltas{0.8, 0.4, 0.2, 0.1, 0.05};
  const ContinuityReport rep =
      exp_map_continuity(u, w, 1.0, deltas, 2.0, 1.0);
  const double c_drift = std::abs(rep.c_ratio - 1.0);
  c.passed = rep.monotone && c_drift <= 0.2;
  std::string moduli;
  for (double m : rep.moduli) moduli += fmt(m) + " ";
  c.detail = "moduli=" + moduli + (rep.monotone ? "(monotone)" : "(not monotone)") +
             ", linear-constant drift=" + fmt(c_drift);
  return c;
}

AcceptanceCheck check_measure() {
  AcceptanceCheck c{12, "measure-admissibility", false, ""};
  const Grid grid = default_grid();
  const SampledFunction f = gevrey_bump(-1.0, grid);
  const DecayFit fit = fourier_decay_fit(f, 0.5);
  const bool exponent_ok =
      fit.sufficient_range && std::abs(fit.fitted_exponent - 0.5) <= 0.05;

  const DecayModel model{fit.c, fit.eps, fit.fitted_exponent};
  const SampledFunction spectrum = forward_transform(f);
  const MeasureConditionReport mc = measure_condition_check(
      model, spectrum, parse_weight("gevrey:s=4"), ConstantVariant::rv_a, 1e6);
  double window_start = 0.0;
  for (std::size_t j = 0; j < mc.xi_probes.size(); ++j) {
    if (mc.xi_probes[j] >= 1e6 / 100.0) {
      window_start = mc.ratios[j];
      break;
    }
  }
  const bool to_zero = mc.trend_monotone && mc.final_ratio < 0.9 * window_start;

  c.passed = exponent_ok && to_zero && mc.zero_mean;
  c.detail = "decay exponent=" + fmt(fit.fitted_exponent) +
             " (target 0.5 +- 0.05), ratio " + fmt(window_start) + " -> " +
             fmt(mc.final_ratio) +
             (mc.trend_monotone ? " monotone" : " not monotone") +
             ", mean=" + fmt(mc.integral_value) + ", weighted integral " +
             (mc.l_certified ? "certified " : "uncertified ") +
             fmt(mc.l_integral);
  return c;
}

AcceptanceCheck check_embeddings() {
  AcceptanceCheck c{13, "exponent-monotonicity", false, ""};
  const WeightFunction w = parse_weight("gevrey:s=2");
  const std::vector<EmbeddingPair> q_pairs{
      {2.0, 1.0, 2.0, 2.0}, {2.0, 2.0, 2.0, kInf}, {1.0, 1.0, 1.0, 2.0}};
  const std::vector<EmbeddingPair> p_pairs{{1.0, 1.0, 2.0, 1.0},
                                           {2.0, 1.0, kInf, 1.0}};
  std::vector<EmbeddingPair> pairs = q_pairs;
  pairs.insert(pairs.end(), p_pairs.begin(), p_pairs.end());

  const std::vector<std::string> ids{"gaussian:sigma=1", "gevrey:mu=-1",
                                     "window"};
  bool q_mono = true, p_finite = true, stable = true;
  double p_constant = 0.0, worst_drift = 0.0;
  for (const std::string& id : ids) {
    const FunctionSpec spec = FunctionSpec::parse(id);
    const SampledFunction f = make_function(spec, default_grid());
    const SampledFunction f2 =
        make_function(spec, Grid::make(1, 32.0, 8192));
    const auto rows = embedding_check(f, w, pairs);
    const auto rows2 = embedding_check(f2, w, pairs);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const bool is_q = r < q_pairs.size();
      if (is_q && rows[r].ratio > 1.0) q_mono = false;
      if (!is_q) {
        if (!std::isfinite(rows[r].ratio)) p_finite = false;
        p_constant = std::max(p_constant, rows[r].ratio);
      }
      const double drift =
          std::abs(rows[r].ratio - rows2[r].ratio) /
          std::max(rows[r].ratio, rows2[r].ratio);
      worst_drift = std::max(worst_drift, drift);
      if (drift > 1e-3) stable = false;
    }
  }
  c.passed = q_mono && p_finite && p_constant <= 100.0 && stable;
  c.detail = std::string("q-ratios ") + (q_mono ? "<= 1" : "exceed 1") +
             ", p-constant=" + fmt(p_constant) +
             ", refinement drift=" + fmt(worst_drift);
  return c;
}

AcceptanceCheck check_windows() {
  AcceptanceCheck c{14, "window-independence", false, ""};
  const WeightFunction w = parse_weight("gevrey:s=2");
  const Partition alt = make_window(0.4);
  bool in_band = true;
  double worst = 1.0;
  for (const std::string& id : corpus_ids()) {
    const SampledFunction f =
        make_function(FunctionSpec::parse(id), default_grid());
    NormParams np(w);
    const double base = modulation_norm(f, np).value;
    np.window = alt;
    const double other = modulation_norm(f, np).value;
    const double ratio = base / other;
    if (!(ratio >= 0.1 && ratio <= 10.0)) in_band = false;
    worst = std::max(worst, std::max(ratio, 1.0 / ratio));
  }
  const SampledFunction f1 =
      make_function(FunctionSpec::parse("gaussian:sigma=1"), default_grid());
  const SampledFunction f3 = make_function(
      FunctionSpec::parse("gaussian:sigma=1,amp=3"), default_grid());
  NormParams np(w);
  const double b1 = modulation_norm(f1, np).value;
  const double b3 = modulation_norm(f3, np).value;
  np.window = alt;
  const double a1 = modulation_norm(f1, np).value;
  const double a3 = modulation_norm(f3, np).value;
  const double drift = std::abs((b3 / a3) / (b1 / a1) - 1.0);
  c.passed = in_band && drift <= 1e-12;
  c.detail = "worst ratio=" + fmt(worst) + " (band [0.1,10]), amplitude drift=" +
             fmt(drift);
  return c;
}

}  // namespace

AcceptanceCheck run_acceptance_check(int id) {
  switch (id) {
    case 1: return check_partition();
    case 2: return check_transform();
    case 3: return check_weight_class();
    case 4: return check_subadditivity();
    case 5: return check_sequence();
    case 6: return check_doubling();
    case 7: return check_algebra();
    case 8: return check_constants();
    case 9: return check_inverse_gamma();
    case 10: return check_superposition();
    case 11: return check_continuity();
    case 12: return check_measure();
    case 13: return check_embeddings();
    case 14: return check_windows();
    default: throw std::out_of_range("unknown acceptance check id");
  }
}

std::vector<AcceptanceCheck> run_acceptance_suite() {
  std::vector<AcceptanceCheck> checks;
  for (int id = 1; id <= 14; ++id) checks.push_back(run_acceptance_check(id));
  return checks;
}

std::string acceptance_line(const AcceptanceCheck& check) {
  return "c" + std::to_string(check.id) + " " + check.name + ": " +
         (check.passed ? "PASS" : "FAIL") + " [" + check.detail + "]";
}

nlohmann::json acceptance_bundle(const std::vector<AcceptanceCheck>& checks) {
  nlohmann::json items = nlohmann::json::array();
  bool all = true;
  for (const AcceptanceCheck& c : checks) {
    items.push_back(nlohmann::json{{"id", c.id},
                                   {"name", c.name},
                                   {"passed", c.passed},
                                   {"detail", c.detail}});
    all = all && c.passed;
  }
  return nlohmann::json{{"checks", std::move(items)}, {"all_passed", all}};
}

}  // namespace modspace
