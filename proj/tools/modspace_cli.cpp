#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "modspace/acceptance.hpp"
#include "modspace/corpus.hpp"
#include "modspace/inequality.hpp"
#include "modspace/mod_norm.hpp"
#include "modspace/report.hpp"
#include "modspace/transform.hpp"
#include "modspace/weight_class.hpp"
#include "modspace/weight_sequence.hpp"

namespace {

using namespace modspace;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUncertified = 2;

//! All tunables across subcommands; flags are these names in kebab-case.
struct RunConfig {
  std::string weight = "gevrey:s=2";
  std::vector<std::string> function;
  std::string p = "2", q = "1", p1 = "2", p2 = "2";
  double L = 32.0;
  std::size_t N = 4096;
  int n = 1;
  long k_max = 48;
  double tail_tol = 1e-8;
  std::vector<double> lambdas{0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  std::vector<double> R{2.0, 4.0, 6.0, 10.0, 20.0};
  std::string variant = "rv_a";
  int sv_order = 3;     // --N of the constants command
  double alpha = 0.5;
  double s = 0.5;
  double c = 1.0;
  double delta = 0.1;
  std::string output;
  std::string format = "json";
};

double parse_real(const std::string& text) {
  if (text == "inf" || text == "infinity")
    return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double value = std::stod(text, &used);
  if (used != text.size())
    throw CLI::ValidationError("not a real number: " + text);
  return value;
}

ConstantVariant parse_variant(const std::string& text) {
  if (text == "rv_a") return ConstantVariant::rv_a;
  if (text == "rv_b") return ConstantVariant::rv_b;
  if (text == "sv") return ConstantVariant::sv;
  throw CLI::ValidationError("unknown variant: " + text);
}

Grid config_grid(const RunConfig& cfg) {
  return Grid::make(cfg.n, cfg.L, cfg.N);
}

//! Expected spectral decay exponent kappa of a corpus element, from its
//! smoothness class: Gaussian 2, compact bump mu -> mu/(mu-1), window 1/2.
double model_exponent_for(const FunctionSpec& spec) {
  switch (spec.kind) {
    case FunctionKind::gaussian: return 2.0;
    case FunctionKind::gevrey_bump: return spec.mu / (spec.mu - 1.0);
    case FunctionKind::window: return 0.5;
  }
  return 1.0;
}

std::string default_output(const std::string& command,
                           const std::string& format) {
  return command + (format == "csv" ? ".csv" : ".json");
}

void emit(const RunConfig& cfg, const std::string& command,
          const json& payload) {
  json doc = report_envelope(command);
  doc["report"] = payload;
  const std::string path =
      cfg.output.empty() ? default_output(command, "json") : cfg.output;
  write_json_report(path, doc);
}

int cmd_validate_weight(const RunConfig& cfg) {
  const WeightFunction w = parse_weight(cfg.weight);
  const ClassReport rep = check_conditions(w, ProbeGrid::standard(1e4));
  emit(cfg, "validate-weight", json(rep));
  bool inconclusive = false;
  for (const auto& [key, res] : rep.verdicts)
    if (res.verdict == Verdict::inconclusive) inconclusive = true;
  std::printf("weight %s: %s, subclass %s, index %.4g\n", cfg.weight.c_str(),
              rep.all_pass() ? "all conditions pass" : "conditions fail",
              rep.subclass.c_str(), rep.index.alpha);
  return inconclusive ? kExitUncertified : kExitOk;
}

int cmd_assoc_seq(const RunConfig& cfg) {
  const WeightFunction w = parse_weight(cfg.weight);
  const double p_real = parse_real(cfg.p);
  const int p_max = p_real == 2.0 ? 50 : static_cast<int>(p_real);
  const WeightSequence seq = associated_sequence(w, p_max);
  const auto violations = check_log_convexity(seq);
  const LowerBoundResult lower = check_lower_bound(seq);
  if (cfg.format == "csv") {
    std::vector<std::vector<double>> rows;
    for (int p = 0; p <= seq.p_max(); ++p)
      rows.push_back({static_cast<double>(p), seq.log_M(p),
                      seq.argmax_r[static_cast<std::size_t>(p)]});
    write_csv_report(cfg.output.empty() ? default_output("assoc-seq", "csv")
                                        : cfg.output,
                     {"p", "log_Mp", "argmax_r"}, rows);
  } else {
    json payload{{"sequence", seq},
                 {"convexity_violations", violations},
                 {"lower_bound", lower}};
    emit(cfg, "assoc-seq", payload);
  }
  std::printf("sequence to p=%d: H=%.4g, %zu convexity violations%s\n",
              seq.p_max(), seq.H, violations.size(),
              seq.any_capped() ? ", capped entries (lower estimates)" : "");
  return seq.any_capped() ? kExitUncertified : kExitOk;
}

int cmd_find_s(const RunConfig& cfg) {
  const WeightFunction w = parse_weight(cfg.weight);
  const IndexEstimate idx = estimate_index(w, 1e4);
  const Thresholds th =
      compute_thresholds(w, ProbeGrid::standard(1e4), idx.alpha);
  const double x_tilde = th.valid ? th.x_tilde : 1.0;
  const SubadditivityCertificate cert =
      find_subadditivity_s(w, x_tilde, 200.0, 0.25);
  json payload{{"certificate", cert}, {"thresholds", th}, {"index", idx}};
  emit(cfg, "find-s", payload);
  if (cert.valid)
    std::printf("s=%.4g certified on [0,%g]^2 at step %g (x~=%.4g)\n", cert.s,
                cert.domain_bound, cert.grid_step, cert.x_tilde);
  else
    std::printf("no positive s certifies; violation near (%.4g, %.4g)\n",
                cert.violation_x, cert.violation_y);
  return kExitOk;
}

int cmd_norm(const RunConfig& cfg) {
  if (cfg.function.size() != 1)
    throw CLI::ValidationError("norm needs exactly one --function");
  const SampledFunction f =
      make_function(FunctionSpec::parse(cfg.function[0]), config_grid(cfg));
  NormParams np(parse_weight(cfg.weight));
  np.p = parse_real(cfg.p);
  np.q = parse_real(cfg.q);
  np.k_max = cfg.k_max;
  np.tail_tol = cfg.tail_tol;
  const NormResult res = modulation_norm(f, np);
  emit(cfg, "norm", json(res));
  std::printf("norm=%.12g tail<=%.3g certified=%s\n", res.value,
              res.tail_estimate, res.certified ? "true" : "false");
  return res.certified && !res.boundary_warning ? kExitOk : kExitUncertified;
}

int cmd_algebra(const RunConfig& cfg) {
  if (cfg.function.size() != 2)
    throw CLI::ValidationError("algebra needs exactly two --function ids");
  const double p1 = parse_real(cfg.p1), p2 = parse_real(cfg.p2);
  const double inv = (std::isinf(p1) ? 0.0 : 1.0 / p1) +
                     (std::isinf(p2) ? 0.0 : 1.0 / p2);
  if (cfg.p != "2") {  // given explicitly: must match the factor exponents
    const double p = parse_real(cfg.p);
    const double expect = inv == 0.0 ? std::numeric_limits<double>::infinity()
                                     : 1.0 / inv;
    if (std::abs(p - expect) > 1e-9 * std::max(1.0, expect))
      throw CLI::ValidationError("p must satisfy 1/p = 1/p1 + 1/p2");
  }
  const Grid grid = config_grid(cfg);
  const SampledFunction f =
      make_function(FunctionSpec::parse(cfg.function[0]), grid);
  const SampledFunction g =
      make_function(FunctionSpec::parse(cfg.function[1]), grid);
  AlgebraEntry entry =
      algebra_ratio(f, g, p1, p2, parse_real(cfg.q), parse_weight(cfg.weight),
                    cfg.k_max, cfg.tail_tol);
  entry.f_id = cfg.function[0];
  entry.g_id = cfg.function[1];
  emit(cfg, "algebra", json(entry));
  std::printf("|fg| / (|f| |g|) = %.6g certified=%s\n", entry.ratio,
              entry.certified ? "true" : "false");
  return entry.certified ? kExitOk : kExitUncertified;
}

int cmd_superposition(const RunConfig& cfg) {
  if (cfg.function.size() != 1)
    throw CLI::ValidationError("superposition needs exactly one --function");
  const SampledFunction u =
      make_function(FunctionSpec::parse(cfg.function[0]), config_grid(cfg));
  SuperpositionReport rep = superposition_growth(
      u, parse_weight(cfg.weight), cfg.lambdas, parse_real(cfg.p),
      parse_real(cfg.q), cfg.k_max, cfg.tail_tol);
  rep.u_id = cfg.function[0];
  if (cfg.format == "csv") {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i)
      rows.push_back({rep.lambdas[i], rep.norms[i]});
    write_csv_report(cfg.output.empty()
                         ? default_output("superposition", "csv")
                         : cfg.output,
                     {"lambda", "norm"}, rows);
  } else {
    emit(cfg, "superposition", json(rep));
  }
  bool flagged = false;
  for (std::size_t i = 0; i < rep.lambdas.size(); ++i)
    if (rep.aliased[i] || !rep.certified[i]) flagged = true;
  std::printf("growth exponent=%.4g, small-lambda c=%.6g/%.6g%s\n",
              rep.fitted_exponent, rep.small_c0, rep.small_c1,
              flagged ? ", flags raised" : "");
  return flagged ? kExitUncertified : kExitOk;
}

int cmd_constants(const RunConfig& cfg) {
  ConstantsParams params;
  params.variant = parse_variant(cfg.variant);
  params.n = cfg.n;
  params.q = parse_real(cfg.q);
  params.alpha = cfg.alpha;
  params.s = cfg.s;
  params.c = cfg.c;
  params.delta = cfg.delta;
  params.N = cfg.sv_order;
  std::vector<ConstantsReport> reports;
  for (double R : cfg.R) reports.push_back(subalgebra_constant(params, R));
  if (cfg.format == "csv") {
    std::vector<std::vector<double>> rows;
    for (const ConstantsReport& r : reports)
      rows.push_back({r.R, r.constant});
    write_csv_report(cfg.output.empty() ? default_output("constants", "csv")
                                        : cfg.output,
                     {"R", "constant"}, rows);
  } else {
    emit(cfg, "constants", json(reports));
  }
  std::printf("%zu constants, %s variant, last=%.6g at R=%.4g\n",
              reports.size(), cfg.variant.c_str(), reports.back().constant,
              reports.back().R);
  return kExitOk;
}

int cmd_decay(const RunConfig& cfg, bool with_conditions) {
  if (cfg.function.size() != 1)
    throw CLI::ValidationError("decay needs exactly one --function");
  const FunctionSpec spec = FunctionSpec::parse(cfg.function[0]);
  const SampledFunction f = make_function(spec, config_grid(cfg));
  const DecayFit fit = fourier_decay_fit(f, model_exponent_for(spec));
  json payload{{"fit", fit}};
  bool uncertified = !fit.sufficient_range;
  if (with_conditions) {
    const DecayModel model{fit.c, fit.eps, fit.fitted_exponent};
    const MeasureConditionReport mc = measure_condition_check(
        model, forward_transform(f), parse_weight(cfg.weight),
        parse_variant(cfg.variant), 1e6);
    payload["measure_conditions"] = mc;
    uncertified = uncertified || !mc.l_certified || !mc.trend_monotone;
  }
  emit(cfg, "decay", payload);
  std::printf("fitted |F f| ~ %.4g exp(-%.4g |xi|^%.4g) on [%.3g, %.3g]\n",
              fit.c, fit.eps, fit.fitted_exponent, fit.xi_lo, fit.xi_hi);
  return uncertified ? kExitUncertified : kExitOk;
}

int cmd_report_all(const RunConfig& cfg) {
  const auto checks = run_acceptance_suite();
  json doc = report_envelope("report-all");
  doc["report"] = acceptance_bundle(checks);
  write_json_report(
      cfg.output.empty() ? default_output("report-all", "json") : cfg.output,
      doc);
  bool all = true;
  for (const AcceptanceCheck& c : checks) {
    std::printf("%s\n", acceptance_line(c).c_str());
    all = all && c.passed;
  }
  std::printf("%s\n", all ? "all checks passed" : "some checks failed");
  return all ? kExitOk : kExitUncertified;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool with_grid) {
  sub->add_option("--weight", cfg.weight, "weight mini-language spec");
  sub->add_option("--output", cfg.output, "report file path");
  sub->add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  if (with_grid) {
    sub->add_option("--L", cfg.L, "grid half width");
    sub->add_option("--N", cfg.N, "samples per axis (power of two)");
    sub->add_option("--n", cfg.n, "dimension (1 or 2)");
    sub->add_option("--k-max", cfg.k_max, "frequency truncation radius");
    sub->add_option("--tail-tol", cfg.tail_tol, "tail certification bound");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted frequency-decomposition norm toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* validate = app.add_subcommand(
      "validate-weight", "check the admissibility conditions of a weight");
  add_common(validate, cfg, false);

  CLI::App* assoc = app.add_subcommand(
      "assoc-seq", "associated sequence sup_r r^p e^{-w(r)} and its checks");
  add_common(assoc, cfg, false);
  assoc->add_option("--p", cfg.p, "largest order (default 50)");

  CLI::App* finds = app.add_subcommand(
      "find-s", "largest certified subadditivity gain of a weight");
  add_common(finds, cfg, false);

  CLI::App* norm = app.add_subcommand(
      "norm", "weighted decomposition norm of a corpus function");
  add_common(norm, cfg, true);
  norm->add_option("--function", cfg.function, "corpus function id");
  norm->add_option("--p", cfg.p, "inner Lebesgue exponent");
  norm->add_option("--q", cfg.q, "outer summation exponent");

  CLI::App* algebra = app.add_subcommand(
      "algebra", "product norm against the factor norms");
  add_common(algebra, cfg, true);
  algebra->add_option("--function", cfg.function, "two corpus ids");
  algebra->add_option("--p", cfg.p, "product exponent (must match p1, p2)");
  algebra->add_option("--q", cfg.q, "outer exponent");
  algebra->add_option("--p1", cfg.p1, "first factor exponent");
  algebra->add_option("--p2", cfg.p2, "second factor exponent");

  CLI::App* super = app.add_subcommand(
      "superposition", "norm growth of e^{i lambda u} - 1 over a schedule");
  add_common(super, cfg, true);
  super->add_option("--function", cfg.function, "corpus id of u");
  super->add_option("--p", cfg.p, "inner exponent, strictly inside (1, inf)");
  super->add_option("--q", cfg.q, "outer exponent");
  super->add_option("--lambdas", cfg.lambdas, "lambda schedule")
      ->delimiter(',');

  CLI::App* constants = app.add_subcommand(
      "constants", "high-frequency multiplication constants");
  add_common(constants, cfg, false);
  constants->add_option("--variant", cfg.variant, "rv_a, rv_b or sv");
  constants->add_option("--N", cfg.sv_order, "sv decay order");
  constants->add_option("--R", cfg.R, "cube radii")->delimiter(',');
  constants->add_option("--q", cfg.q, "norm exponent (dual enters the bound)");
  constants->add_option("--alpha", cfg.alpha, "weight index");
  constants->add_option("--s", cfg.s, "subadditivity gain");
  constants->add_option("--c", cfg.c, "rv_a scale");
  constants->add_option("--delta", cfg.delta, "rv_b index reduction");
  constants->add_option("--n", cfg.n, "dimension");

  CLI::App* decay = app.add_subcommand(
      "decay", "spectral decay fit, optional admissibility conditions");
  add_common(decay, cfg, true);
  decay->add_option("--function", cfg.function, "corpus function id");
  decay->add_option("--variant", cfg.variant, "condition variant");

  CLI::App* report = app.add_subcommand(
      "report-all", "run the whole self-check suite and bundle the results");
  add_common(report, cfg, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (validate->parsed()) return cmd_validate_weight(cfg);
    if (assoc->parsed()) return cmd_assoc_seq(cfg);
    if (finds->parsed()) return cmd_find_s(cfg);
    if (norm->parsed()) return cmd_norm(cfg);
    if (algebra->parsed()) return cmd_algebra(cfg);
    if (super->parsed()) return cmd_superposition(cfg);
    if (constants->parsed()) return cmd_constants(cfg);
    if (decay->parsed()) return cmd_decay(cfg, decay->count("--weight") > 0);
    if (report->parsed()) return cmd_report_all(cfg);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
