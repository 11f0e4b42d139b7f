#include "modspace/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace modspace {

using nlohmann::json;

void to_json(json& j, const ConditionResult& v) {
  j = json{{"verdict", to_string(v.verdict)},
           {"witness", v.witness},
           {"note", v.note}};
}

void to_json(json& j, const IndexEstimate& v) {
  j = json{{"alpha", v.alpha}, {"uncertainty", v.uncertainty}};
}

void to_json(json& j, const Thresholds& v) {
  j = json{{"tau", v.tau},
           {"x0", v.x0},
           {"x1", v.x1},
           {"x_tilde", v.x_tilde},
           {"valid", v.valid}};
}

void to_json(json& j, const ClassReport& v) {
  j = json{{"verdicts", v.verdicts},
           {"index", v.index},
           {"thresholds", v.thresholds},
           {"subclass", v.subclass},
           {"all_pass", v.all_pass()}};
}

void to_json(json& j, const SubadditivityCertificate& v) {
  j = json{{"s", v.s},
           {"x_tilde", v.x_tilde},
           {"domain_bound", v.domain_bound},
           {"grid_step", v.grid_step},
           {"worst_margin", v.worst_margin},
           {"valid", v.valid},
           {"violation_x", v.violation_x},
           {"violation_y", v.violation_y}};
}

void to_json(json& j, const SubadditivityViolation& v) {
  j = json{{"x", v.x}, {"y", v.y}, {"margin", v.margin}};
}

void to_json(json& j, const DoublingResult& v) {
  j = json{{"found", v.found}, {"D", v.D}};
}

void to_json(json& j, const SeriesProxy& v) {
  j = json{{"shell_increments", v.shell_increments},
           {"ratios", v.ratios},
           {"geometric", v.geometric}};
}

void to_json(json& j, const WeightSequence& v) {
  j = json{{"log_values", v.log_values},
           {"argmax_r", v.argmax_r},
           {"capped", v.capped},
           {"log_n0", v.log_n0},
           {"r_cap", v.r_cap},
           {"H", v.H},
           {"alpha_zero_warning", v.alpha_zero_warning}};
}

void to_json(json& j, const LowerBoundResult& v) {
  j = json{{"found", v.found},
           {"eta", v.eta},
           {"h", v.h},
           {"margin", v.margin}};
}

void to_json(json& j, const PartitionProperties& v) {
  j = json{{"range_min", v.range_min},
           {"range_max", v.range_max},
           {"support_leak", v.support_leak},
           {"partition_defect", v.partition_defect},
           {"half_cube_min", v.half_cube_min},
           {"max_first_difference", v.max_first_difference},
           {"max_second_difference", v.max_second_difference},
           {"translate_defect", v.translate_defect}};
}

void to_json(json& j, const NormResult& v) {
  json contribs = json::array();
  for (const auto& [k, value] : v.contributions)
    contribs.push_back(json{{"k", k}, {"value", value}});
  j = json{{"value", v.value},
           {"tail_estimate", v.tail_estimate},
           {"certified", v.certified},
           {"boundary_warning", v.boundary_warning},
           {"p", v.p},
           {"q", v.q},
           {"k_max", v.k_max},
           {"weight", v.weight_spec},
           {"contributions", std::move(contribs)}};
}

void to_json(json& j, const EmbeddingRow& v) {
  j = json{{"p0", v.pair.p0},
           {"q0", v.pair.q0},
           {"p1", v.pair.p1},
           {"q1", v.pair.q1},
           {"norm0", v.norm0},
           {"norm1", v.norm1},
           {"ratio", v.ratio},
           {"certified", v.certified}};
}

void to_json(json& j, const DerivativeGrowth& v) {
  j = json{{"c_star", v.c_star},
           {"order_ratio", v.order_ratio},
           {"max_abs", v.max_abs},
           {"noise_warning", v.noise_warning}};
}

void to_json(json& j, const AlgebraEntry& v) {
  j = json{{"f_id", v.f_id},
           {"g_id", v.g_id},
           {"p1", v.p1},
           {"p2", v.p2},
           {"p", v.p},
           {"q", v.q},
           {"norm_f", v.norm_f},
           {"norm_g", v.norm_g},
           {"norm_fg", v.norm_fg},
           {"ratio", v.ratio},
           {"zero_input", v.zero_input},
           {"certified", v.certified}};
}

void to_json(json& j, const SuperpositionReport& v) {
  j = json{{"u", v.u_id},
           {"weight", v.weight_spec},
           {"p", v.p},
           {"q", v.q},
           {"u_norm", v.u_norm},
           {"lambdas", v.lambdas},
           {"norms", v.norms},
           {"aliased", v.aliased},
           {"certified", v.certified},
           {"small_c0", v.small_c0},
           {"small_c1", v.small_c1},
           {"fit_log_c", v.fit_log_c},
           {"fit_b", v.fit_b},
           {"fitted_exponent", v.fitted_exponent},
           {"bound_exponent", v.bound_exponent},
           {"rv_bound_at_max", v.rv_bound_at_max},
           {"sv_bound_at_max", v.sv_bound_at_max},
           {"theta", v.theta}};
}

void to_json(json& j, const ContinuityReport& v) {
  j = json{{"xi0", v.xi0},
           {"deltas", v.deltas},
           {"moduli", v.moduli},
           {"aliased", v.aliased},
           {"monotone", v.monotone},
           {"c_ratio", v.c_ratio}};
}

void to_json(json& j, const ConstantsReport& v) {
  j = json{{"variant", v.variant},
           {"R", v.R},
           {"q_prime", v.q_prime},
           {"alpha", v.alpha},
           {"s", v.s},
           {"c_or_delta", v.c_or_delta},
           {"n", v.n},
           {"integral_value", v.integral_value},
           {"constant", v.constant},
           {"shape_constant_excluded", v.shape_constant_excluded}};
}

void to_json(json& j, const DecayFit& v) {
  j = json{{"c", v.c},
           {"eps", v.eps},
           {"fitted_exponent", v.fitted_exponent},
           {"model_exponent", v.model_exponent},
           {"xi_lo", v.xi_lo},
           {"xi_hi", v.xi_hi},
           {"sufficient_range", v.sufficient_range}};
}

void to_json(json& j, const MeasureConditionReport& v) {
  j = json{{"variant", v.variant},
           {"xi_probes", v.xi_probes},
           {"ratios", v.ratios},
           {"trend_monotone", v.trend_monotone},
           {"final_ratio", v.final_ratio},
           {"integral_value", v.integral_value},
           {"zero_mean", v.zero_mean},
           {"l_lambda", v.l_lambda},
           {"l_integral", v.l_integral},
           {"l_tail_bound", v.l_tail_bound},
           {"l_certified", v.l_certified}};
}

json sanitize_json(json j) {
  switch (j.type()) {
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isnan(x)) return json("nan");
      if (std::isinf(x)) return json(x > 0 ? "inf" : "-inf");
      return j;
    }
    case json::value_t::array:
    case json::value_t::object: {
      for (auto& item : j) item = sanitize_json(std::move(item));
      return j;
    }
    default:
      return j;
  }
}

json report_envelope(const std::string& command) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm_utc{};
  gmtime_r(&tt, &tm_utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return json{{"schema_version", kSchemaVersion},
              {"command", command},
              {"generated", json{{"timestamp", stamp},
                                 {"tool", std::string("modspace ") +
                                              kToolVersion}}}};
}

namespace {

void atomic_write_text(const std::filesystem::path& path,
                       const std::string& text) {
  namespace fs = std::filesystem;
  fs::path dir = path.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string format_full(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

}  // namespace

void write_json_report(const std::filesystem::path& path, const json& report) {
  atomic_write_text(path, sanitize_json(report).dump(2) + "\n");
}

void write_csv_report(const std::filesystem::path& path,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::string text;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) text += ',';
    text += header[c];
  }
  text += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv row width mismatch");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) text += ',';
      text += format_full(row[c]);
    }
    text += '\n';
  }
  atomic_write_text(path, text);
}

}  // namespace modspace
