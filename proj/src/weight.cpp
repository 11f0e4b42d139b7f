#include "modspace/weight.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace modspace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Value plus first two derivatives, chained through log and sqrt(m^2+x^2).
struct D2 {
  double v, d1, d2;
};

D2 bracket_of(double x, double m) {
  const double v = std::hypot(m, x);
  return {v, x / v, m * m / (v * v * v)};
}

D2 log_of(const D2& a) {
  const double d1 = a.d1 / a.v;
  return {std::log(a.v), d1, a.d2 / a.v - d1 * d1};
}

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view t, const char* what) {
  if (t == "inf" || t == "infinity") return kInf;
  double v = 0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw std::invalid_argument(std::string("cannot parse ") + what + ": '" +
                                std::string(t) + "'");
  return v;
}

}  // namespace

bool BuiltinWeightSpec::slowly_varying() const { return std::isinf(s); }

double BuiltinWeightSpec::index_alpha() const {
  return slowly_varying() ? 0.0 : 1.0 / s;
}

double BuiltinWeightSpec::shift_for_factor(std::size_t j) const {
  if (shift_star) return *shift_star;
  double t = std::exp(1.0);  // tower e, e^e, ...
  for (std::size_t i = 1; i < j; ++i) t = std::exp(t);
  return t;
}

void BuiltinWeightSpec::validate() const {
  if (!(s > 1.0))
    throw std::invalid_argument("weight family requires s > 1 (got s = " +
                                fmt_double(s) + ")");
  if (slowly_varying()) {
    if (r.empty())
      throw std::invalid_argument(
          "slowly varying family needs at least one log factor");
    if (!(r[0] > 1.0)) {
      bool ok = false;
      if (r[0] == 1.0) {
        for (std::size_t j = 1; j < r.size(); ++j) {
          if (r[j] != 0.0) {
            ok = r[j] > 0.0;
            break;
          }
        }
      }
      if (!ok)
        throw std::invalid_argument(
            "slowly varying family needs r_1 > 1, or r_1 = 1 with a positive "
            "first nonzero exponent after it");
    }
  }
  if (shift_star && !(*shift_star >= std::exp(1.0)))
    throw std::invalid_argument("shift_star must be >= e");
  for (std::size_t j = 1; j <= r.size(); ++j) {
    if (r[j - 1] == 0.0) continue;
    double m = shift_for_factor(j);
    if (!std::isfinite(m))
      throw std::invalid_argument(
          "default shift for log factor " + std::to_string(j) +
          " is not representable; give shift_star explicitly");
    // Factor minimum over [0, inf) sits at x = 0 where <0>_m = m.
    double v = m;
    for (std::size_t i = 0; i < j; ++i) {
      if (v <= 0.0)
        throw std::invalid_argument("log factor " + std::to_string(j) +
                                    " dips below 1 near x = 0");
      v = std::log(v);
    }
    if (v < 1.0 - 1e-9)
      throw std::invalid_argument("log factor " + std::to_string(j) +
                                  " dips below 1 near x = 0");
  }
}

std::string BuiltinWeightSpec::canonical_string() const {
  const double ee = std::exp(std::exp(1.0));
  if (!slowly_varying() && r.empty() && !shift_star)
    return "gevrey:s=" + fmt_double(s);
  if (slowly_varying() && r.size() == 2 && r[0] == 1.0 && r[1] == 1.0 &&
      shift_star && std::abs(*shift_star - ee) < 1e-12)
    return "loglog";
  std::string out = "family:s=";
  out += slowly_varying() ? "inf" : fmt_double(s);
  out += ",r=";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ',';
    out += fmt_double(r[i]);
  }
  if (shift_star) out += ",star=" + fmt_double(*shift_star);
  return out;
}

BuiltinWeightSpec BuiltinWeightSpec::parse(std::string_view text) {
  auto colon = text.find(':');
  std::string_view head = text.substr(0, colon);
  std::string_view rest =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  // k=v pairs separated by commas; a comma-item without '=' continues the
  // previous value (so r=1,1 survives the split).
  std::vector<std::pair<std::string, std::string>> params;
  std::size_t pos = 0;
  while (pos < rest.size()) {
    auto comma = rest.find(',', pos);
    std::string_view item = rest.substr(pos, comma - pos);
    pos = comma == std::string_view::npos ? rest.size() : comma + 1;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      if (params.empty())
        throw std::invalid_argument("malformed weight spec: '" +
                                    std::string(text) + "'");
      params.back().second += ',';
      params.back().second += std::string(item);
    } else {
      params.emplace_back(std::string(item.substr(0, eq)),
                          std::string(item.substr(eq + 1)));
    }
  }

  auto get = [&](const std::string& key) -> std::optional<std::string> {
    for (auto& [k, v] : params)
      if (k == key) return v;
    return std::nullopt;
  };

  BuiltinWeightSpec spec;
  if (head == "gevrey") {
    auto sv = get("s");
    if (!sv) throw std::invalid_argument("gevrey weight needs s=<real>");
    spec.s = parse_real(*sv, "s");
  } else if (head == "loglog") {
    spec.s = kInf;
    spec.r = {1.0, 1.0};
    spec.shift_star = std::exp(std::exp(1.0));
  } else if (head == "family") {
    auto sv = get("s");
    if (!sv) throw std::invalid_argument("family weight needs s=<real|inf>");
    spec.s = parse_real(*sv, "s");
    if (auto rv = get("r")) {
      std::size_t p = 0;
      const std::string& list = *rv;
      while (p < list.size()) {
        auto c = list.find(',', p);
        spec.r.push_back(parse_real(
            std::string_view(list).substr(p, c - p), "r entry"));
        p = c == std::string::npos ? list.size() : c + 1;
      }
    }
    if (auto st = get("star")) spec.shift_star = parse_real(*st, "star");
  } else {
    throw std::invalid_argument("unknown weight family: '" +
                                std::string(head) + "'");
  }
  spec.validate();
  return spec;
}

WeightFunction WeightFunction::builtin(BuiltinWeightSpec spec) {
  spec.validate();
  // log w and its two derivatives, assembled factor by factor.
  auto log_weight = [spec](double x) -> D2 {
    D2 g{0.0, 0.0, 0.0};
    if (!spec.slowly_varying()) {
      D2 head = log_of(bracket_of(x, 1.0));
      g.v += head.v / spec.s;
      g.d1 += head.d1 / spec.s;
      g.d2 += head.d2 / spec.s;
    }
    for (std::size_t j = 1; j <= spec.r.size(); ++j) {
      if (spec.r[j - 1] == 0.0) continue;
      D2 c = bracket_of(x, spec.shift_for_factor(j));
      for (std::size_t i = 0; i < j; ++i) c = log_of(c);  // l_j <x>_star
      c = log_of(c);                                      // log of the factor
      g.v += spec.r[j - 1] * c.v;
      g.d1 += spec.r[j - 1] * c.d1;
      g.d2 += spec.r[j - 1] * c.d2;
    }
    return g;
  };

  WeightFunction f;
  f.label_ = spec.canonical_string();
  f.alpha_ = spec.index_alpha();
  f.analytic_ = true;
  f.w_ = [log_weight](double x) { return std::exp(log_weight(x).v); };
  f.dw_ = [log_weight](double x) {
    D2 g = log_weight(x);
    return g.d1 * std::exp(g.v);
  };
  f.ddw_ = [log_weight](double x) {
    D2 g = log_weight(x);
    return (g.d2 + g.d1 * g.d1) * std::exp(g.v);
  };
  f.spec_ = std::move(spec);
  return f;
}

WeightFunction WeightFunction::from_evaluators(std::string label, Evaluator w,
                                               Evaluator dw, Evaluator ddw,
                                               double alpha) {
  WeightFunction f;
  f.label_ = std::move(label);
  f.w_ = std::move(w);
  f.dw_ = std::move(dw);
  f.ddw_ = std::move(ddw);
  f.alpha_ = alpha;
  f.analytic_ = true;
  return f;
}

WeightFunction WeightFunction::from_evaluator(std::string label, Evaluator w,
                                              double alpha) {
  WeightFunction f;
  f.label_ = std::move(label);
  f.w_ = std::move(w);
  f.alpha_ = alpha;
  f.analytic_ = false;
  return f;
}

double WeightFunction::operator()(double x) const {
  if (x < 0.0)
    throw std::domain_error("weight evaluated at negative argument");
  return w_(x);
}

double WeightFunction::derivative(double x, int order) const {
  if (!(x > 0.0))
    throw std::domain_error("weight derivative needs x > 0");
  if (order != 1 && order != 2)
    throw std::invalid_argument("derivative order must be 1 or 2");
  if (analytic_) return order == 1 ? dw_(x) : ddw_(x);

  const double h = std::max(1e-6, 1e-6 * x);
  if (order == 1) {
    if (x - h > 0.0) return (w_(x + h) - w_(x - h)) / (2.0 * h);
    return (-3.0 * w_(x) + 4.0 * w_(x + h) - w_(x + 2.0 * h)) / (2.0 * h);
  }
  if (x - h > 0.0)
    return (w_(x + h) - 2.0 * w_(x) + w_(x - h)) / (h * h);
  return (2.0 * w_(x) - 5.0 * w_(x + h) + 4.0 * w_(x + 2.0 * h) -
          w_(x + 3.0 * h)) /
         (h * h);
}

double WeightFunction::slowly_varying_part(double x) const {
  if (alpha_ == 0.0) return (*this)(x);
  if (!(x > 0.0))
    throw std::domain_error("slowly varying part needs x > 0 when alpha > 0");
  return std::exp(std::log(w_(x)) - alpha_ * std::log(x));
}

WeightFunction parse_weight(std::string_view text) {
  if (text == "bracket")
    return WeightFunction::from_evaluators(
        "bracket", [](double x) { return std::hypot(1.0, x); },
        [](double x) { return x / std::hypot(1.0, x); },
        [](double x) {
          double b = std::hypot(1.0, x);
          return 1.0 / (b * b * b);
        },
        1.0);
  if (text == "linear")
    return WeightFunction::from_evaluators(
        "linear", [](double x) { return x; }, [](double) { return 1.0; },
        [](double) { return 0.0; }, 1.0);
  if (text == "sqrt")
    return WeightFunction::from_evaluators(
        "sqrt", [](double x) { return std::sqrt(x); },
        [](double x) { return 0.5 / std::sqrt(x); },
        [](double x) { return -0.25 / (x * std::sqrt(x)); }, 0.5);
  return WeightFunction::builtin(BuiltinWeightSpec::parse(text));
}

}  // namespace modspace
