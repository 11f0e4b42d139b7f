#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modspace {

//! Parameters of the built-in weight family
//!
//!   w(x) = <x>^{1/s} * prod_j ( l_j <x>_star )^{r_j}
//!
//! where <x>_m = sqrt(m^2 + x^2), l_j is the j-fold iterated logarithm and
//! the j-th factor's shift is `shift_star` when set, otherwise the smallest
//! exponential tower e, e^e, e^{e^e}, ... that keeps the factor >= 1
//! everywhere.  s = infinity selects the slowly varying (pure iterated-log)
//! subfamily; its exponent pattern must start with r_1 > 1, or r_1 = 1
//! followed by a positive first nonzero exponent.
struct BuiltinWeightSpec {
  double s = 2.0;
  std::vector<double> r{};
  std::optional<double> shift_star{};

  bool slowly_varying() const;
  double index_alpha() const;  // 1/s, zero for the slowly varying family
  double shift_for_factor(std::size_t j) const;  // 1-based factor index

  //! Throws std::invalid_argument when the parameters leave the family:
  //! s <= 1, an unusable exponent pattern at s = inf, or a factor that
  //! dips below 1 somewhere on [0, inf).
  void validate() const;

  //! Shortest spelling that parses back to the same spec:
  //! "gevrey:s=<s>", "loglog", or "family:s=...,r=...,star=...".
  std::string canonical_string() const;

  static BuiltinWeightSpec parse(std::string_view text);

  bool operator==(const BuiltinWeightSpec&) const = default;
};

//! A weight function on [0, inf) together with its first two derivatives
//! and its regular-variation index.  Instances are immutable and cheap to
//! copy; all evaluation is thread safe.
class WeightFunction {
 public:
  using Evaluator = std::function<double(double)>;

  static WeightFunction builtin(BuiltinWeightSpec spec);

  //! Wrap caller-supplied evaluators (value, first, second derivative).
  static WeightFunction from_evaluators(std::string label, Evaluator w,
                                        Evaluator dw, Evaluator ddw,
                                        double alpha);

  //! Value-only evaluator; derivatives fall back to finite differences
  //! with step h = max(1e-6, 1e-6 * x).
  static WeightFunction from_evaluator(std::string label, Evaluator w,
                                       double alpha);

  //! Weight value.  Throws std::domain_error for x < 0.
  double operator()(double x) const;

  //! Derivative of the given order (1 or 2) at x > 0.
  double derivative(double x, int order) const;

  //! w(x) / x^alpha for alpha > 0 (x > 0 required); w itself for alpha = 0.
  double slowly_varying_part(double x) const;

  double index_alpha() const { return alpha_; }
  bool has_analytic_derivatives() const { return analytic_; }
  const std::optional<BuiltinWeightSpec>& spec() const { return spec_; }
  const std::string& description() const { return label_; }

 private:
  WeightFunction() = default;

  std::optional<BuiltinWeightSpec> spec_{};
  Evaluator w_, dw_, ddw_;
  double alpha_ = 0.0;
  bool analytic_ = false;
  std::string label_;
};

//! Weight mini-language: "gevrey:s=<real>", "loglog",
//! "family:s=<real|inf>,r=<comma list>,star=<real>", plus the named
//! control evaluators "bracket" (<x>), "linear" (x) and "sqrt" (x^{1/2})
//! used by the inequality lab as designed-failure references.
WeightFunction parse_weight(std::string_view text);

}  // namespace modspace
