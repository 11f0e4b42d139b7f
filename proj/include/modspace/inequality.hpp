#pragma once

#include <functional>
#include <string>
#include <vector>

#include "modspace/corpus.hpp"
#include "modspace/mod_norm.hpp"
#include "modspace/weight.hpp"

namespace modspace {

enum class ConstantVariant { rv_a, rv_b, sv };

std::string to_string(ConstantVariant v);

struct ConstantsParams {
  ConstantVariant variant = ConstantVariant::rv_a;
  int n = 1;
  double q = 2.0;      // norm exponent; the dual q' = q/(q-1) enters the bound
  double alpha = 0.5;  // weight index (RV variants)
  double s = 0.5;      // subadditivity gain from a certificate
  double c = 1.0;      // RV_a scale, min(1, C0)
  double delta = 0.1;  // RV_b index reduction; requires alpha - delta > 0
  int N = 3;           // SV decay order
};

struct ConstantsReport {
  std::string variant;
  double R = 0.0;
  double q_prime = 0.0;
  double alpha = 0.0;
  double s = 0.0;
  double c_or_delta = 0.0;
  int n = 0;
  double integral_value = 0.0;  // gamma tail (RV variants; 0 for SV)
  double constant = 0.0;
  bool shape_constant_excluded = true;  // unquantified prefactor set to 1
};

//! Decay constant of the high-frequency multiplication bound.
//! RV variants: Gamma(n/alpha, lower)^{1/q'} with lower limit
//! s q' c (R-2)^alpha (variant a) or s q' (R-2)^{alpha-delta} (variant b);
//! at q = 1 (q' infinite) the l^{q'} aggregate degenerates to a sup and the
//! constant becomes exp(-s c (R-2)^alpha) resp. exp(-s (R-2)^{alpha-delta}).
//! SV variant: 2^{M - n/q'} R^{-N} with M the least integer >= n/q' + N.
//! Rejects R < 2.
ConstantsReport subalgebra_constant(const ConstantsParams& params, double R);

struct AlgebraEntry {
  std::string f_id, g_id;
  double p1 = 0.0, p2 = 0.0, p = 0.0, q = 0.0;
  double norm_f = 0.0, norm_g = 0.0, norm_fg = 0.0;
  double ratio = 0.0;
  bool zero_input = false;
  bool certified = false;
};

//! Ratio |fg| / (|f| |g|) of modulation norms with the Hoelder exponent
//! relation 1/p = 1/p1 + 1/p2 (requires 1/p1 + 1/p2 <= 1).  A zero factor
//! reports ratio 0 with the zero_input flag.
AlgebraEntry algebra_ratio(const SampledFunction& f, const SampledFunction& g,
                           double p1, double p2, double q,
                           const WeightFunction& w, long k_max = 48,
                           double tail_tol = 1e-8);

struct SuperpositionReport {
  std::string u_id;
  std::string weight_spec;
  double p = 0.0, q = 0.0;
  double u_norm = 0.0;  // modulation norm of u itself
  std::vector<double> lambdas;
  std::vector<double> norms;        // norm of e^{i lambda u} - 1 per lambda
  std::vector<bool> aliased;        // lambda max|u'| dx > 0.5
  std::vector<bool> certified;      // per-lambda tail certification
  double small_c0 = 0.0, small_c1 = 0.0;  // norm/(lambda u_norm) at the two
                                          // smallest positive lambdas
  double fit_log_c = 0.0, fit_b = 0.0;    // growth-branch model coefficients
  double fitted_exponent = 0.0;  // slope of log(log norm) against log lambda
  double bound_exponent = 0.0;   // weight index alpha
  double rv_bound_at_max = 0.0;  // fitted RV-form log-bound at lambda_max
  double sv_bound_at_max = 0.0;  // fitted SV-form log-bound at lambda_max
  double theta = 2.0;            // SV-form strength parameter
};

//! Norm growth of v_lambda = e^{i lambda u} - 1 across the lambda schedule.
//! u must be real-valued; p must lie strictly inside (1, inf).  The growth
//! branch (lambda u_norm > 1) is fitted with
//! log n = log c + log(lambda U) + b (lambda U)^alpha log(lambda U),
//! and fitted_exponent is the regression slope of log(log n) on
//! log lambda.  sv_n controls the SV-form comparison curve exponent.
SuperpositionReport superposition_growth(const SampledFunction& u,
                                         const WeightFunction& w,
                                         const std::vector<double>& lambdas,
                                         double p, double q, long k_max = 48,
                                         double tail_tol = 1e-8,
                                         double theta = 2.0, int sv_n = 1);

struct ContinuityReport {
  double xi0 = 0.0;
  std::vector<double> deltas;
  std::vector<double> moduli;   // norm of g(xi0+delta) - g(xi0)
  std::vector<bool> aliased;
  bool monotone = false;        // moduli decrease as delta halves
  double c_ratio = 0.0;         // moduli/delta stability across last two deltas
};

//! Moduli of continuity of xi -> e^{i u x xi} - 1 in the modulation norm.
ContinuityReport exp_map_continuity(const SampledFunction& u,
                                    const WeightFunction& w, double xi0,
                                    const std::vector<double>& deltas,
                                    double p, double q, long k_max = 48,
                                    double tail_tol = 1e-8);

//! Fitted decay law |g|(xi) = c e^{-eps |xi|^kappa}, evaluable far beyond
//! the sampled band.
struct DecayModel {
  double c = 1.0;
  double eps = 1.0;
  double kappa = 0.5;
  double operator()(double xi) const;
  double log_abs(double xi) const;  // log |g|(xi)
};

struct MeasureConditionReport {
  std::string variant;
  std::vector<double> xi_probes;  // log-spaced up to xi_max
  std::vector<double> ratios;     // growth factor over -log |g|
  bool trend_monotone = false;    // decreasing across the last two decades
  double final_ratio = 0.0;
  double integral_value = 0.0;  // quadrature of the signed density
  bool zero_mean = false;       // |integral| <= 1e-10
  double l_lambda = 0.0;
  double l_integral = 0.0;    // integral of e^{lambda |xi|^alpha log |xi|} |g|
  double l_tail_bound = 0.0;  // geometric certificate for the remainder
  bool l_certified = false;
};

//! Checks the superposition admissibility conditions of a decaying density:
//! the ratio trend (numerator |xi|^alpha log |xi| for variant a, additionally
//! scaled by the slowly varying part at |xi| (log |xi|)^{1/alpha} for b, and
//! w(|xi|^{1+exponent_eps}) for sv) against -log |g|; the zero-mean
//! quadrature of the signed sampled density; and the weighted absolute
//! integral with a geometric tail certificate.  Rejects models that do not
//! decay.
MeasureConditionReport measure_condition_check(
    const DecayModel& density, const SampledFunction& signed_spectrum,
    const WeightFunction& w, ConstantVariant variant, double xi_max,
    double l_lambda = 1.0, double exponent_eps = 0.1);

}  // namespace modspace
