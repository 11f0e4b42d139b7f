#pragma once

#include <map>
#include <string>
#include <vector>

#include "modspace/weight.hpp"

namespace modspace {

//! Probe abscissas for one-dimensional weight checks: linear steps on [0,1],
//! log-spaced beyond, sorted and deduplicated.
struct ProbeGrid {
  std::vector<double> points;
  double t_max = 0.0;

  static ProbeGrid standard(double t_max, int per_decade = 64);
};

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

struct ConditionResult {
  Verdict verdict = Verdict::inconclusive;
  double witness = 0.0;  // abscissa backing the verdict
  std::string note;
};

struct IndexEstimate {
  double alpha = 0.0;        // fitted limit of x w'(x)/w(x)
  double uncertainty = 0.0;  // fit residual plus residual drift at t_max
};

//! Fits the growth index over the last decade of probes.  The local ratio
//! x w'(x)/w(x) is regressed on {1, 1/T, 1/(T log T)} with T = log x, which
//! absorbs the first- and second-order slowly varying corrections; the
//! constant term is the index.
IndexEstimate estimate_index(const WeightFunction& w, double t_max);

struct Thresholds {
  double tau = 0.0;     // last inflection of w
  double x0 = 0.0;      // growth-ratio threshold abscissa
  double x1 = 0.0;      // x/w(x) domination threshold abscissa
  double x_tilde = 0.0; // max(tau, 2 x0, 2 x1, 1)
  bool valid = false;
};

//! Assembles the thresholds.  x0 is the least probe beyond which the ratio
//! x w'/w stays below (1 + alpha)/2 up to t_max (the midpoint between the
//! fitted index and 1, so an index-1 weight is rejected); x1 the least
//! probe >= x0 from which x/w(x) is nondecreasing and dominates all earlier
//! probe values.  valid = false when no x0 exists below t_max.
Thresholds compute_thresholds(const WeightFunction& w, const ProbeGrid& probes,
                              double alpha);

struct ClassReport {
  std::map<std::string, ConditionResult> verdicts;  // keys A1..A6
  IndexEstimate index;
  Thresholds thresholds;
  std::string subclass;  // "W0" slowly varying, "W1" regularly varying
  bool all_pass() const;
};

//! Full condition check: A1 index < 1, A2 values >= 1, A3 strict increase,
//! A4 growth beyond every multiple of log (rendered as strict increase of
//! w(t)/log t over the last two decades, reported per reference multiple),
//! A5 derivative vanishing at 0+, A6 finitely many inflections.
ClassReport check_conditions(const WeightFunction& w, const ProbeGrid& probes);

struct SubadditivityCertificate {
  double s = 0.0;            // certified constant, 0 when invalid
  double x_tilde = 0.0;
  double domain_bound = 0.0; // X of the searched box [0,X]^2
  double grid_step = 0.0;
  double worst_margin = 0.0; // min of RHS - LHS over the admissible grid
  bool valid = false;
  double violation_x = 0.0, violation_y = 0.0;  // witness when invalid
};

//! The admissible search region: [0,X]^2 minus the strip y <= x < 2 x_tilde.
inline bool subadditivity_admissible(double x, double y, double x_tilde) {
  return !(y <= x && x < 2.0 * x_tilde);
}

//! Largest s on a 1e-3 bisection grid such that
//!   w(x) <= w(y) + w(|x-y|) - s min(w(y), w(|x-y|))
//! holds (tolerance 1e-12) at every admissible lattice point of step h and
//! on the densely sampled boundary lines x = 2 x_tilde, y = x/2, y = x and
//! y = 0.  Requires X >= 4 x_tilde and h <= 0.5.  When even s = 1e-3 fails,
//! the certificate is invalid and carries a violating point.
SubadditivityCertificate find_subadditivity_s(const WeightFunction& w,
                                              double x_tilde, double X,
                                              double h);

struct SubadditivityViolation {
  double x = 0.0, y = 0.0;
  double margin = 0.0;  // negative RHS - LHS at the violation
};

//! Re-checks a certificate's s on box [0,X2]^2 at step h2; empty on success.
std::vector<SubadditivityViolation> verify_subadditivity(
    const WeightFunction& w, const SubadditivityCertificate& cert, double X2,
    double h2);

struct DoublingResult {
  bool found = false;
  double D = 0.0;
};

//! Smallest D in {1,2,4,...,2^20}, refined by bisection to 1e-2, with
//! 2 w(t) <= w(D t) + D on all probes in [0, t_max]; NONE when no power of
//! two works.
DoublingResult find_doubling_D(const WeightFunction& w, double t_max);

struct SeriesProxy {
  std::vector<double> shell_increments;  // additions per sup-norm shell
  std::vector<double> ratios;            // successive increment ratios
  bool geometric = false;                // tail ratios below 1 and nonincreasing
};

//! Partial sums of sum_m e^{-s q' w(|m|)} over integer shells |m|_inf <= K
//! in dimension n; the convergence evidence is a geometric decay trend of
//! the shell increments.
SeriesProxy series_convergence_proxy(const WeightFunction& w, double s,
                                     double q_prime, int n, int k_max);

}  // namespace modspace
