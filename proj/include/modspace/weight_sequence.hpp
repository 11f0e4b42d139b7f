#pragma once

#include <span>
#include <vector>

#include "modspace/weight.hpp"

namespace modspace {

//! Sequence M_p = N_p / N_0 with N_p = sup_{r>0} r^p e^{-w(r)}, kept in the
//! log domain because the values overflow quickly.  An entry whose sup
//! search hit the bracket cap r_cap is flagged: the true sup is then not
//! attained in the searched range (typical for slowly varying weights, where
//! it is infinite) and the entry is only a lower estimate.
struct WeightSequence {
  std::vector<double> log_values;  // log M_p, p = 0 .. p_max
  std::vector<double> argmax_r;    // maximizing r per p
  std::vector<bool> capped;        // argmax hit r_cap
  double log_n0 = 0.0;             // log N_0
  double r_cap = 0.0;
  double H = 1.0;                  // smallest observed H with M_{p+q} <= H^{p+q} M_p M_q
  bool alpha_zero_warning = false;

  int p_max() const { return static_cast<int>(log_values.size()) - 1; }
  double log_M(int p) const { return log_values.at(static_cast<std::size_t>(p)); }
  //! M_p as a double; +inf when the log value exceeds the representable range.
  double M(int p) const;
  bool any_capped() const;
};

//! Computes the sequence up to p_max.  Each sup is maximized in the log
//! domain: a coarse log-spaced scan picks the best bracket, golden-section
//! refines it, and when the weight has usable derivatives the stationarity
//! condition p = r w'(r) is also bisected; the larger candidate wins.
//! A weight of index 0 sets alpha_zero_warning (the sup typically escapes
//! to infinity; entries then carry the capped flag).
WeightSequence associated_sequence(const WeightFunction& w, int p_max,
                                   double r_cap = 1e12);

//! Indices p with log-convexity violated: 2 log M_p > log M_{p-1} + log M_{p+1}
//! beyond tolerance 1e-12.  Overload for hand-built log sequences.
std::vector<int> check_log_convexity(std::span<const double> log_values);
std::vector<int> check_log_convexity(const WeightSequence& seq);

//! Smallest H >= 1 with M_{p+q} <= H^{p+q} M_p M_q over p+q <= limit
//! (limit < 0 means the whole sequence).  Log-domain arithmetic.
double find_H(const WeightSequence& seq, int p_limit = -1);

struct LowerBoundResult {
  bool found = false;
  double eta = 0.0;
  double h = 0.0;
  double margin = 0.0;  // min over p of log M_p - p log h - eta p log p
};

//! Searches eta in {0.05, ..., 0.45}, h log-spaced in [1e-6, 1] for a pair
//! with M_p >= h^p p^{p eta} on 2 <= p <= p_max.  A finite window cannot
//! see the eventual failure of a too-large eta, so each eta must also stay
//! below the tail trend of log M_p / (p log p); capped sequences return
//! NONE since their entries are not the true sup.  Reports the largest
//! certified eta with the largest certifying h.
LowerBoundResult check_lower_bound(const WeightSequence& seq);

}  // namespace modspace
