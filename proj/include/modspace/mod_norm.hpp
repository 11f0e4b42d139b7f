#pragma once

#include <string>
#include <utility>
#include <vector>

#include "modspace/grid.hpp"
#include "modspace/partition.hpp"
#include "modspace/weight.hpp"
#include "modspace/weight_sequence.hpp"

namespace modspace {

//! L^p norm on the grid: (sum |f|^p dx^n)^{1/p}, max |f| at p = infinity.
double lp_norm(const SampledFunction& f, double p);

struct NormParams {
  double p = 2.0;
  double q = 1.0;
  WeightFunction weight;
  long k_max = 48;
  double tail_tol = 1e-8;
  Partition window = make_window();

  explicit NormParams(WeightFunction w) : weight(std::move(w)) {}
};

//! Weighted aggregation over frequency pieces:
//!   value = ( sum_k e^{q w(|k|)} |box_k f|_{L^p}^q )^{1/q},
//! truncated to |k|_inf <= k_max, sup-aggregated when q or p is infinite.
//! |k| inside the weight is Euclidean; truncation shells use |k|_inf to
//! match the cube supports.  The discarded tail is bounded by geometric
//! extrapolation of the last three shell aggregates; the result is
//! certified only when that bound is at most tail_tol.
struct NormResult {
  double value = 0.0;
  // (k, e^{w(|k|)} |box_k f|_{L^p}) sorted lexicographically in k.
  std::vector<std::pair<std::vector<long>, double>> contributions;
  double tail_estimate = 0.0;
  bool certified = false;
  bool boundary_warning = false;
  double p = 0.0, q = 0.0;
  long k_max = 0;
  std::string weight_spec;
};

NormResult modulation_norm(const SampledFunction& f, const NormParams& params);
//! Same, given the precomputed spectrum of f.
NormResult modulation_norm_spectrum(const SampledFunction& spectrum,
                                    const NormParams& params);

struct EmbeddingPair {
  double p0 = 1.0, q0 = 1.0;  // smaller exponents
  double p1 = 2.0, q1 = 2.0;  // larger exponents
};

struct EmbeddingRow {
  EmbeddingPair pair;
  double norm0 = 0.0, norm1 = 0.0;
  double ratio = 0.0;  // norm at the larger exponents over the smaller ones
  bool certified = false;
};

//! Norm ratios across exponent pairs, sharing k_max/tail_tol defaults.
std::vector<EmbeddingRow> embedding_check(const SampledFunction& f,
                                          const WeightFunction& w,
                                          const std::vector<EmbeddingPair>& pairs,
                                          long k_max = 48,
                                          double tail_tol = 1e-8);

struct DerivativeGrowth {
  double c_star = 0.0;              // max_a (max |D^a f| / M_a)^{1/(a+1)}
  std::vector<double> order_ratio;  // that quantity per total order a
  std::vector<double> max_abs;      // max |D^a f| per total order
  bool noise_warning = false;       // rounding amplified past 1e-8 of the result
};

//! Spectral derivatives up to total order a_max (<= 12) against the
//! associated sequence: the spectrum is multiplied by xi^a with
//! coefficients below 1e-13 of the peak zeroed first.  Requires a weight of
//! index strictly between 0 and 1.
DerivativeGrowth derivative_growth_check(const SampledFunction& f,
                                         const WeightFunction& w,
                                         const WeightSequence& seq, int a_max);

//! All |k|_inf <= k_max integer vectors in dimension dim, lexicographic.
std::vector<std::vector<long>> enumerate_k(int dim, long k_max);

}  // namespace modspace
