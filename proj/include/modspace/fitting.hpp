#pragma once

#include <functional>
#include <span>
#include <vector>

namespace modspace {

//! Least squares fit: minimizes ||sum_j c_j * cols[j] - y|| and returns c.
//! Column-rank deficiency is tolerated (minimum-norm solution).
std::vector<double> least_squares(const std::vector<std::vector<double>>& cols,
                                  const std::vector<double>& y);

//! log(sum exp(v_i)) without overflow; -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> v);

//! Golden-section maximizer on [lo, hi]; f must be unimodal there.
//! Returns the abscissa; tol is absolute.
double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tol);

//! Bisection root of a monotone increasing predicate: smallest x in [lo, hi]
//! with pred(x) true; pred(hi) must hold.  tol is absolute.
double bisect_smallest_true(const std::function<bool(double)>& pred,
                            double lo, double hi, double tol);

//! Log-spaced samples, endpoints included.
std::vector<double> log_space(double lo, double hi, int count);

}  // namespace modspace
