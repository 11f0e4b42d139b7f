#pragma once

#include <span>
#include <vector>

#include "modspace/grid.hpp"

namespace modspace {

//! Smooth partition of unity on integer frequency translates.
//!
//! The 1-D window profile g equals 1 on |t| <= plateau, 0 on |t| >= 1 and
//! interpolates with the quotient phi(1-u)/(phi(1-u)+phi(u)) of
//! phi(v) = exp(-1/v), u = (|t| - plateau)/(1 - plateau).  For the default
//! plateau 1/2 this is g(t) = phi(2-2|t|)/(phi(2-2|t|)+phi(2|t|-1)).
//! rho is the tensor product of profiles, and
//! sigma_k(xi) = rho(xi - k) / sum_j rho(xi - j), a translate of sigma_0.
class Partition {
 public:
  explicit Partition(double plateau = 0.5);

  double plateau() const { return plateau_; }
  double support_radius() const { return 1.0; }

  //! 1-D profile g(t).
  double profile(double t) const;
  //! Tensor-product window rho(xi), xi of length 1 or 2.
  double rho(std::span<const double> xi) const;
  //! Normalized piece sigma_k(xi); zero outside the unit cube around k.
  double sigma(std::span<const long> k, std::span<const double> xi) const;
  //! Sum of all sigma_k at xi (only neighboring k contribute).
  double sigma_sum(std::span<const double> xi) const;

 private:
  double plateau_;
};

Partition make_window(double plateau = 0.5);

//! Max |sum_k sigma_k(xi) - 1| over all frequency samples of the grid.
double verify_partition(const Partition& part, const Grid& grid);

struct PartitionProperties {
  double range_min = 0.0, range_max = 0.0;   // observed sigma range
  double support_leak = 0.0;                 // max sigma outside the unit cube
  double partition_defect = 0.0;             // max |sum - 1|
  double half_cube_min = 0.0;                // min sigma on the half cube
  double max_first_difference = 0.0;         // sup of |d sigma / d xi| proxy
  double max_second_difference = 0.0;
  double translate_defect = 0.0;             // max |sigma_k(xi) - sigma_0(xi-k)|
};

//! Measures the five decomposition properties over k in [-k_range, k_range]^n.
PartitionProperties measure_partition_properties(const Partition& part,
                                                 const Grid& grid,
                                                 long k_range);

}  // namespace modspace
