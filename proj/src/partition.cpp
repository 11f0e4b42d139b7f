#include "modspace/partition.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace modspace {

namespace {
double phi(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }
}  // namespace

Partition::Partition(double plateau) : plateau_(plateau) {
  if (!(plateau > 0.0) || !(plateau < 1.0))
    throw std::invalid_argument("window plateau must lie in (0, 1)");
}

double Partition::profile(double t) const {
  const double a = std::abs(t);
  if (a <= plateau_) return 1.0;
  if (a >= 1.0) return 0.0;
  const double u = (a - plateau_) / (1.0 - plateau_);
  const double up = phi(1.0 - u), down = phi(u);
  return up / (up + down);
}

double Partition::rho(std::span<const double> xi) const {
  double v = 1.0;
  for (double t : xi) v *= profile(t);
  return v;
}

double Partition::sigma(std::span<const long> k, std::span<const double> xi) const {
  if (k.size() != xi.size())
    throw std::invalid_argument("sigma: k and xi dimension mismatch");
  // Per-axis normalized profile; the normalizer is the same two-candidate
  // sum that appears in sigma_sum, so the pieces sum to 1 exactly.
  double v = 1.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double t = xi[i] - static_cast<double>(k[i]);
    if (std::abs(t) >= 1.0) return 0.0;
    const double lo = std::floor(xi[i]);
    const double norm = profile(xi[i] - lo) + profile(xi[i] - lo - 1.0);
    v *= profile(t) / norm;
  }
  return v;
}

double Partition::sigma_sum(std::span<const double> xi) const {
  // Genuine sum over the candidate box, routed through sigma() so the
  // support cutoff and normalization paths are both exercised.
  if (xi.size() == 1) {
    const long lo = static_cast<long>(std::floor(xi[0]));
    double sum = 0.0;
    for (long k = lo - 1; k <= lo + 2; ++k) {
      std::array<long, 1> kk{k};
      sum += sigma(kk, xi);
    }
    return sum;
  }
  if (xi.size() == 2) {
    const long lo0 = static_cast<long>(std::floor(xi[0]));
    const long lo1 = static_cast<long>(std::floor(xi[1]));
    double sum = 0.0;
    for (long k0 = lo0 - 1; k0 <= lo0 + 2; ++k0)
      for (long k1 = lo1 - 1; k1 <= lo1 + 2; ++k1) {
        std::array<long, 2> kk{k0, k1};
        sum += sigma(kk, xi);
      }
    return sum;
  }
  throw std::invalid_argument("sigma_sum: dimension must be 1 or 2");
}

Partition make_window(double plateau) { return Partition(plateau); }

double verify_partition(const Partition& part, const Grid& grid) {
  double worst = 0.0;
  const std::size_t n = grid.axis_size();
  if (grid.dim == 1) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::array<double, 1> xi{grid.xi_at(j)};
      worst = std::max(worst, std::abs(part.sigma_sum(xi) - 1.0));
    }
  } else {
    for (std::size_t j0 = 0; j0 < n; ++j0)
      for (std::size_t j1 = 0; j1 < n; ++j1) {
        const std::array<double, 2> xi{grid.xi_at(j0), grid.xi_at(j1)};
        worst = std::max(worst, std::abs(part.sigma_sum(xi) - 1.0));
      }
  }
  return worst;
}

PartitionProperties measure_partition_properties(const Partition& part,
                                                 const Grid& grid,
                                                 long k_range) {
  PartitionProperties props;
  props.range_min = 1.0;
  props.partition_defect = verify_partition(part, grid);

  // 1-D scan of sigma_0 at fine resolution; translates are exact copies,
  // which the translate_defect probe verifies on the grid below.
  const double h = 1e-3;
  double prev = 0.0, prev2 = 0.0;
  bool have1 = false, have2 = false;
  for (double xi = -2.0; xi <= 2.0 + 1e-12; xi += h) {
    std::array<long, 1> k0{0};
    std::array<double, 1> xx{xi};
    const double s = part.sigma(k0, xx);
    props.range_min = std::min(props.range_min, s);
    props.range_max = std::max(props.range_max, s);
    if (std::abs(xi) >= 1.0) props.support_leak = std::max(props.support_leak, s);
    if (have1) {
      const double d1 = (s - prev) / h;
      props.max_first_difference = std::max(props.max_first_difference,
                                            std::abs(d1));
      if (have2) {
        const double d2 = (s - 2.0 * prev + prev2) / (h * h);
        props.max_second_difference = std::max(props.max_second_difference,
                                               std::abs(d2));
      }
      prev2 = prev;
      have2 = true;
    }
    prev = s;
    have1 = true;
  }

  props.half_cube_min = 1.0;
  for (double xi = -0.5; xi <= 0.5 + 1e-12; xi += h) {
    std::array<long, 1> k0{0};
    std::array<double, 1> xx{xi};
    props.half_cube_min = std::min(props.half_cube_min, part.sigma(k0, xx));
  }

  // Translation invariance over the requested k box, on grid samples.
  const std::size_t n = grid.axis_size();
  for (long k = -k_range; k <= k_range; ++k) {
    for (std::size_t j = 0; j < n; j += 7) {
      const double xi = grid.xi_at(j);
      std::array<long, 1> kk{k}, zero{0};
      std::array<double, 1> xx{xi}, shifted{xi - static_cast<double>(k)};
      const double d =
          std::abs(part.sigma(kk, xx) - part.sigma(zero, shifted));
      props.translate_defect = std::max(props.translate_defect, d);
    }
  }
  return props;
}

}  // namespace modspace
