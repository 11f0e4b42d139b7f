#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace modspace {

//! Uniform sampling of the box [-L, L]^n, N samples per axis (N a power of
//! two).  Spatial nodes are x_j = -L + j * dx with dx = 2L/N; frequency
//! nodes are xi_m = m * dxi with dxi = pi/L and m = -N/2 .. N/2 - 1, stored
//! in ascending order of m.  dxi <= 1/4 is required so every unit frequency
//! cube is well resolved.
struct Grid {
  int dim = 1;
  double half_width = 32.0;
  std::size_t samples = 4096;

  static Grid make(int n, double L, std::size_t N);

  double dx() const { return 2.0 * half_width / static_cast<double>(samples); }
  double dxi() const;
  std::size_t axis_size() const { return samples; }
  std::size_t total() const;
  double cell_volume() const;  // dx^n
  double freq_cell_volume() const;  // dxi^n

  double x_at(std::size_t j) const {
    return -half_width + dx() * static_cast<double>(j);
  }
  //! Frequency value at ascending-order index j (m = j - N/2).
  double xi_at(std::size_t j) const {
    return dxi() * (static_cast<double>(j) - static_cast<double>(samples) / 2);
  }
  double xi_max() const { return dxi() * (static_cast<double>(samples) / 2 - 1); }

  bool operator==(const Grid&) const = default;
};

enum class DomainTag : std::uint8_t { space = 0, frequency = 1 };

//! Complex samples over a Grid, in the spatial or frequency domain.
//! Row-major layout for dim = 2 (index = j0 * N + j1).
struct SampledFunction {
  Grid grid;
  DomainTag domain = DomainTag::space;
  std::vector<std::complex<double>> values;
  //! Set when the samples fail the relative boundary-decay threshold; norm
  //! results derived from such data are reported uncertified.
  bool boundary_warning = false;

  std::complex<double>& at(std::size_t j) { return values[j]; }
  const std::complex<double>& at(std::size_t j) const { return values[j]; }
  std::complex<double>& at(std::size_t j0, std::size_t j1) {
    return values[j0 * grid.axis_size() + j1];
  }
  const std::complex<double>& at(std::size_t j0, std::size_t j1) const {
    return values[j0 * grid.axis_size() + j1];
  }
};

SampledFunction make_sampled(const Grid& grid, DomainTag domain);

//! Largest |value| on the outermost sample shell relative to max |value|;
//! 0 for identically zero data.
double boundary_residual(const SampledFunction& f);

//! Sets f.boundary_warning when boundary_residual exceeds 1e-12.
void check_boundary_decay(SampledFunction& f);

// ----- container I/O -----
// CSV: "index,re,im" rows (flattened index), no grid metadata.
// Binary: little-endian header (magic "MSPC", u32 version, u32 dim, f64 L,
// u64 N, u8 domain tag) followed by interleaved re/im f64 payload.

void save_csv(const SampledFunction& f, const std::filesystem::path& path);
SampledFunction load_csv(const Grid& grid, DomainTag domain,
                         const std::filesystem::path& path);
void save_binary(const SampledFunction& f, const std::filesystem::path& path);
SampledFunction load_binary(const std::filesystem::path& path);

}  // namespace modspace
