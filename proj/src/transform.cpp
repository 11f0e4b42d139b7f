#include "modspace/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <vector>

namespace modspace {

namespace {

// FFTW planning is not thread safe; executing a plan on fresh arrays is.
// Plans are cached per (dim, size, sign) and created with FFTW_UNALIGNED so
// they accept any std::vector buffer.
class PlanCache {
 public:
  fftw_plan get(int dim, std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const Key key{dim, n, sign};
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    const std::size_t total = dim == 1 ? n : n * n;
    std::vector<std::complex<double>> scratch(total);
    auto* raw = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan =
        dim == 1
            ? fftw_plan_dft_1d(static_cast<int>(n), raw, raw, sign, flags)
            : fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), raw,
                               raw, sign, flags);
    if (!plan) throw std::runtime_error("FFTW plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  using Key = std::tuple<int, std::size_t, int>;
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// Applies the alternating phase (-1)^{j0+...} that recenters the DFT so
// index N/2 is the origin in both domains.  Self-inverse.
void apply_checkerboard(const Grid& grid, std::vector<std::complex<double>>& v) {
  const std::size_t n = grid.axis_size();
  if (grid.dim == 1) {
    for (std::size_t j = 1; j < n; j += 2) v[j] = -v[j];
  } else {
    for (std::size_t j0 = 0; j0 < n; ++j0)
      for (std::size_t j1 = (j0 % 2 == 0) ? 1 : 0; j1 < n; j1 += 2)
        v[j0 * n + j1] = -v[j0 * n + j1];
  }
}

SampledFunction run_transform(const SampledFunction& in, int sign,
                              DomainTag out_tag, double scale) {
  SampledFunction out;
  out.grid = in.grid;
  out.domain = out_tag;
  out.boundary_warning = in.boundary_warning;
  out.values = in.values;
  if (boundary_residual(in) > 1e-12) out.boundary_warning = true;

  apply_checkerboard(in.grid, out.values);
  fftw_plan plan = plan_cache().get(in.grid.dim, in.grid.axis_size(), sign);
  auto* raw = reinterpret_cast<fftw_complex*>(out.values.data());
  fftw_execute_dft(plan, raw, raw);
  apply_checkerboard(in.grid, out.values);
  for (auto& z : out.values) z *= scale;
  return out;
}

}  // namespace

SampledFunction forward_transform(const SampledFunction& f) {
  if (f.domain != DomainTag::space)
    throw std::invalid_argument("forward_transform expects a space-domain input");
  const double scale =
      std::pow(f.grid.dx() / std::sqrt(2.0 * M_PI), f.grid.dim);
  return run_transform(f, FFTW_FORWARD, DomainTag::frequency, scale);
}

SampledFunction inverse_transform(const SampledFunction& F) {
  if (F.domain != DomainTag::frequency)
    throw std::invalid_argument("inverse_transform expects a frequency-domain input");
  const double scale =
      std::pow(F.grid.dxi() / std::sqrt(2.0 * M_PI), F.grid.dim);
  return run_transform(F, FFTW_BACKWARD, DomainTag::space, scale);
}

SampledFunction box_operator_spectrum(const Partition& part,
                                      const SampledFunction& spectrum,
                                      std::span<const long> k) {
  if (spectrum.domain != DomainTag::frequency)
    throw std::invalid_argument("box_operator_spectrum expects a spectrum");
  if (k.size() != static_cast<std::size_t>(spectrum.grid.dim))
    throw std::invalid_argument("box_operator: k dimension mismatch");
  const double reach = spectrum.grid.xi_max();
  for (long ki : k)
    if (std::abs(static_cast<double>(ki)) + 1.0 > reach)
      throw std::invalid_argument(
          "box_operator: k outside the representable frequency range");

  SampledFunction masked = spectrum;
  const std::size_t n = spectrum.grid.axis_size();
  if (spectrum.grid.dim == 1) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::array<double, 1> xi{spectrum.grid.xi_at(j)};
      masked.values[j] *= part.sigma(k, xi);
    }
  } else {
    for (std::size_t j0 = 0; j0 < n; ++j0)
      for (std::size_t j1 = 0; j1 < n; ++j1) {
        const std::array<double, 2> xi{spectrum.grid.xi_at(j0),
                                       spectrum.grid.xi_at(j1)};
        masked.values[j0 * n + j1] *= part.sigma(k, xi);
      }
  }
  return inverse_transform(masked);
}

SampledFunction box_operator(const Partition& part, const SampledFunction& f,
                             std::span<const long> k) {
  if (f.domain != DomainTag::space)
    throw std::invalid_argument("box_operator expects a space-domain input");
  return box_operator_spectrum(part, forward_transform(f), k);
}

SampledFunction spectral_power_multiply(const SampledFunction& spectrum,
                                        std::span<const int> order,
                                        double truncate_rel) {
  if (spectrum.domain != DomainTag::frequency)
    throw std::invalid_argument("spectral_power_multiply expects a spectrum");
  if (order.size() != static_cast<std::size_t>(spectrum.grid.dim))
    throw std::invalid_argument("spectral_power_multiply: order dimension mismatch");
  for (int o : order)
    if (o < 0) throw std::invalid_argument("derivative order must be >= 0");

  double peak = 0.0;
  for (const auto& z : spectrum.values) peak = std::max(peak, std::abs(z));
  const double floor = peak * truncate_rel;

  SampledFunction out = spectrum;
  const std::size_t n = spectrum.grid.axis_size();
  if (spectrum.grid.dim == 1) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(out.values[j]) < floor) {
        out.values[j] = 0.0;
        continue;
      }
      out.values[j] *= std::pow(spectrum.grid.xi_at(j), order[0]);
    }
  } else {
    for (std::size_t j0 = 0; j0 < n; ++j0)
      for (std::size_t j1 = 0; j1 < n; ++j1) {
        auto& z = out.values[j0 * n + j1];
        if (std::abs(z) < floor) {
          z = 0.0;
          continue;
        }
        z *= std::pow(spectrum.grid.xi_at(j0), order[0]) *
             std::pow(spectrum.grid.xi_at(j1), order[1]);
      }
  }
  return out;
}

unsigned worker_count() {
  if (const char* env = std::getenv("MODSPACE_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) return static_cast<unsigned>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1u;
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body) {
  const unsigned workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += workers) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace modspace
