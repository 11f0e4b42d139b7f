#pragma once

#include <functional>
#include <span>

#include "modspace/grid.hpp"
#include "modspace/partition.hpp"

namespace modspace {

//! Unitary Fourier transform on the sampling grid:
//! forward  F(xi) = (2pi)^{-n/2} integral f(x) e^{-i x.xi} dx,
//! inverse  f(x)  = (2pi)^{-n/2} integral F(xi) e^{+i x.xi} dxi,
//! realized as phase-shifted DFTs so that real even functions map to real
//! even transforms.  Inputs must carry the matching domain tag.  A boundary
//! residual above 1e-12 sets boundary_warning on the output instead of
//! failing; the caller decides whether that disqualifies the result.
SampledFunction forward_transform(const SampledFunction& f);
SampledFunction inverse_transform(const SampledFunction& F);

//! Frequency-localized piece around integer point k:
//! inverse transform of sigma_k times the spectrum of f.
//! f must be space-domain; k must satisfy |k_i| + 1 <= pi/dx.
SampledFunction box_operator(const Partition& part, const SampledFunction& f,
                             std::span<const long> k);

//! Same, starting from a precomputed spectrum (saves the forward pass when
//! many k share one f).
SampledFunction box_operator_spectrum(const Partition& part,
                                      const SampledFunction& spectrum,
                                      std::span<const long> k);

//! Multiplies the spectrum by xi^order (componentwise powers, real factor;
//! the i-powers of differentiation are absorbed by convention), zeroing
//! coefficients below truncate_rel times the spectral peak first so high
//! orders do not amplify rounding noise.  Returns a frequency-domain result.
SampledFunction spectral_power_multiply(const SampledFunction& spectrum,
                                        std::span<const int> order,
                                        double truncate_rel);

//! Number of worker threads for per-k loops: MODSPACE_THREADS if set,
//! hardware concurrency otherwise, always at least 1.
unsigned worker_count();

//! Runs body(i) for i in [0, count) on worker_count() threads.  The caller
//! must make writes disjoint per index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace modspace
