#pragma once

#include <string>
#include <vector>

#include "modspace/grid.hpp"

namespace modspace {

//! Pointwise corpus primitives.  one_sided_exp is the smooth step
//! e^{-t^mu} for t > 0 (mu < 0), 0 otherwise; compact_bump multiplies the
//! step with its reflection, giving a smooth function supported on [0,1]
//! with peak value e^{-2^{1-mu}} at t = 1/2.
double one_sided_exp(double mu, double t);
double compact_bump(double mu, double t);

enum class FunctionKind { gaussian, gevrey_bump, window };

//! Corpus element description; parses from ids like
//! "gaussian:sigma=1,m=5,c=0,amp=2", "gevrey:mu=-1,height=1", "window".
struct FunctionSpec {
  FunctionKind kind = FunctionKind::gaussian;
  double center = 0.0;
  double sigma = 1.0;
  double modulation = 0.0;
  double mu = -1.0;
  double amplitude = 1.0;
  // When > 0, rescale so max |f| equals this value.
  double height = 0.0;

  static FunctionSpec parse(const std::string& id);
  std::string canonical_string() const;
};

//! Samples e^{i m.x} e^{-|x-c|^2 / (2 sigma^2)} on the grid (scalar center
//! and modulation broadcast across axes).  Rejects width <= 0 and functions
//! that fail the boundary-decay requirement.
SampledFunction gaussian(double center, double sigma, double modulation,
                         const Grid& grid);

//! Samples the compact bump (tensor product across axes).  mu < 0 required.
SampledFunction gevrey_bump(double mu, const Grid& grid);

//! Samples the partition window profile as a spatial function.
SampledFunction window_function(const Grid& grid);

//! Builds the sampled function a spec describes.
SampledFunction make_function(const FunctionSpec& spec, const Grid& grid);

struct DecayFit {
  double c = 0.0;                // fitted amplitude
  double eps = 0.0;              // fitted rate
  double fitted_exponent = 0.0;  // fitted kappa in c * exp(-eps |xi|^kappa)
  double model_exponent = 0.0;   // expected kappa supplied by the caller
  double xi_lo = 0.0, xi_hi = 0.0;  // fit range
  bool sufficient_range = false;    // at least a factor 3 of |xi| available
};

//! Fits log |F f| with log c - eps |xi|^kappa over the largest in-band
//! stretch (|F f| within [1e-13, 1e-2] of the spectral peak, capped at one
//! decade of |xi|), using binned maxima so oscillatory spectra fit their
//! envelope.  f may be space- or frequency-domain; 1-D only.
DecayFit fourier_decay_fit(const SampledFunction& f, double model_exponent);

}  // namespace modspace
