#include "modspace/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "modspace/fitting.hpp"
#include "modspace/transform.hpp"

namespace modspace {

double one_sided_exp(double mu, double t) {
  if (!(mu < 0.0)) throw std::invalid_argument("one_sided_exp: mu must be < 0");
  if (t <= 0.0) return 0.0;
  const double e = -std::pow(t, mu);
  if (e < -690.0) return 0.0;  // below 1e-300, clamp to exact zero
  return std::exp(e);
}

double compact_bump(double mu, double t) {
  return one_sided_exp(mu, t) * one_sided_exp(mu, 1.0 - t);
}

namespace {

double parse_number(const std::string& text, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("function spec: bad value for " + key);
  }
  if (used != text.size())
    throw std::invalid_argument("function spec: bad value for " + key);
  return v;
}

void enforce_boundary(SampledFunction& f, const char* what) {
  check_boundary_decay(f);
  if (f.boundary_warning)
    throw std::invalid_argument(std::string(what) +
                                ": insufficient decay at the box boundary");
}

double max_abs(const SampledFunction& f) {
  double m = 0.0;
  for (const auto& z : f.values) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

FunctionSpec FunctionSpec::parse(const std::string& id) {
  FunctionSpec spec;
  const std::size_t colon = id.find(':');
  const std::string head = id.substr(0, colon);
  if (head == "gaussian")
    spec.kind = FunctionKind::gaussian;
  else if (head == "gevrey")
    spec.kind = FunctionKind::gevrey_bump;
  else if (head == "window")
    spec.kind = FunctionKind::window;
  else
    throw std::invalid_argument("unknown function id: " + id);

  if (colon == std::string::npos) return spec;
  std::stringstream rest(id.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("function spec: expected key=value, got " +
                                  item);
    const std::string key = item.substr(0, eq);
    const double value = parse_number(item.substr(eq + 1), key);
    if (key == "sigma")
      spec.sigma = value;
    else if (key == "m")
      spec.modulation = value;
    else if (key == "c")
      spec.center = value;
    else if (key == "mu")
      spec.mu = value;
    else if (key == "amp")
      spec.amplitude = value;
    else if (key == "height")
      spec.height = value;
    else
      throw std::invalid_argument("function spec: unknown key " + key);
  }
  return spec;
}

std::string FunctionSpec::canonical_string() const {
  std::ostringstream out;
  out.precision(12);
  switch (kind) {
    case FunctionKind::gaussian:
      out << "gaussian:sigma=" << sigma;
      if (center != 0.0) out << ",c=" << center;
      if (modulation != 0.0) out << ",m=" << modulation;
      break;
    case FunctionKind::gevrey_bump:
      out << "gevrey:mu=" << mu;
      break;
    case FunctionKind::window:
      out << "window";
      break;
  }
  if (amplitude != 1.0) out << ",amp=" << amplitude;
  if (height > 0.0) out << ",height=" << height;
  return out.str();
}

SampledFunction gaussian(double center, double sigma, double modulation,
                         const Grid& grid) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian: width must be > 0");
  SampledFunction f = make_sampled(grid, DomainTag::space);
  const std::size_t n = grid.axis_size();
  auto axis_value = [&](double x) {
    const double d = (x - center) / sigma;
    return std::exp(std::complex<double>(-0.5 * d * d, modulation * x));
  };
  if (grid.dim == 1) {
    for (std::size_t j = 0; j < n; ++j) f.values[j] = axis_value(grid.x_at(j));
  } else {
    std::vector<std::complex<double>> axis(n);
    for (std::size_t j = 0; j < n; ++j) axis[j] = axis_value(grid.x_at(j));
    for (std::size_t j0 = 0; j0 < n; ++j0)
      for (std::size_t j1 = 0; j1 < n; ++j1)
        f.values[j0 * n + j1] = axis[j0] * axis[j1];
  }
  enforce_boundary(f, "gaussian");
  return f;
}

SampledFunction gevrey_bump(double mu, const Grid& grid) {
  if (!(mu < 0.0)) throw std::invalid_argument("gevrey_bump: mu must be < 0");
  SampledFunction f = make_sampled(grid, DomainTag::space);
  const std::size_t n = grid.axis_size();
  if (grid.dim == 1) {
    for (std::size_t j = 0; j < n; ++j)
      f.values[j] = compact_bump(mu, grid.x_at(j));
  } else {
    std::vector<double> axis(n);
    for (std::size_t j = 0; j < n; ++j) axis[j] = compact_bump(mu, grid.x_at(j));
    for (std::size_t j0 = 0; j0 < n; ++j0)
      for (std::size_t j1 = 0; j1 < n; ++j1)
        f.values[j0 * n + j1] = axis[j0] * axis[j1];
  }
  enforce_boundary(f, "gevrey_bump");
  return f;
}

SampledFunction window_function(const Grid& grid) {
  const Partition part = make_window();
  SampledFunction f = make_sampled(grid, DomainTag::space);
  const std::size_t n = grid.axis_size();
  if (grid.dim == 1) {
    for (std::size_t j = 0; j < n; ++j)
      f.values[j] = part.profile(grid.x_at(j));
  } else {
    for (std::size_t j0 = 0; j0 < n; ++j0)
      for (std::size_t j1 = 0; j1 < n; ++j1)
        f.values[j0 * n + j1] =
            part.profile(grid.x_at(j0)) * part.profile(grid.x_at(j1));
  }
  enforce_boundary(f, "window_function");
  return f;
}

SampledFunction make_function(const FunctionSpec& spec, const Grid& grid) {
  SampledFunction f;
  switch (spec.kind) {
    case FunctionKind::gaussian:
      f = gaussian(spec.center, spec.sigma, spec.modulation, grid);
      break;
    case FunctionKind::gevrey_bump:
      f = gevrey_bump(spec.mu, grid);
      break;
    case FunctionKind::window:
      f = window_function(grid);
      break;
  }
  double scale = spec.amplitude;
  if (spec.height > 0.0) {
    const double peak = max_abs(f);
    if (peak == 0.0) throw std::invalid_argument("height rescale of a zero function");
    scale *= spec.height / peak;
  }
  if (scale != 1.0)
    for (auto& z : f.values) z *= scale;
  return f;
}

DecayFit fourier_decay_fit(const SampledFunction& f, double model_exponent) {
  if (f.grid.dim != 1)
    throw std::invalid_argument("fourier_decay_fit: 1-D spectra only");
  const SampledFunction spectrum =
      f.domain == DomainTag::frequency ? f : forward_transform(f);

  const std::size_t n = spectrum.grid.axis_size();
  double peak = 0.0;
  for (const auto& z : spectrum.values) peak = std::max(peak, std::abs(z));

  DecayFit fit;
  fit.model_exponent = model_exponent;
  if (peak == 0.0) return fit;
  const double lo_mag = 1e-13 * peak, hi_mag = 1e-2 * peak;

  // Largest |xi| whose magnitude is still above the relative noise floor.
  double xi_hi = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double xi = spectrum.grid.xi_at(j);
    if (xi <= 0.0) continue;
    if (std::abs(spectrum.values[j]) >= lo_mag) xi_hi = std::max(xi_hi, xi);
  }
  if (xi_hi <= 0.0) return fit;
  // Smallest usable |xi|: walk down from xi_hi until the near-peak cap is
  // first exceeded (contiguous in-band stretch), then cap at one decade.
  double xi_lo;
  {
    double lowest = xi_hi;
    for (std::size_t j = n; j-- > 0;) {
      const double xi = spectrum.grid.xi_at(j);
      if (xi <= 0.0 || xi > xi_hi) continue;
      if (std::abs(spectrum.values[j]) > hi_mag) break;
      lowest = xi;
    }
    xi_lo = std::max(lowest, xi_hi / 10.0);
  }
  fit.xi_lo = xi_lo;
  fit.xi_hi = xi_hi;
  // Quadratic-exponent decay only spans a 2.5x band between the
  // near-peak cap and the noise floor, so 2x is the usable gate.
  fit.sufficient_range = xi_hi >= 2.0 * xi_lo;
  if (!fit.sufficient_range) return fit;

  // Binned maxima: the envelope of an oscillatory spectrum.
  constexpr int bins = 32;
  std::vector<double> bxi(bins, 0.0), bmag(bins, 0.0);
  const double lr = std::log(xi_hi / xi_lo);
  for (std::size_t j = 0; j < n; ++j) {
    const double xi = spectrum.grid.xi_at(j);
    if (xi < xi_lo || xi > xi_hi) continue;
    int b = static_cast<int>(std::floor(std::log(xi / xi_lo) / lr * bins));
    b = std::clamp(b, 0, bins - 1);
    const double mag = std::abs(spectrum.values[j]);
    if (mag > bmag[b]) {
      bmag[b] = mag;
      bxi[b] = xi;
    }
  }
  std::vector<double> xs, ys;
  for (int b = 0; b < bins; ++b) {
    if (bmag[b] <= 0.0) continue;
    xs.push_back(bxi[b]);
    ys.push_back(std::log(bmag[b]));
  }
  if (xs.size() < 6) {
    fit.sufficient_range = false;
    return fit;
  }

  // Inner linear fit of (log c, -eps) for fixed kappa; outer golden-section
  // maximization of -SSE over kappa.
  auto sse_at = [&](double kappa) {
    std::vector<double> ones(xs.size(), 1.0), pows(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
      pows[i] = -std::pow(xs[i], kappa);
    const auto coef = least_squares({ones, pows}, ys);
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (coef[0] + coef[1] * pows[i]);
      sse += r * r;
    }
    return std::pair<double, std::array<double, 2>>(
        sse, {coef[0], coef[1]});
  };
  const double kappa = golden_section_max(
      [&](double k) { return -sse_at(k).first; }, 0.05, 3.0, 1e-5);
  const auto [sse, coef] = sse_at(kappa);
  (void)sse;
  fit.fitted_exponent = kappa;
  fit.c = std::exp(coef[0]);
  fit.eps = coef[1];
  return fit;
}

}  // namespace modspace
