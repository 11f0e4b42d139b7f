#include "modspace/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace modspace {

Grid Grid::make(int n, double L, std::size_t N) {
  if (n != 1 && n != 2)
    throw std::invalid_argument("grid dimension must be 1 or 2");
  if (!(L > 0.0)) throw std::invalid_argument("grid half width must be > 0");
  if (N < 8 || (N & (N - 1)) != 0)
    throw std::invalid_argument("grid sample count must be a power of two >= 8");
  Grid g{n, L, N};
  if (g.dxi() > 0.25 + 1e-15)
    throw std::invalid_argument(
        "frequency spacing pi/L exceeds 1/4; enlarge the box");
  return g;
}

double Grid::dxi() const { return std::numbers::pi / half_width; }

std::size_t Grid::total() const {
  std::size_t t = 1;
  for (int i = 0; i < dim; ++i) t *= samples;
  return t;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int i = 0; i < dim; ++i) v *= dx();
  return v;
}

double Grid::freq_cell_volume() const {
  double v = 1.0;
  for (int i = 0; i < dim; ++i) v *= dxi();
  return v;
}

SampledFunction make_sampled(const Grid& grid, DomainTag domain) {
  SampledFunction f;
  f.grid = grid;
  f.domain = domain;
  f.values.assign(grid.total(), {0.0, 0.0});
  return f;
}

double boundary_residual(const SampledFunction& f) {
  const std::size_t n = f.grid.axis_size();
  double peak = 0.0;
  for (const auto& v : f.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  double edge = 0.0;
  if (f.grid.dim == 1) {
    edge = std::max(std::abs(f.values.front()), std::abs(f.values.back()));
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      edge = std::max(edge, std::abs(f.at(0, j)));
      edge = std::max(edge, std::abs(f.at(n - 1, j)));
      edge = std::max(edge, std::abs(f.at(j, 0)));
      edge = std::max(edge, std::abs(f.at(j, n - 1)));
    }
  }
  return edge / peak;
}

void check_boundary_decay(SampledFunction& f) {
  f.boundary_warning = boundary_residual(f) > 1e-12;
}

void save_csv(const SampledFunction& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "index,re,im\n";
  char buf[96];
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i,
                  f.values[i].real(), f.values[i].imag());
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

SampledFunction load_csv(const Grid& grid, DomainTag domain,
                         const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  SampledFunction f = make_sampled(grid, domain);
  std::string line;
  std::getline(in, line);  // header
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t idx;
    double re, im;
    if (std::sscanf(line.c_str(), "%zu,%lg,%lg", &idx, &re, &im) != 3)
      throw std::runtime_error("malformed CSV row: " + line);
    if (idx >= f.values.size())
      throw std::runtime_error("CSV index out of range for grid");
    f.values[idx] = {re, im};
    ++count;
  }
  if (count != f.values.size())
    throw std::runtime_error("CSV row count does not match grid");
  return f;
}

namespace {
constexpr char kMagic[4] = {'M', 'S', 'P', 'C'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_raw(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}
}  // namespace

void save_binary(const SampledFunction& f, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(kMagic, 4);
  write_raw(out, kVersion);
  write_raw(out, static_cast<std::uint32_t>(f.grid.dim));
  write_raw(out, f.grid.half_width);
  write_raw(out, static_cast<std::uint64_t>(f.grid.samples));
  write_raw(out, static_cast<std::uint8_t>(f.domain));
  for (const auto& v : f.values) {
    write_raw(out, v.real());
    write_raw(out, v.imag());
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

SampledFunction load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("not a sampled-function container: " +
                             path.string());
  if (read_raw<std::uint32_t>(in) != kVersion)
    throw std::runtime_error("unsupported container version");
  const auto dim = read_raw<std::uint32_t>(in);
  const auto L = read_raw<double>(in);
  const auto N = read_raw<std::uint64_t>(in);
  const auto tag = read_raw<std::uint8_t>(in);
  if (tag > 1) throw std::runtime_error("bad domain tag");
  SampledFunction f = make_sampled(Grid::make(static_cast<int>(dim), L, N),
                                   static_cast<DomainTag>(tag));
  for (auto& v : f.values) {
    double re = read_raw<double>(in);
    double im = read_raw<double>(in);
    v = {re, im};
  }
  if (!in) throw std::runtime_error("container truncated: " + path.string());
  return f;
}

}  // namespace modspace
