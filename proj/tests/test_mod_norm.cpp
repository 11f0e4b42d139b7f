#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "modspace/corpus.hpp"
#include "modspace/grid.hpp"
#include "modspace/mod_norm.hpp"
#include "modspace/partition.hpp"
#include "modspace/transform.hpp"
#include "modspace/weight.hpp"
#include "modspace/weight_sequence.hpp"

using namespace modspace;

TEST_CASE("grid Lebesgue norms of the unit gaussian") {
  // Oracles: integral of e^{-x^2} is sqrt(pi), so the L2 norm is pi^{1/4};
  // the L1 norm is sqrt(2 pi); the sup is 1.
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 0.0, grid);
  CHECK(lp_norm(f, 2.0) ==
        doctest::Approx(std::pow(M_PI, 0.25)).epsilon(1e-10));
  CHECK(lp_norm(f, 1.0) ==
        doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-10));
  CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const double l4 = std::pow(std::sqrt(M_PI / 2.0), 0.25);
  CHECK(lp_norm(f, 4.0) == doctest::Approx(l4).epsilon(1e-10));
  CHECK_THROWS(lp_norm(f, 0.5));
}

TEST_CASE("norm agrees with a frequency-side quadrature oracle") {
  // Oracle first, built without the box operator: for p = 2 the spatial
  // L2 norm of each piece equals the weighted quadrature of its masked
  // spectrum, so the whole norm is
  //   sum_k e^{w(|k|)} sqrt( sum_j |sigma_k(xi_j) S(xi_j)|^2 dxi ).
  const Grid grid = Grid::make(1, 32.0, 4096);
  const Partition part = make_window();
  const WeightFunction w = parse_weight("gevrey:s=2");
  const long k_max = 20;

  for (const SampledFunction& f :
       {gaussian(0.0, 1.0, 0.0, grid), gevrey_bump(-1.0, grid)}) {
    const SampledFunction S = forward_transform(f);
    double oracle = 0.0;
    for (long k = -k_max; k <= k_max; ++k) {
      double piece = 0.0;
      for (std::size_t m = 0; m < grid.samples; ++m) {
        const std::array<long, 1> kv{k};
        const std::array<double, 1> xv{grid.xi_at(m)};
        const double mask = part.sigma(kv, xv);
        if (mask > 0.0) piece += mask * mask * std::norm(S.values[m]);
      }
      oracle +=
          std::exp(w(std::abs(static_cast<double>(k)))) *
          std::sqrt(piece * grid.freq_cell_volume());
    }

    NormParams params(w);
    params.p = 2.0;
    params.q = 1.0;
    params.k_max = k_max;
    const NormResult res = modulation_norm(f, params);
    CHECK(res.value == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(!res.boundary_warning);
  }
}

TEST_CASE("norm scales homogeneously") {
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 2.0, grid);
  NormParams params(parse_weight("gevrey:s=2"));
  const double base = modulation_norm(f, params).value;
  for (const std::complex<double> scale :
       {std::complex<double>(3.0, 0.0), std::complex<double>(0.0, 2.0),
        std::complex<double>(-0.5, 0.0)}) {
    SampledFunction g = f;
    for (auto& z : g.values) z *= scale;
    CHECK(modulation_norm(g, params).value ==
          doctest::Approx(std::abs(scale) * base).epsilon(1e-12));
  }
}

TEST_CASE("norm obeys the triangle inequality") {
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 0.0, grid);
  const SampledFunction g = gaussian(1.0, 2.0, 3.0, grid);
  SampledFunction sum = f;
  for (std::size_t j = 0; j < sum.values.size(); ++j)
    sum.values[j] += g.values[j];

  for (double q : {1.0, 2.0}) {
    NormParams params(parse_weight("gevrey:s=2"));
    params.q = q;
    const double nf = modulation_norm(f, params).value;
    const double ng = modulation_norm(g, params).value;
    const double ns = modulation_norm(sum, params).value;
    CHECK(ns <= nf + ng + 1e-10);
  }
}

TEST_CASE("zero input gives a certified zero norm") {
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction zero = make_sampled(grid, DomainTag::space);
  NormParams params(parse_weight("gevrey:s=2"));
  const NormResult res = modulation_norm(zero, params);
  CHECK(res.value == 0.0);
  CHECK(res.tail_estimate == 0.0);
  CHECK(res.certified);
}

TEST_CASE("sup aggregation matches the largest contribution") {
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 0.0, grid);
  NormParams params(parse_weight("gevrey:s=2"));
  params.q = std::numeric_limits<double>::infinity();
  const NormResult res = modulation_norm(f, params);
  double largest = 0.0;
  for (const auto& [k, v] : res.contributions) largest = std::max(largest, v);
  CHECK(res.value == doctest::Approx(largest).epsilon(1e-13));
}

TEST_CASE("value is recomputable from the reported contributions") {
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 1.0, grid);
  for (double q : {1.0, 2.0}) {
    NormParams params(parse_weight("gevrey:s=2"));
    params.q = q;
    const NormResult res = modulation_norm(f, params);
    double acc = 0.0;
    for (const auto& [k, v] : res.contributions) acc += std::pow(v, q);
    CHECK(std::pow(acc, 1.0 / q) ==
          doctest::Approx(res.value).epsilon(1e-11));
    // Lexicographic ordering of the reported pieces.
    CHECK(std::is_sorted(
        res.contributions.begin(), res.contributions.end(),
        [](const auto& a, const auto& b) { return a.first < b.first; }));
  }
}

TEST_CASE("modulation moves the dominant piece") {
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 5.0, grid);
  NormParams params(parse_weight("gevrey:s=2"));
  const NormResult res = modulation_norm(f, params);
  const auto best = std::max_element(
      res.contributions.begin(), res.contributions.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  REQUIRE(best != res.contributions.end());
  CHECK(best->first == std::vector<long>{5});
}

TEST_CASE("piece magnitudes decay away from the spectral center") {
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 0.0, grid);
  NormParams params(parse_weight("gevrey:s=2"));
  const NormResult res = modulation_norm(f, params);
  auto value_at = [&](long k) {
    for (const auto& [kv, v] : res.contributions)
      if (kv == std::vector<long>{k}) return v;
    return -1.0;
  };
  // Above shell ~9 the gaussian pieces sink under transform roundoff, so
  // only the resolvable band is ordered.
  for (long k = 2; k <= 7; ++k) CHECK(value_at(k + 1) < value_at(k));
}

TEST_CASE("stronger weights give larger norms") {
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 4.0, grid);
  NormParams strong(parse_weight("gevrey:s=2"));
  NormParams weak(parse_weight("gevrey:s=4"));
  CHECK(modulation_norm(f, strong).value >=
        modulation_norm(f, weak).value);
}

TEST_CASE("truncation radius is saturated for rapidly decaying spectra") {
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 0.0, grid);
  NormParams a(parse_weight("gevrey:s=2"));
  a.k_max = 24;
  NormParams b(parse_weight("gevrey:s=2"));
  b.k_max = 48;
  const double na = modulation_norm(f, a).value;
  const double nb = modulation_norm(f, b).value;
  CHECK(std::abs(na - nb) <= 1e-12 * nb);
}

TEST_CASE("starved truncation is reported uncertified") {
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 0.0, grid);
  NormParams params(parse_weight("gevrey:s=2"));
  params.k_max = 8;
  params.tail_tol = 1e-30;
  const NormResult res = modulation_norm(f, params);
  CHECK(!res.certified);
  CHECK(res.tail_estimate > 1e-30);
}

TEST_CASE("norm dominates every spectral truncation") {
  // Cutting the spectrum off at growing radii approximates the function
  // from inside; the limit norm must not exceed the supremum of the
  // truncated norms.
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 2.0, grid);
  const SampledFunction S = forward_transform(f);
  NormParams params(parse_weight("gevrey:s=2"));
  const double full = modulation_norm_spectrum(S, params).value;

  double sup = 0.0, last = 0.0;
  for (double cut : {2.0, 4.0, 6.0, 8.0, 12.0, 16.0}) {
    SampledFunction masked = S;
    for (std::size_t m = 0; m < grid.samples; ++m)
      if (std::abs(grid.xi_at(m)) > cut) masked.values[m] = 0.0;
    last = modulation_norm_spectrum(masked, params).value;
    sup = std::max(sup, last);
  }
  CHECK(full <= sup + 1e-10);
  CHECK(last == doctest::Approx(full).epsilon(1e-8));
}

TEST_CASE("norm metadata round trip") {
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 0.0, grid);
  NormParams params(parse_weight("gevrey:s=2"));
  params.p = 4.0;
  params.q = 2.0;
  params.k_max = 16;
  const NormResult res = modulation_norm(f, params);
  CHECK(res.p == 4.0);
  CHECK(res.q == 2.0);
  CHECK(res.k_max == 16);
  CHECK(!res.weight_spec.empty());
}

TEST_CASE("boundary violations propagate to the norm report") {
  const Grid grid = Grid::make(1, 16.0, 128);
  SampledFunction flat = make_sampled(grid, DomainTag::space);
  for (auto& z : flat.values) z = 1.0;
  NormParams params(parse_weight("gevrey:s=2"));
  params.k_max = 4;
  const NormResult res = modulation_norm(flat, params);
  CHECK(res.boundary_warning);
}

TEST_CASE("two-dimensional norm is finite, certified and homogeneous") {
  const Grid grid = Grid::make(2, 16.0, 256);
  const SampledFunction f = gaussian(0.0, 1.0, 0.0, grid);
  NormParams params(parse_weight("gevrey:s=2"));
  params.k_max = 8;
  const NormResult res = modulation_norm(f, params);
  CHECK(res.value > 0.0);
  CHECK(res.certified);
  SampledFunction g = f;
  for (auto& z : g.values) z *= 2.0;
  CHECK(modulation_norm(g, params).value ==
        doctest::Approx(2.0 * res.value).epsilon(1e-12));
}

TEST_CASE("exponent ladders move the norm the right way") {
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 0.0, grid);
  const WeightFunction w = parse_weight("gevrey:s=2");

  // Raising the outer exponent can only shrink a discrete weighted sum.
  const std::vector<EmbeddingPair> q_pairs{{2.0, 1.0, 2.0, 2.0},
                                           {2.0, 2.0, 2.0, 8.0}};
  for (const EmbeddingRow& row : embedding_check(f, w, q_pairs)) {
    CHECK(row.certified);
    CHECK(row.ratio <= 1.0 + 1e-12);
    CHECK(row.norm0 > 0.0);
  }

  // Raising the inner exponent keeps the ratio finite on band-limited
  // pieces (Bernstein-type comparability), though not necessarily <= 1.
  const std::vector<EmbeddingPair> p_pairs{{1.0, 1.0, 2.0, 1.0}};
  for (const EmbeddingRow& row : embedding_check(f, w, p_pairs)) {
    CHECK(row.certified);
    CHECK(std::isfinite(row.ratio));
    CHECK(row.ratio > 0.0);
  }
}

TEST_CASE("derivative growth against the associated sequence") {
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 0.0, grid);
  const WeightFunction w = parse_weight("gevrey:s=2");
  const WeightSequence seq = associated_sequence(w, 12);

  const DerivativeGrowth d8 = derivative_growth_check(f, w, seq, 8);
  REQUIRE(d8.order_ratio.size() == 9);
  REQUIRE(d8.max_abs.size() == 9);
  CHECK(d8.c_star > 0.0);
  CHECK(std::isfinite(d8.c_star));
  // Order zero: max |f| = 1 against M_0 = 1.
  CHECK(d8.max_abs[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d8.order_ratio[0] == doctest::Approx(1.0).epsilon(1e-10));

  // The certified constant is a max over orders, so more orders can only
  // raise it.
  const DerivativeGrowth d12 = derivative_growth_check(f, w, seq, 12);
  CHECK(d12.c_star >= d8.c_star - 1e-12);

  // Compactly supported smooth bump also has a finite constant.
  const DerivativeGrowth bump = derivative_growth_check(
      gevrey_bump(-1.0, grid), w, seq, 8);
  CHECK(bump.c_star > 0.0);
  CHECK(std::isfinite(bump.c_star));
}

TEST_CASE("derivative growth rejects out-of-range weight indices") {
  const Grid grid = Grid::make(1, 32.0, 4096);
  const SampledFunction f = gaussian(0.0, 1.0, 0.0, grid);
  const WeightFunction ll = parse_weight("loglog");
  const WeightSequence seq = associated_sequence(ll, 8);
  CHECK_THROWS(derivative_growth_check(f, ll, seq, 8));
}

TEST_CASE("frequency lattice enumeration") {
  const auto one = enumerate_k(1, 3);
  REQUIRE(one.size() == 7);
  CHECK(one.front() == std::vector<long>{-3});
  CHECK(one.back() == std::vector<long>{3});
  CHECK(std::is_sorted(one.begin(), one.end()));

  const auto two = enumerate_k(2, 2);
  REQUIRE(two.size() == 25);
  CHECK(two.front() == (std::vector<long>{-2, -2}));
  CHECK(two.back() == (std::vector<long>{2, 2}));
  CHECK(std::is_sorted(two.begin(), two.end()));
}
