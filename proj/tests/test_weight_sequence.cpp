#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "modspace/weight.hpp"
#include "modspace/weight_sequence.hpp"

using namespace modspace;

namespace {

WeightSequence hand_sequence(std::vector<double> log_values) {
  WeightSequence seq;
  seq.log_values = std::move(log_values);
  seq.argmax_r.assign(seq.log_values.size(), 0.0);
  seq.capped.assign(seq.log_values.size(), false);
  return seq;
}

}  // namespace

TEST_CASE("square-root weight reproduces the closed-form sequence") {
  // Oracle first: sup_r r^p e^{-sqrt(r)} substitutes t = sqrt(r) into
  // sup_t t^{2p} e^{-t}, maximized at t = 2p, giving N_p = (2p)^{2p} e^{-2p}
  // with argmax r = (2p)^2; N_0 = 1 so M_p = N_p.
  const WeightSequence seq = associated_sequence(parse_weight("sqrt"), 20);
  REQUIRE(seq.p_max() == 20);
  CHECK(std::abs(seq.log_n0) <= 1e-10);
  CHECK(!seq.any_capped());
  for (int p = 1; p <= 20; ++p) {
    const double lp = static_cast<double>(p);
    const double oracle_log = 2.0 * lp * (std::log(2.0 * lp) - 1.0);
    CHECK(std::abs(seq.log_M(p) + seq.log_n0 - oracle_log) <=
          1e-8 * std::max(1.0, std::abs(oracle_log)));
    CHECK(seq.argmax_r[static_cast<std::size_t>(p)] ==
          doctest::Approx(4.0 * lp * lp).epsilon(1e-4));
  }
  // Spot value: N_1 = 4 e^{-2}.
  CHECK(seq.M(1) == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-6));
  CHECK(seq.M(2) == doctest::Approx(256.0 * std::exp(-4.0)).epsilon(1e-6));
}

TEST_CASE("log-convexity oracle on hand-built sequences") {
  // Direct arithmetic is the oracle.  For (1, 10, 10, 10): at p=1 the
  // square 100 exceeds 1*10, a violation; at p=2 equality 100 <= 100
  // holds.  For (1, 10, 5, 50): 100 > 1*5 violates at p=1 while
  // 25 <= 10*50 holds at p=2.
  auto logs = [](std::initializer_list<double> vals) {
    std::vector<double> out;
    for (double v : vals) out.push_back(std::log(v));
    return out;
  };

  const std::vector<double> flat = logs({1.0, 10.0, 10.0, 10.0});
  CHECK(check_log_convexity(std::span<const double>(flat)) ==
        std::vector<int>{1});

  const std::vector<double> dip = logs({1.0, 10.0, 5.0, 50.0});
  CHECK(check_log_convexity(std::span<const double>(dip)) ==
        std::vector<int>{1});

  const std::vector<double> geometric = logs({1.0, 10.0, 100.0, 1000.0});
  CHECK(check_log_convexity(std::span<const double>(geometric)).empty());

  // (p!)^2 is log-convex.
  std::vector<double> factorial_sq;
  for (int p = 0; p <= 30; ++p)
    factorial_sq.push_back(2.0 * std::lgamma(p + 1.0));
  CHECK(check_log_convexity(std::span<const double>(factorial_sq)).empty());
}

TEST_CASE("computed power-weight sequences are log-convex") {
  const WeightSequence g2 =
      associated_sequence(parse_weight("gevrey:s=2"), 50);
  CHECK(check_log_convexity(g2).empty());
  CHECK(!g2.any_capped());
  CHECK(!g2.alpha_zero_warning);

  const WeightSequence sq = associated_sequence(parse_weight("sqrt"), 30);
  CHECK(check_log_convexity(sq).empty());
}

TEST_CASE("argmax abscissas grow with the order") {
  for (const char* id : {"sqrt", "gevrey:s=2"}) {
    const WeightSequence seq = associated_sequence(parse_weight(id), 30);
    for (int p = 1; p <= seq.p_max(); ++p)
      CHECK(seq.argmax_r[static_cast<std::size_t>(p)] >=
            seq.argmax_r[static_cast<std::size_t>(p - 1)] * (1.0 - 1e-9));
  }
}

TEST_CASE("sequence tracks the squared factorial for the half-index weight") {
  const WeightSequence seq =
      associated_sequence(parse_weight("gevrey:s=2"), 50);
  // The ratio (M_p / (p!)^2)^{1/p} must stay inside a bounded band.
  double lo = 1e300, hi = 0.0;
  for (int p = 5; p <= 50; ++p) {
    const double band = std::exp(
        (seq.log_M(p) - 2.0 * std::lgamma(p + 1.0)) / static_cast<double>(p));
    lo = std::min(lo, band);
    hi = std::max(hi, band);
  }
  CHECK(hi / lo <= 6.0);
  CHECK(lo > 0.0);
}

TEST_CASE("growth constant H certifies the binomial bound") {
  // Oracle: for M_p = (p!)^2 the ratio M_{p+q}/(M_p M_q) is a squared
  // binomial coefficient <= 4^{p+q}, so H <= 4.
  std::vector<double> factorial_sq;
  for (int p = 0; p <= 40; ++p)
    factorial_sq.push_back(2.0 * std::lgamma(p + 1.0));
  const WeightSequence seq = hand_sequence(factorial_sq);
  const double H = find_H(seq);
  CHECK(H >= 1.0);
  CHECK(H <= 4.0 + 1e-9);
  // Direct re-verification of the certified inequality.
  for (int p = 0; p <= 40; ++p)
    for (int q = 0; p + q <= 40; ++q) {
      const double lhs = seq.log_M(p + q);
      const double rhs =
          (p + q) * std::log(H) + seq.log_M(p) + seq.log_M(q);
      CHECK(lhs <= rhs + 1e-9);
    }
}

TEST_CASE("flat sequence has the trivial growth constant") {
  const WeightSequence flat = hand_sequence(std::vector<double>(21, 0.0));
  CHECK(find_H(flat) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("growth constant is stable under longer sequences") {
  const WeightFunction w = parse_weight("gevrey:s=2");
  const double h25 = find_H(associated_sequence(w, 25));
  const double h50 = find_H(associated_sequence(w, 50));
  CHECK(h25 > 1.0);
  CHECK(std::abs(h50 - h25) <= 0.05 * h25);
}

TEST_CASE("lower bound certificate for factorial-type growth") {
  std::vector<double> factorial_sq;
  for (int p = 0; p <= 40; ++p)
    factorial_sq.push_back(2.0 * std::lgamma(p + 1.0));
  const LowerBoundResult res = check_lower_bound(hand_sequence(factorial_sq));
  REQUIRE(res.found);
  CHECK(res.eta > 0.0);
  CHECK(res.eta < 0.5);
  CHECK(res.h > 0.0);
  CHECK(res.margin >= -1e-9);
  // Re-verify the certified inequality directly.
  for (int p = 2; p <= 40; ++p) {
    const double lhs = factorial_sq[static_cast<std::size_t>(p)];
    const double rhs = p * std::log(res.h) + res.eta * p * std::log(p);
    CHECK(lhs >= rhs - 1e-9);
  }
}

TEST_CASE("flat sequence certifies no lower bound") {
  // 1 >= h^p p^{p eta} fails at large p for every positive eta and h.
  const LowerBoundResult res =
      check_lower_bound(hand_sequence(std::vector<double>(41, 0.0)));
  CHECK(!res.found);
}

TEST_CASE("computed square-root sequence certifies a sub-half exponent") {
  const WeightSequence seq = associated_sequence(parse_weight("sqrt"), 30);
  const LowerBoundResult res = check_lower_bound(seq);
  REQUIRE(res.found);
  CHECK(res.eta > 0.0);
  CHECK(res.eta < 0.5);
}

TEST_CASE("slowly varying weights cap the sup search") {
  // The maximizer sits near exp(exp(p)) and leaves the bracket cap quickly;
  // capped entries are lower estimates, so no lower-bound certificate.
  const WeightSequence seq = associated_sequence(parse_weight("loglog"), 10);
  CHECK(seq.alpha_zero_warning);
  CHECK(seq.any_capped());
  CHECK(!seq.capped[1]);   // argmax e^e is far below the cap
  CHECK(seq.capped[10]);   // argmax e^{e^10} is far beyond it
  CHECK(!check_lower_bound(seq).found);
}

TEST_CASE("overflow-safe value accessor") {
  WeightSequence seq = hand_sequence({0.0, 1e4});
  CHECK(std::isinf(seq.M(1)));
  CHECK(seq.M(0) == doctest::Approx(1.0));
}
