#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "modspace/special.hpp"

using namespace modspace;

TEST_CASE("upper tail matches integration-by-parts closed forms") {
  // Oracles first: for integer beta the tail integral collapses to a
  // polynomial times e^{-t}; for beta = 1/2 it is sqrt(pi) erfc(sqrt(t)).
  const double oracle_b1_t2 = std::exp(-2.0);
  const double oracle_b2_t1 = 2.0 * std::exp(-1.0);
  const double oracle_b3_t30 = (900.0 + 60.0 + 2.0) * std::exp(-30.0);
  const double oracle_h_quarter = std::sqrt(M_PI) * std::erfc(0.5);

  CHECK(gamma_upper(1.0, 2.0) == doctest::Approx(oracle_b1_t2).epsilon(1e-12));
  CHECK(gamma_upper(2.0, 1.0) == doctest::Approx(oracle_b2_t1).epsilon(1e-12));
  CHECK(gamma_upper(3.0, 30.0) ==
        doctest::Approx(oracle_b3_t30).epsilon(1e-12));
  CHECK(gamma_upper(0.5, 0.25) ==
        doctest::Approx(oracle_h_quarter).epsilon(1e-12));
}

TEST_CASE("upper tail at zero is the full gamma value") {
  for (double beta : {0.4, 1.0, 2.0, 2.5, 7.0}) {
    const double full = std::tgamma(beta);
    CHECK(std::abs(gamma_upper(beta, 0.0) - full) <= 1e-14 * full);
  }
}

TEST_CASE("upper and lower pieces sum to the full gamma value") {
  for (double beta : {0.4, 1.0, 2.5, 7.0}) {
    for (double t : {0.0, 0.3, 1.0, 3.7, 20.0}) {
      const double full = std::tgamma(beta);
      const double sum = gamma_upper(beta, t) + gamma_lower(beta, t);
      CHECK(sum == doctest::Approx(full).epsilon(1e-12));
    }
  }
}

TEST_CASE("upper tail decreases strictly in t") {
  for (double beta : {0.5, 1.0, 3.0}) {
    double prev = gamma_upper(beta, 0.0);
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0}) {
      const double cur = gamma_upper(beta, t);
      CHECK(cur < prev);
      CHECK(cur > 0.0);
      prev = cur;
    }
  }
}

TEST_CASE("inverse round-trips through the forward map") {
  for (double beta : {0.5, 1.0, 2.0, 4.3}) {
    for (double g : {0.1, 1.0, 5.0, 30.0}) {
      const double u = gamma_upper(beta, g);
      CHECK(inverse_gamma_upper(beta, u) == doctest::Approx(g).epsilon(1e-7));
    }
  }
}

TEST_CASE("inverse at unit shape is an exact logarithm") {
  // gamma_upper(1, g) = e^{-g}, so the inverse is log(1/u).
  for (double u : {1e-2, 1e-4, 1e-8}) {
    const double oracle = std::log(1.0 / u);
    CHECK(std::abs(inverse_gamma_upper(1.0, u) - oracle) <= 1e-9);
  }
}

TEST_CASE("inverse at shape two approaches the logarithm slowly") {
  // Solving (1+g)e^{-g} = u gives g = log(1/u) + log(1+g); the correction
  // term decays only logarithmically, so the ratio to log(1/u) stays
  // noticeably above 1 far into the tail.  Fixed-point oracles:
  //   u = 1e-8  -> g = 21.535...,  ratio 1.1691
  //   u = 1e-40 -> g = 96.685...,  ratio 1.0497
  auto fixed_point = [](double u) {
    double g = std::log(1.0 / u);
    for (int i = 0; i < 60; ++i) g = std::log(1.0 / u) + std::log1p(g);
    return g;
  };
  const double oracle_8 = fixed_point(1e-8);
  const double oracle_40 = fixed_point(1e-40);

  const double g8 = inverse_gamma_upper(2.0, 1e-8);
  const double g40 = inverse_gamma_upper(2.0, 1e-40);
  CHECK(g8 == doctest::Approx(oracle_8).epsilon(1e-8));
  CHECK(g40 == doctest::Approx(oracle_40).epsilon(1e-8));

  const double ratio_8 = g8 / std::log(1e8);
  const double ratio_40 = g40 / std::log(1e40);
  CHECK(ratio_8 == doctest::Approx(1.1691).epsilon(2e-3));
  CHECK(ratio_40 == doctest::Approx(1.0497).epsilon(2e-3));
  CHECK(ratio_40 < ratio_8);  // monotone approach to 1, but still ~5% off
}

TEST_CASE("domain violations are rejected") {
  CHECK_THROWS(gamma_upper(0.0, 1.0));
  CHECK_THROWS(gamma_upper(-1.0, 1.0));
  CHECK_THROWS(gamma_upper(1.0, -0.5));
  CHECK_THROWS(gamma_lower(0.0, 1.0));
  CHECK_THROWS(inverse_gamma_upper(1.0, 0.0));
  CHECK_THROWS(inverse_gamma_upper(1.0, -1.0));
  CHECK_THROWS(inverse_gamma_upper(1.0, 2.0 * std::tgamma(1.0)));
}
