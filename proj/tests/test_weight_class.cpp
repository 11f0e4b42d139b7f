#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "modspace/weight.hpp"
#include "modspace/weight_class.hpp"

using namespace modspace;

TEST_CASE("probe grid is sorted, deduplicated and spans the range") {
  const ProbeGrid pg = ProbeGrid::standard(1e4);
  REQUIRE(pg.points.size() > 100);
  CHECK(std::is_sorted(pg.points.begin(), pg.points.end()));
  CHECK(std::adjacent_find(pg.points.begin(), pg.points.end()) ==
        pg.points.end());
  CHECK(pg.points.front() >= 0.0);
  CHECK(pg.points.front() <= 0.1);
  CHECK(pg.points.back() == doctest::Approx(1e4).epsilon(1e-9));
  CHECK(pg.t_max == doctest::Approx(1e4));
  // Small probes below 1 exist (the linear section).
  CHECK(pg.points[1] < 1.0);
}

TEST_CASE("index estimate is exact for a pure power") {
  // Oracle: x (x^{1/2})' / x^{1/2} = 1/2 at every x, so the fit has no
  // residual to absorb.
  const IndexEstimate est = estimate_index(parse_weight("sqrt"), 1e4);
  CHECK(est.alpha == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(est.uncertainty <= 1e-5);
}

TEST_CASE("index estimates match the analytic limits") {
  // x w'/w for (1+x^2)^{1/4} is (x^2/2)/(1+x^2) -> 1/2; for the bracket
  // it is x^2/(1+x^2) -> 1; for log.loglog it decays like 1/log x -> 0.
  CHECK(estimate_index(parse_weight("gevrey:s=2"), 1e4).alpha ==
        doctest::Approx(0.5).epsilon(0.02));
  CHECK(estimate_index(parse_weight("gevrey:s=4"), 1e4).alpha ==
        doctest::Approx(0.25).epsilon(0.04));
  CHECK(estimate_index(parse_weight("bracket"), 1e4).alpha ==
        doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(estimate_index(parse_weight("loglog"), 1e4).alpha) <= 0.01);
}

TEST_CASE("admissible weights pass every condition") {
  const ProbeGrid pg = ProbeGrid::standard(1e4);

  const ClassReport g2 = check_conditions(parse_weight("gevrey:s=2"), pg);
  CHECK(g2.all_pass());
  CHECK(g2.subclass == "W1");
  CHECK(g2.verdicts.size() == 6);

  const ClassReport g4 = check_conditions(parse_weight("gevrey:s=4"), pg);
  CHECK(g4.all_pass());
  CHECK(g4.subclass == "W1");

  const ClassReport ll = check_conditions(parse_weight("loglog"), pg);
  CHECK(ll.all_pass());
  CHECK(ll.subclass == "W0");
}

TEST_CASE("control weights fail the designed conditions") {
  const ProbeGrid pg = ProbeGrid::standard(1e4);

  // Index 1 violates the sub-unit index requirement but nothing else
  // about the bracket is wrong.
  const ClassReport br = check_conditions(parse_weight("bracket"), pg);
  CHECK(!br.all_pass());
  CHECK(br.verdicts.at("A1").verdict == Verdict::fail);
  CHECK(br.verdicts.at("A2").verdict == Verdict::pass);
  CHECK(br.verdicts.at("A3").verdict == Verdict::pass);

  // The linear ramp starts at 0 (below the floor) and keeps slope 1 at 0+.
  const ClassReport lin = check_conditions(parse_weight("linear"), pg);
  CHECK(!lin.all_pass());
  CHECK(lin.verdicts.at("A2").verdict == Verdict::fail);
  CHECK(lin.verdicts.at("A5").verdict == Verdict::fail);

  // x^{1/2} also starts at 0.
  const ClassReport sq = check_conditions(parse_weight("sqrt"), pg);
  CHECK(sq.verdicts.at("A2").verdict == Verdict::fail);
}

TEST_CASE("thresholds collapse to the floor for a pure power") {
  // Oracle: the growth ratio of x^{1/2} is 1/2 identically, so the first
  // positive probe already certifies both thresholds and only the floor
  // B = 1 remains in the max.
  const ProbeGrid pg = ProbeGrid::standard(1e4);
  const Thresholds th = compute_thresholds(parse_weight("sqrt"), pg, 0.5);
  REQUIRE(th.valid);
  CHECK(th.x0 <= 0.1);
  CHECK(th.x1 <= 0.1);
  CHECK(th.x_tilde == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("threshold assembly respects its own components") {
  const WeightFunction w = parse_weight("gevrey:s=2");
  const ProbeGrid pg = ProbeGrid::standard(1e4);
  const IndexEstimate est = estimate_index(w, 1e4);
  const Thresholds th = compute_thresholds(w, pg, est.alpha);
  REQUIRE(th.valid);
  CHECK(th.x_tilde >= th.tau - 1e-12);
  CHECK(th.x_tilde >= 2.0 * th.x0 - 1e-12);
  CHECK(th.x_tilde >= 2.0 * th.x1 - 1e-12);
  CHECK(th.x_tilde >= 1.0 - 1e-12);
  // Oracle: w'' of (1+x^2)^{1/4} is proportional to (1 - x^2/2), so the
  // last curvature sign change sits at sqrt(2).
  CHECK(th.tau == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
}

TEST_CASE("no growth threshold exists for an index-1 weight") {
  const WeightFunction w = parse_weight("bracket");
  const ProbeGrid pg = ProbeGrid::standard(1e4);
  const IndexEstimate est = estimate_index(w, 1e4);
  const Thresholds th = compute_thresholds(w, pg, est.alpha);
  CHECK(!th.valid);
}

TEST_CASE("admissible region excludes exactly the near-diagonal strip") {
  // x_tilde = 1.5 excludes y <= x < 3.
  CHECK(!subadditivity_admissible(1.0, 0.5, 1.5));
  CHECK(!subadditivity_admissible(2.9, 2.9, 1.5));
  CHECK(!subadditivity_admissible(0.0, 0.0, 1.5));
  CHECK(subadditivity_admissible(4.0, 0.5, 1.5));   // x beyond the strip
  CHECK(subadditivity_admissible(1.0, 2.0, 1.5));   // above the diagonal
  CHECK(subadditivity_admissible(3.0, 1.0, 1.5));   // boundary x = 2 x_tilde
}

TEST_CASE("gain constant is certified and survives refinement") {
  const WeightFunction w = parse_weight("gevrey:s=2");
  const SubadditivityCertificate cert =
      find_subadditivity_s(w, 1.0, 20.0, 0.5);
  REQUIRE(cert.valid);
  CHECK(cert.s > 0.2);
  CHECK(cert.s <= 1.0);
  CHECK(cert.worst_margin >= -1e-12);

  // Same box, same step: identical outcome.
  CHECK(verify_subadditivity(w, cert, 20.0, 0.5).empty());
  // Doubling the resolution on the same box keeps the certificate.
  CHECK(verify_subadditivity(w, cert, 20.0, 0.25).empty());

  // Halving the step may lower the certified s but must not raise it
  // beyond the bisection resolution.
  const SubadditivityCertificate fine =
      find_subadditivity_s(w, 1.0, 20.0, 0.25);
  REQUIRE(fine.valid);
  CHECK(fine.s <= cert.s + 1.5e-3);
}

TEST_CASE("overclaimed gain fails on the half-diagonal") {
  // Oracle: at y = x/2 the margin is (2-s) w(x/2) - w(x); for s = 1 and
  // the fourth-root weight, w(x)/w(x/2) -> sqrt(2) > 1, so large x violate.
  const WeightFunction w = parse_weight("gevrey:s=2");
  SubadditivityCertificate forged = find_subadditivity_s(w, 1.0, 20.0, 0.5);
  REQUIRE(forged.valid);
  forged.s = 1.0;
  const auto violations = verify_subadditivity(w, forged, 20.0, 0.5);
  CHECK(!violations.empty());
  for (const auto& v : violations) {
    CHECK(v.margin < 0.0);
    CHECK(subadditivity_admissible(v.x, v.y, forged.x_tilde));
  }
}

TEST_CASE("linear weight admits no positive gain") {
  // w(x) = x turns the inequality into 0 <= -s min(...), impossible for
  // any s > 0 once min(...) > 0.
  const SubadditivityCertificate cert =
      find_subadditivity_s(parse_weight("linear"), 1.0, 20.0, 0.5);
  CHECK(!cert.valid);
  CHECK(cert.s == 0.0);
  CHECK(subadditivity_admissible(cert.violation_x, cert.violation_y, 1.0));
}

TEST_CASE("doubling constant for the pure square root") {
  // Oracle: 2 sqrt(t) <= sqrt(D t) + D needs sqrt(t)(2 - sqrt(D)) <= D;
  // D = 4 works everywhere, and on [0, 1e4] the worst probe t = 1e4
  // allows slightly less.
  const DoublingResult res = find_doubling_D(parse_weight("sqrt"), 1e4);
  REQUIRE(res.found);
  CHECK(res.D > 3.0);
  CHECK(res.D <= 4.02);
  const WeightFunction w = parse_weight("sqrt");
  for (double t : {0.0, 1.0, 100.0, 1e4})
    CHECK(2.0 * w(t) <= w(res.D * t) + res.D + 1e-9);
}

TEST_CASE("doubling constant exists for power-type weights") {
  const DoublingResult res = find_doubling_D(parse_weight("gevrey:s=2"), 1e4);
  REQUIRE(res.found);
  CHECK(res.D >= 1.0);
  CHECK(res.D < 16.0);
}

TEST_CASE("doubling constant drifts upward for the iterated log") {
  const WeightFunction w = parse_weight("loglog");
  const DoublingResult d4 = find_doubling_D(w, 1e4);
  const DoublingResult d5 = find_doubling_D(w, 1e5);
  const DoublingResult d6 = find_doubling_D(w, 1e6);
  REQUIRE(d4.found);
  REQUIRE(d5.found);
  REQUIRE(d6.found);
  // No stabilization: the working constant keeps climbing with the
  // probe range instead of settling.
  CHECK(d5.D >= 1.15 * d4.D);
  CHECK(d6.D >= 1.15 * d5.D);
}

TEST_CASE("shell sums of the damped weight decay geometrically") {
  const WeightFunction w = parse_weight("gevrey:s=2");

  const SeriesProxy one = series_convergence_proxy(w, 0.5, 2.0, 1, 40);
  CHECK(one.geometric);
  REQUIRE(one.shell_increments.size() >= 40);
  // Oracle: 1-D shell k holds the two points +-k, so the increment is
  // 2 exp(-s q' (1+k^2)^{1/4}); shell 0 is exp(-s q' w(0)) = e^{-1}.
  CHECK(one.shell_increments[0] ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(one.shell_increments[2] ==
        doctest::Approx(2.0 * std::exp(-std::pow(5.0, 0.25))).epsilon(1e-12));

  const SeriesProxy two = series_convergence_proxy(w, 0.5, 2.0, 2, 20);
  CHECK(two.geometric);
  // Oracle: 2-D shell 1 has four side points at |m| = 1 and four corners
  // at |m| = sqrt(2).
  const double side = std::exp(-std::pow(2.0, 0.25));
  const double corner = std::exp(-std::pow(3.0, 0.25));
  CHECK(two.shell_increments[1] ==
        doctest::Approx(4.0 * side + 4.0 * corner).epsilon(1e-12));
}
