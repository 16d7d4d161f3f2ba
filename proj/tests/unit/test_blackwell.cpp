#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <bcleak/blackwell.hpp>
#include <bcleak/random.hpp>
#include <bcleak/regions.hpp>
#include <bcleak/search.hpp>

#include "../support/oracle.hpp"

using namespace bcleak;

namespace {

RatePolytope det_region(double a, double b, LeakagePair leak) {
  return named_region_polytope(RegionId::det, JointPmf({{"X", 3}}, {a, b, 1 - a - b}), blackwell(), leak);
}

FrontierCurve swapped(const FrontierCurve& f) {
  StaircaseBuilder b;
  for (const auto& q : f.points) b.add(q.r2, q.r1, q.provenance);
  return b.build([&](std::size_t k) { return f.sources.at(k); });
}

}  // namespace

TEST_SUITE("blackwell") {
  TEST_CASE("closed form agrees with the generic evaluator") {
    for (std::uint64_t k = 0; k < 200; ++k) {
      Rng rng(stream_seed(51, k));
      const auto w = rng.flat_dirichlet(3);
      const LeakagePair leak{rng.index(3) ? rng.uniform(0, 1) : kInfinity, rng.index(3) ? rng.uniform(0, 1) : kInfinity};
      const RatePolytope closed = bwc_polytope({w[0], w[1]}, leak);
      const RatePolytope generic = det_region(w[0], w[1], leak);
      for (const auto& h : generic.halfspaces) {
        const Halfspace* g = closed.find(h.label);
        REQUIRE(g != nullptr);
        CHECK(std::abs(g->rhs - h.rhs) < 1e-9);
      }
      CHECK(closed.halfspaces.size() == generic.halfspaces.size());
      const JointPmf joint = induce_joint(JointPmf({{"X", 3}}, {w[0], w[1], w[2]}), blackwell());
      CHECK(std::abs(bwc_lstar({w[0], w[1]}) - mutual_information(joint, {"Y1"}, {"Y2"})) < 1e-9);
    }
  }

  TEST_CASE("L star values") {
    CHECK(std::abs(bwc_lstar({1.0 / 3, 1.0 / 3}) - oracle::Bwc{1.0 / 3, 1.0 / 3}.i_y1y2()) < 1e-12);
    CHECK(std::abs(bwc_lstar({1.0 / 3, 1.0 / 3}) - 0.251630) < 1e-6);
    CHECK(std::abs(bwc_lstar({0.4, 0.0})) < 1e-12);
    CHECK(std::abs(bwc_lstar({0.0, 0.4})) < 1e-12);
  }

  TEST_CASE("symmetric threshold at zero leakage sits at the golden-section input") {
    // Oracle: fine scan of the symmetric input t for the largest H(Y1|Y2) + H(Y2|Y1),
    // the support of the (0,0) region along the diagonal.
    double best_t = 0, best = -1;
    for (int k = 1; k < 500000; ++k) {
      const double t = 0.5 * k / 500000.0;
      const oracle::Bwc b{t, t};
      const double v = b.h_y1_given_y2() + b.h_y2_given_y1();
      if (v > best) {
        best = v;
        best_t = t;
      }
    }
    const ThresholdResult r = bwc_saturation_threshold(0.0);
    CHECK(std::abs(r.argmax.alpha - best_t) < 1e-4);
    CHECK(std::abs(r.argmax.beta - best_t) < 1e-4);
    CHECK(std::abs(r.lstar - oracle::Bwc{best_t, best_t}.i_y1y2()) < 1e-6);
  }

  TEST_CASE("threshold never exceeds the largest boundary mutual information") {
    for (double l : {0.0, 0.1, 0.4}) {
      const ThresholdResult r = bwc_saturation_threshold(l);
      for (const auto& p : r.boundary) CHECK(bwc_lstar(p) <= r.lstar + 1e-12);
      CHECK(r.lstar == doctest::Approx(bwc_lstar(r.argmax)).epsilon(1e-12));
    }
  }

  TEST_CASE("sum-rate curve") {
    std::vector<double> grid;
    for (int k = 0; k <= 80; ++k) grid.push_back(0.0025 * k);
    const SumRateCurve s = bwc_sumrate_curve(grid);
    CHECK(std::abs(s.plateau - std::log2(3.0)) < 1e-4);
    CHECK(std::abs(s.sum_rate.back() - std::log2(3.0)) < 1e-4);
    for (std::size_t i = 1; i < s.sum_rate.size(); ++i) CHECK(s.sum_rate[i] >= s.sum_rate[i - 1] - 1e-12);
    // slope 2 while both leakage rows bind
    for (std::size_t i = 1; i < s.leak.size() && s.leak[i] <= 0.075; ++i)
      CHECK(std::abs((s.sum_rate[i] - s.sum_rate[i - 1]) / (s.leak[i] - s.leak[i - 1]) - 2.0) < 1e-6);
    // Zero-leakage value: twice the largest H(Y1|Y2) along the diagonal (oracle scan).
    double best = 0;
    for (int k = 1; k < 100000; ++k) {
      const double t = 0.5 * k / 100000.0;
      best = std::max(best, 2 * oracle::Bwc{t, t}.h_y1_given_y2());
    }
    CHECK(std::abs(s.sum_rate.front() - best) < 1e-6);
  }

  TEST_CASE("property: sum rate is constant above the reported breakpoint") {
    std::vector<double> grid;
    for (int k = 0; k <= 80; ++k) grid.push_back(0.0025 * k);
    const SumRateCurve s = bwc_sumrate_curve(grid);
    for (std::size_t i = 0; i < s.leak.size(); ++i)
      if (s.leak[i] > s.breakpoint) CHECK(std::abs(s.sum_rate[i] - s.plateau) < 1e-6);
  }

  TEST_CASE("frontier intercepts and secrecy corner") {
    const FrontierCurve open = bwc_frontier(LeakagePair::infinite());
    double max_r1 = 0;
    for (const auto& q : open.points) max_r1 = std::max(max_r1, q.r1);
    CHECK(std::abs(max_r1 - 1.0) < 1e-9);

    const FrontierCurve m1 = bwc_frontier({0.0, kInfinity});
    const FrontierCurve ref = union_frontier(RegionId::m1secret, blackwell(), {}, {12, 256, 8, 1}, {3, 1});
    // Time sharing makes both regions convex; compare hull support values, which unlike
    // staircase coverage are insensitive to the vertical tangent at r1 = 1.
    auto hull_support = [](const FrontierCurve& f, const std::array<double, 2>& d) {
      double best = 0.0;
      for (const auto& q : f.points) best = std::max(best, d[0] * q.r1 + d[1] * q.r2);
      return best;
    };
    for (const auto& d : quarter_fan(26)) CHECK(std::abs(hull_support(m1, d) - hull_support(ref, d)) < 1e-2);
  }

  TEST_CASE("(L,L) frontiers are nested and symmetric") {
    const FrontierCurve f05 = bwc_frontier({0.05, 0.05}, 1e-3);
    const FrontierCurve f10 = bwc_frontier({0.1, 0.1}, 1e-3);
    CHECK(frontier_dominates(f10, f05, 1e-3));
    CHECK(frontier_distance(f10, swapped(f10)) < 1e-3);
  }

  TEST_CASE("shapes") {
    for (auto [a, b] : {std::pair{1.0 / 3, 1.0 / 3}, std::pair{0.2, 0.5}}) {
      const BwcShapes s = bwc_shapes({a, b});
      // (0,0) rectangle = intersection of the two single-secrecy regions
      for (const auto& d : quarter_fan(26)) {
        const double both = support_value(s.both_secret, d);
        RatePolytope inter = s.m1_secret;
        for (const auto& h : s.m2_secret.halfspaces) inter.halfspaces.push_back(h);
        CHECK(std::abs(both - support_value(inter, d)) < 1e-12);
      }
      for (const RatePolytope* r : {&s.m1_secret, &s.m2_secret, &s.both_secret})
        for (const auto& v : vertices(*r)) CHECK(contains(s.no_secrecy, v));
    }
    const BwcShapes sym = bwc_shapes({0.3, 0.3});
    for (const auto& d : quarter_fan(26)) {
      const std::array<double, 2> e{d[1], d[0]};
      CHECK(std::abs(support_value(sym.m1_secret, d) - support_value(sym.m2_secret, e)) < 1e-12);
      CHECK(std::abs(support_value(sym.no_secrecy, d) - support_value(sym.no_secrecy, e)) < 1e-12);
    }
  }
}
