#include <doctest.h>

#include <cmath>

#include <bcleak/blackwell.hpp>
#include <bcleak/frontier.hpp>
#include <bcleak/regions.hpp>
#include <bcleak/search.hpp>

using namespace bcleak;

namespace {

FrontierCurve curve(std::vector<std::array<double, 2>> pts) {
  StaircaseBuilder b;
  for (std::size_t i = 0; i < pts.size(); ++i) b.add(pts[i][0], pts[i][1], i);
  return b.build([](std::size_t) { return JointPmf::uniform({{"X", 1}}); });
}

RatePolytope pentagon() {
  RatePolytope p;
  p.axes = {"R1", "R2"};
  p.halfspaces = {{{1, 0}, 1.0, "a"}, {{0, 1}, 0.8, "b"}, {{1, 1}, 1.5, "c"}, {{-1, 0}, 0, "n1"}, {{0, -1}, 0, "n2"}};
  return p;
}

}  // namespace

TEST_SUITE("frontier") {
  TEST_CASE("staircase keeps only nondominated points") {
    const FrontierCurve f = curve({{0.1, 0.9}, {0.5, 0.5}, {0.4, 0.4}, {0.9, 0.1}, {0.5, 0.6}});
    REQUIRE(f.points.size() == 3);
    for (std::size_t i = 1; i < f.points.size(); ++i) {
      CHECK(f.points[i].r1 > f.points[i - 1].r1);
      CHECK(f.points[i].r2 < f.points[i - 1].r2);
    }
    CHECK(f.sources.size() == 3);
  }

  TEST_CASE("height and coverage") {
    const FrontierCurve f = curve({{0.0, 1.0}, {1.0, 0.0}});
    // different provenance: staircase, no segment
    CHECK(frontier_height(f, 0.5) == doctest::Approx(0.0));
    CHECK(covered(f, 0.0, 1.0, 1e-12));
    CHECK_FALSE(covered(f, 0.5, 0.5, 1e-3));
    CHECK(frontier_height(f, 1.5) == -kInfinity);
  }

  TEST_CASE("dominance") {
    const FrontierCurve a = curve({{0.0, 1.0}, {0.5, 0.7}, {1.0, 0.2}});
    CHECK_FALSE(frontier_dominates(a, a, 0.0));
    const FrontierCurve up = curve({{0.0, 1.01}, {0.5, 0.71}, {1.0, 0.21}});
    CHECK(frontier_dominates(up, a, 0.005));
    CHECK_FALSE(frontier_dominates(a, up, 0.005));
    CHECK(frontier_distance(a, a) == doctest::Approx(0.0));
  }

  TEST_CASE("fingerprint is stable and distinguishes tensors") {
    const JointPmf a({{"X", 2}}, {0.25, 0.75});
    const JointPmf b({{"X", 2}}, {0.75, 0.25});
    CHECK(fingerprint(a) == fingerprint(JointPmf({{"X", 2}}, {0.25, 0.75})));
    CHECK(fingerprint(a) != fingerprint(b));
    CHECK(fingerprint(a).size() == 16);
  }
}

TEST_SUITE("search") {
  TEST_CASE("sampler determinism and validity") {
    const std::vector<Axis> axes{{"U", 2}, {"X", 3}};
    const SearchBudget budget{2, 1, 1, 99};
    const auto a = sample_aux_chains(axes, budget);
    const auto b = sample_aux_chains(axes, budget);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(std::equal(a[k].tensor().begin(), a[k].tensor().end(), b[k].tensor().begin()));
      double s = 0;
      for (double p : a[k].tensor()) s += p;
      CHECK(std::abs(s - 1.0) < 1e-12);
    }
    const auto g = sample_aux_chains({{"X", 2}}, {2, 1, 1, 1});
    bool v0 = false, v1 = false;
    for (const auto& p : g) {
      v0 = v0 || p.tensor()[0] == 1.0;
      v1 = v1 || p.tensor()[1] == 1.0;
    }
    CHECK(v0);
    CHECK(v1);
    CHECK_THROWS_AS(AuxSampler(axes, SearchBudget{0, 1, 1, 1}), std::invalid_argument);
  }

  TEST_CASE("a single distribution yields its own staircase") {
    const AuxSampler one = AuxSampler::grid({{"X", 1}}, 1);
    REQUIRE(one.size() == 1);
    const RatePolytope p = pentagon();
    const FrontierCurve f = frontier_search(one, [&](const JointPmf&) { return p; }, 4, 1);
    for (const auto& q : f.points) CHECK(contains(p, std::vector<double>{q.r1, q.r2}));
    for (const auto& v : vertices(p)) CHECK(covered(f, v[0], v[1], 1e-12));
    CHECK(covered(f, 0.7, 0.8, 0.0));
    CHECK(covered(f, 1.0, 0.5, 0.0));
  }

  TEST_CASE("Blackwell deterministic region reaches one bit on each axis") {
    const FrontierCurve f = union_frontier(RegionId::det, blackwell(), LeakagePair::infinite(), {20, 16, 8, 1});
    double max_r1 = 0.0;
    for (const auto& q : f.points) max_r1 = std::max(max_r1, q.r1);
    CHECK(std::abs(max_r1 - 1.0) < 1e-9);
  }

  TEST_CASE("larger leakage budget dominates") {
    const SearchBudget budget{20, 16, 8, 1};
    const FrontierCurve hi = union_frontier(RegionId::det, blackwell(), {0.4, 0.4}, budget);
    const FrontierCurve lo = union_frontier(RegionId::det, blackwell(), {0.0, 0.0}, budget);
    CHECK(frontier_dominates(hi, lo, 1e-3));
  }

  TEST_CASE("property: frontiers are identical across worker counts") {
    const SearchBudget budget{6, 24, 4, 7};
    const FrontierCurve a = union_frontier(RegionId::sd0, blackwell(), {0.1, 0.2}, budget, {2, 1});
    const FrontierCurve b = union_frontier(RegionId::sd0, blackwell(), {0.1, 0.2}, budget, {2, 4});
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      CHECK(a.points[i].r1 == b.points[i].r1);
      CHECK(a.points[i].r2 == b.points[i].r2);
      CHECK(fingerprint(a.sources[a.points[i].provenance]) == fingerprint(b.sources[b.points[i].provenance]));
    }
  }

  TEST_CASE("property: more samples never lower the frontier") {
    for (std::uint64_t seed : {1, 2, 3}) {
      const SearchBudget small{3, 16, 4, seed};
      SearchBudget large = small;
      large.random_samples *= 2;
      const FrontierCurve a = union_frontier(RegionId::sd0, blackwell(), {0.05, 0.3}, small);
      const FrontierCurve b = union_frontier(RegionId::sd0, blackwell(), {0.05, 0.3}, large);
      for (const auto& q : a.points) CHECK(covered(b, q.r1, q.r2, 1e-12));
    }
  }

  TEST_CASE("property: provenance reproduces every frontier point") {
    const Dmbc c = blackwell();
    const LeakagePair leak{0.2, 0.1};
    const FrontierCurve f = union_frontier(RegionId::sd0, c, leak, {4, 32, 4, 3});
    for (const auto& q : f.points) {
      const RatePolytope p = named_region_polytope(RegionId::sd0, f.sources.at(q.provenance), c, leak);
      CHECK(contains(p, std::vector<double>{q.r1, q.r2}));
    }
  }
}
