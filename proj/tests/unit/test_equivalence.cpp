#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <bcleak/equivalence.hpp>
#include <bcleak/random.hpp>
#include <bcleak/regions.hpp>

using namespace bcleak;

namespace {

double gap_a(const JointPmf& p) {
  const JointPmf j = induce_joint(p, blackwell());
  return conditional_mutual_information(j, {"V"}, {"Y2"}, {"W"}) - conditional_mutual_information(j, {"V"}, {"Y1"}, {"W"});
}

// A distribution whose private-rate gap is clearly positive.
JointPmf positive_gap_wvx(Rng& rng) {
  for (;;) {
    const JointPmf p = random_joint({{"W", 2}, {"V", 2}, {"X", 3}}, rng);
    if (gap_a(p) > 0.02) return p;
  }
}

bool valid(const JointPmf& p) {
  double s = 0;
  for (double q : p.tensor()) {
    if (q < 0) return false;
    s += q;
  }
  return std::abs(s - 1) < 1e-9;
}

}  // namespace

TEST_SUITE("equivalence") {
  TEST_CASE("lift A endpoints") {
    Rng rng(3);
    const Dmbc c = blackwell();
    const JointPmf p = positive_gap_wvx(rng);
    const double gap = gap_a(p);
    const RatePolytope alt = named_region_polytope(RegionId::m2secret_alt, p, c, {});
    // gamma = 0: R2 at the gap
    const double r1_at_gap = std::min(alt.find("r1")->rhs, alt.find("sum")->rhs - gap);
    const LiftReport full = m2secret_lift(p, {std::max(0.0, r1_at_gap) * 0.5, gap}, c);
    CHECK(full.gamma == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(full.lambda == doctest::Approx(1.0));
    CHECK(full.member());
    // gamma = full gap: R2 = 0
    const LiftReport none = m2secret_lift(p, {0.1 * alt.find("r1")->rhs, 0.0}, c);
    CHECK(none.gamma == doctest::Approx(gap));
    CHECK(none.lambda == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(none.member());
    CHECK_THROWS_AS(m2secret_lift(p, {5.0, 5.0}, c), std::invalid_argument);
  }

  TEST_CASE("lift B lambda is linear in gamma") {
    Rng rng(9);
    const Dmbc c = random_channel(3, 2, 2, rng);
    for (int tries = 0; tries < 200; ++tries) {
      const JointPmf wu = random_joint({{"W", 2}, {"U", 2}}, rng);
      const JointPmf p = extend_markov(wu, "U", {"X", 3}, rng);
      const JointPmf j = induce_joint(p, c);
      const double gap =
          conditional_mutual_information(j, {"U"}, {"Y1"}, {"W"}) - conditional_mutual_information(j, {"U"}, {"Y2"}, {"W"});
      if (gap < 0.01) continue;
      double last = 2.0;
      for (double frac : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double r1 = gap * (1 - frac);
        const LiftReport r = ck_lift(p, {0.0, r1}, c);
        CHECK(std::abs(r.gamma - gap * frac) < 1e-12);
        CHECK(std::abs(r.lambda - (1 - frac)) < 1e-9);
        CHECK(r.lambda <= last);
        last = r.lambda;
        CHECK(r.member());
        CHECK(r.markov_defect < 1e-9);
        CHECK(valid(*r.lifted));
      }
      return;
    }
    FAIL("no distribution with a positive gap");
  }

  TEST_CASE("property: lifted distributions are valid and members") {
    SuiteOptions o;
    o.trials = 100;
    const CheckResult a = lift_suite_a(o);
    const CheckResult b = lift_suite_b(o);
    CHECK(a.pass);
    CHECK(b.pass);
    Rng rng(21);
    for (int k = 0; k < 50; ++k) {
      const JointPmf p = positive_gap_wvx(rng);
      const RatePolytope alt = named_region_polytope(RegionId::m2secret_alt, p, blackwell(), {});
      const auto vs = vertices(alt);
      for (const auto& v : vs) {
        const LiftReport r = m2secret_lift(p, {v[0], v[1]}, blackwell());
        CHECK(valid(*r.lifted));
        CHECK(r.lambda >= 0.0);
        CHECK(r.lambda <= 1.0);
        CHECK(r.member());
      }
    }
  }

  TEST_CASE("deterministic channel check") {
    const Dmbc c = blackwell();
    CHECK(det_match_check(c, Pmf({1.0 / 3, 1.0 / 3, 1.0 / 3}), {0.0, 0.0}));
    CHECK(det_match_check(c, Pmf({1.0 / 3, 1.0 / 3, 1.0 / 3}), LeakagePair::infinite()));
    CHECK(det_match_check(c, Pmf({0.2, 0.5, 0.3}), {0.1, 0.3}));
    Rng rng(4);
    CHECK_THROWS_AS(det_match_check(random_channel(3, 2, 2, rng), Pmf({0.2, 0.5, 0.3}), {}), std::invalid_argument);
  }

  TEST_CASE("reduction suite passes and reports every check") {
    SuiteOptions o;
    o.trials = 100;
    const SuiteReport r = reduction_suite(o);
    CHECK(r.checks.size() == 12);
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.pass);
      CHECK(c.max_deviation <= 1e-9);
    }
    const auto j = r.to_json();
    CHECK(j["checks"].size() == 12);
    CHECK(j["all_pass"].get<bool>());
  }

  TEST_CASE("a channel that is not semi-deterministic fails the named checks") {
    SuiteOptions o;
    o.trials = 5;
    Dmbc c = blackwell();
    // move a little mass in row x1 so that Y1 is no longer a function of X
    c.kernel[(1 * 2 + 1) * 2 + 0] -= 0.01;
    c.kernel[(1 * 2 + 0) * 2 + 0] += 0.01;
    const Dmbc noisy = c;
    o.channel = noisy;
    const SuiteReport r = reduction_suite(o);
    const auto failed = r.failed();
    CHECK_FALSE(failed.empty());
    CHECK(std::find(failed.begin(), failed.end(), "sd0_to_bothsecret") != failed.end());
    CHECK_FALSE(sd_substitution_suite(o).pass);
  }
}
