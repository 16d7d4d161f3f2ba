#include <doctest.h>

#include <algorithm>
#include <chrono>

#include <bcleak/fme.hpp>
#include <bcleak/ineq.hpp>
#include <bcleak/random.hpp>

using namespace bcleak;

namespace {

InfoSymbol Hs(const char* name) { return InfoSymbol::entropy({name}); }

// Numeric value of a symbol expression under per-symbol rational values.
Rational eval_rhs(const SymbolExpr& e, const std::map<InfoSymbol, Rational>& values) {
  Rational s = 0;
  for (const auto& [sym, c] : e) s += c * values.at(sym);
  return s;
}

Rational coef(const Inequality& q, const std::string& v) {
  auto it = q.lhs.find(v);
  return it == q.lhs.end() ? Rational(0) : it->second;
}

bool satisfied(const Inequality& q, const std::map<std::string, Rational>& point,
               const std::map<InfoSymbol, Rational>& values) {
  Rational lhs = 0;
  for (const auto& [v, c] : q.lhs) lhs += c * point.at(v);
  const Rational rhs = eval_rhs(q.rhs, values);
  return q.strict ? lhs < rhs : lhs <= rhs;
}

// Random system over x1..xn with one private symbol per row.
IneqSystem random_system(Rng& rng, std::size_t nvars, std::size_t rows, std::map<InfoSymbol, Rational>& values) {
  IneqSystem sys;
  for (std::size_t i = 0; i < nvars; ++i) sys.variables.push_back("x" + std::to_string(i + 1));
  for (std::size_t k = 0; k < rows; ++k) {
    Inequality q;
    for (const auto& v : sys.variables) {
      const int a = static_cast<int>(rng.index(7)) - 3;
      if (a != 0) q.lhs[v] = a;
    }
    const InfoSymbol s = InfoSymbol::entropy({"Z" + std::to_string(k)});
    q.rhs[s] = static_cast<int>(rng.index(9)) - 2;
    values[s] = Rational(static_cast<int>(rng.index(9)), 2);
    sys.inequalities.push_back(std::move(q));
  }
  return sys;
}

}  // namespace

TEST_SUITE("fme") {
  TEST_CASE("parsing") {
    const IneqSystem a = parse_system("R1 + R2 <= I(U0,U1;Y1) + I(U2;Y2|U0) - I(U1;U2|U0)");
    CHECK(a.inequalities.size() == 1);
    CHECK(a.variables.size() == 2);
    const IneqSystem b = parse_system("Rp1 + Rp2 > I(U1;U2|U0)");
    REQUIRE(b.inequalities.size() == 1);
    CHECK(b.inequalities[0].strict);
    // stored as lhs < rhs
    CHECK(b.inequalities[0].lhs.at("Rp1") == -1);
    const IneqSystem c = parse_system("R1 <= I(U2;U1|U0)");
    const IneqSystem d = parse_system("R1 <= I(U1;U2|U0)");
    CHECK(c.inequalities[0].rhs == d.inequalities[0].rhs);
  }

  TEST_CASE("parse errors carry a location") {
    try {
      parse_system("vars: R1\nR1 <= I(U1;;Y1)\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() > 1);
    }
    CHECK_THROWS_AS(parse_system("R1 <= H(A|B"), ParseError);
    CHECK_THROWS_AS(parse_system("R1 =< H(A)"), ParseError);
  }

  TEST_CASE("render round trip") {
    const IneqSystem a = achievability_system();
    CHECK(parse_system(render_system(a)) == a);
    const IneqSystem in = inner_bound_system();
    CHECK(parse_system(render_system(in)) == in);
  }

  TEST_CASE("toy elimination") {
    const IneqSystem sys = parse_system("vars: x, r\nx <= H(A)\nx >= 0\nr - x <= H(B)\n");
    const IneqSystem out = fme_eliminate(sys, "x");
    CHECK(out.variables == std::vector<std::string>{"r"});
    REQUIRE(out.inequalities.size() == 2);
    bool sum_row = false, feasibility_row = false;
    for (const auto& q : out.inequalities) {
      if (q.lhs.size() == 1 && q.lhs.at("r") == 1 && q.rhs.size() == 2 && q.rhs.at(Hs("A")) == 1 &&
          q.rhs.at(Hs("B")) == 1)
        sum_row = true;
      if (q.lhs.empty() && q.rhs.size() == 1 && q.rhs.at(Hs("A")) > 0) feasibility_row = true;
    }
    CHECK(sum_row);
    CHECK(feasibility_row);
  }

  TEST_CASE("eliminating a variable that appears nowhere") {
    const IneqSystem sys = parse_system("vars: x, r\nr <= H(A)\nr >= 0\n");
    const IneqSystem out = fme_eliminate(sys, "x");
    CHECK(out.inequalities == sys.inequalities);
    CHECK_THROWS_AS(fme_eliminate(sys, "nope"), std::invalid_argument);
  }

  TEST_CASE("pruning") {
    CHECK(prune_redundant(parse_system("R1 <= I(A;B)\nR1 <= I(A;B)")).inequalities.size() == 1);
    const IneqSystem dom = prune_redundant(parse_system("R1 <= I(A;B)\nR1 <= I(A;B) + L1"));
    REQUIRE(dom.inequalities.size() == 1);
    CHECK(dom.inequalities[0].rhs.count(InfoSymbol::leakage(1)) == 0);
    CHECK(prune_redundant(parse_system("vars: R1\n0 <= I(A;B)")).inequalities.empty());
    // implied by a nonnegative combination
    const IneqSystem imp = prune_redundant(parse_system("R1 <= H(A)\nR2 <= H(B)\nR1 + R2 <= H(A) + H(B) + L1"));
    CHECK(imp.inequalities.size() == 2);
  }

  TEST_CASE("canonical equality") {
    const IneqSystem in = inner_bound_system();
    IneqSystem perm = in;
    std::reverse(perm.inequalities.begin(), perm.inequalities.end());
    CHECK(canonical_equal(in, perm));
    IneqSystem scaled = in;
    for (auto& [v, c] : scaled.inequalities[3].lhs) c *= 3;
    for (auto& [s, c] : scaled.inequalities[3].rhs) c *= 3;
    CHECK(canonical_equal(in, scaled));
    IneqSystem marton;
    marton.variables = in.variables;
    for (const auto& q : in.inequalities)
      if (q.rhs.count(InfoSymbol::leakage(1)) == 0 && q.rhs.count(InfoSymbol::leakage(2)) == 0)
        marton.inequalities.push_back(q);
    CHECK_FALSE(canonical_equal(marton, in));
  }

  TEST_CASE("achievability system shape") {
    const IneqSystem a = achievability_system();
    std::vector<std::string> vars = a.variables;
    std::sort(vars.begin(), vars.end());
    std::vector<std::string> expected = {"R0", "R1", "R2", "R10", "R20", "R11", "R22", "Rp1", "Rp2", "Rt1", "Rt2"};
    std::sort(expected.begin(), expected.end());
    CHECK(vars == expected);
    const Inequality covering = parse_system("Rp1 + Rp2 > I(U1;U2|U0)").inequalities[0];
    const Inequality leak = parse_system("R10 <= L1").inequalities[0];
    bool has_cover = false, has_leak = false;
    for (const auto& q : a.inequalities) {
      has_cover = has_cover || (q.lhs == covering.lhs && q.rhs == covering.rhs && q.strict);
      has_leak = has_leak || (q.lhs == leak.lhs && q.rhs == leak.rhs);
    }
    CHECK(has_cover);
    CHECK(has_leak);
  }

  TEST_CASE("achievability elimination lands on the inner bound plus the binning row") {
    const auto t0 = std::chrono::steady_clock::now();
    const IneqSystem derived = eliminate_all(achievability_system(), achievability_elimination_order());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(canonical_equal(derived, inner_bound_reference_system()));
    CHECK_FALSE(canonical_equal(derived, inner_bound_system()));
    CHECK(secs < 5.0);
  }

  TEST_CASE("property: strictness propagates from either parent") {
    for (std::uint64_t k = 0; k < 200; ++k) {
      Rng rng(stream_seed(21, k));
      std::map<InfoSymbol, Rational> values;
      IneqSystem sys = random_system(rng, 3, 4, values);
      for (auto& q : sys.inequalities) q.lhs.erase("x1");
      sys.inequalities[0].lhs["x1"] = 1 + static_cast<int>(rng.index(3));
      sys.inequalities[1].lhs["x1"] = -1 - static_cast<int>(rng.index(3));
      const bool s0 = rng.index(2) == 1, s1 = rng.index(2) == 1;
      sys.inequalities[0].strict = s0;
      sys.inequalities[1].strict = s1;
      const IneqSystem out = fme_eliminate(sys, "x1");
      REQUIRE(out.inequalities.size() == 3);
      CHECK(out.inequalities.back().strict == (s0 || s1));
      CHECK_FALSE(out.inequalities[0].strict);
    }
  }

  TEST_CASE("property: single-variable projection matches the interval oracle") {
    std::size_t feasible = 0, total = 0;
    for (std::uint64_t k = 0; k < 200; ++k) {
      Rng rng(stream_seed(23, k));
      std::map<InfoSymbol, Rational> values;
      const std::size_t nvars = 2 + rng.index(5), rows = 2 + rng.index(9);
      const IneqSystem sys = random_system(rng, nvars, rows, values);
      const std::string x = sys.variables[rng.index(nvars)];
      const IneqSystem out = fme_eliminate(sys, x);
      for (int s = 0; s < 20; ++s) {
        std::map<std::string, Rational> point;
        for (const auto& v : sys.variables) point[v] = Rational(static_cast<int>(rng.index(13)) - 4, 2);
        // feasible interval of x
        bool ok = true, has_lo = false, has_hi = false;
        Rational lo = 0, hi = 0;
        for (const auto& q : sys.inequalities) {
          Rational rest = eval_rhs(q.rhs, values);
          for (const auto& [v, c] : q.lhs)
            if (v != x) rest -= c * point.at(v);
          const Rational a = coef(q, x);
          if (a == 0) {
            ok = ok && 0 <= rest;
          } else if (a > 0) {
            const Rational b = rest / a;
            hi = has_hi ? std::min(hi, b) : b;
            has_hi = true;
          } else {
            const Rational b = rest / a;
            lo = has_lo ? std::max(lo, b) : b;
            has_lo = true;
          }
        }
        const bool oracle = ok && (!has_lo || !has_hi || lo <= hi);
        bool member = true;
        for (const auto& q : out.inequalities) member = member && satisfied(q, point, values);
        CHECK(member == oracle);
        feasible += oracle;
        ++total;
      }
    }
    CHECK(feasible > 0);
    CHECK(feasible < total);
  }

  TEST_CASE("property: canonical equality is an equivalence on samples") {
    for (std::uint64_t k = 0; k < 30; ++k) {
      Rng rng(stream_seed(29, k));
      std::map<InfoSymbol, Rational> values;
      const IneqSystem a = random_system(rng, 3, 4, values);
      IneqSystem b = a;
      std::reverse(b.inequalities.begin(), b.inequalities.end());
      for (auto& q : b.inequalities) {
        for (auto& [v, c] : q.lhs) c *= 2;
        for (auto& [s, c] : q.rhs) c *= 2;
      }
      IneqSystem c = b;
      std::rotate(c.inequalities.begin(), c.inequalities.begin() + 1, c.inequalities.end());
      CHECK(canonical_equal(a, a));
      CHECK(canonical_equal(a, b) == canonical_equal(b, a));
      CHECK(canonical_equal(a, b));
      CHECK(canonical_equal(b, c));
      CHECK(canonical_equal(a, c));
    }
  }
}
