#include "bcleak/regions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "bcleak/fme.hpp"

namespace bcleak {
namespace {

struct Entry {
  RegionId id;
  const char* name;
  AxisNames aux;
  ChannelRequirement req;
  const char* text;
};

const std::vector<Entry>& entries() {
  using R = RegionId;
  using C = ChannelRequirement;
  static const std::vector<Entry> e = {
      {R::inner, "inner", {"U0", "U1", "U2", "X"}, C::none, nullptr},
      {R::outer, "outer", {"W", "U", "V", "X"}, C::none, R"(
vars: R0, R1, R2
r0_a: R0 <= I(W;Y1)
r0_b: R0 <= I(W;Y2)
r1_leak_v: R1 <= I(U;Y1|W,V) - I(U;Y2|W,V) + L1
r1_leak: R1 <= I(U;Y1|W) - I(U;Y2|W) + L1
r01_a: R0 + R1 <= I(U;Y1|W) + I(W;Y1)
r01_b: R0 + R1 <= I(U;Y1|W) + I(W;Y2)
r2_leak_u: R2 <= I(V;Y2|W,U) - I(V;Y1|W,U) + L2
r2_leak: R2 <= I(V;Y2|W) - I(V;Y1|W) + L2
r02_a: R0 + R2 <= I(V;Y2|W) + I(W;Y1)
r02_b: R0 + R2 <= I(V;Y2|W) + I(W;Y2)
sum_v_a: R0 + R1 + R2 <= I(U;Y1|W,V) + I(V;Y2|W) + I(W;Y1)
sum_v_b: R0 + R1 + R2 <= I(U;Y1|W,V) + I(V;Y2|W) + I(W;Y2)
sum_u_a: R0 + R1 + R2 <= I(U;Y1|W) + I(V;Y2|W,U) + I(W;Y1)
sum_u_b: R0 + R1 + R2 <= I(U;Y1|W) + I(V;Y2|W,U) + I(W;Y2)
nonneg_R0: R0 >= 0
nonneg_R1: R1 >= 0
nonneg_R2: R2 >= 0
)"},
      {R::sd, "sd", {"W", "V", "X"}, C::semi_deterministic, R"(
vars: R0, R1, R2
r1_leak: R1 <= H(Y1|W,V,Y2) + L1
r01_leak: R0 + R1 <= H(Y1|W,V,Y2) + I(W;Y1) + L1
r01: R0 + R1 <= H(Y1)
r2_leak: R2 <= I(V;Y2|W) - I(V;Y1|W) + L2
r02_leak: R0 + R2 <= I(W,V;Y2) - I(V;Y1|W) + L2
r02: R0 + R2 <= I(W,V;Y2)
sum_leak1: R0 + R1 + R2 <= H(Y1|W,V,Y2) + I(V;Y2|W) + I(W;Y1) + L1
sum_common1: R0 + R1 + R2 <= H(Y1|W,V) + I(V;Y2|W) + I(W;Y1)
sum_common2: R0 + R1 + R2 <= H(Y1|W,V) + I(V;Y2|W) + I(W;Y2)
double_common: 2*R0 + R1 + R2 <= H(Y1|W,V) + I(W,V;Y2) + I(W;Y1)
nonneg_R0: R0 >= 0
nonneg_R1: R1 >= 0
nonneg_R2: R2 >= 0
)"},
      {R::dm, "dm", {"W", "U", "X"}, C::none, R"(
vars: R0, R1
r0: R0 <= I(W;Y2)
r1_leak: R1 <= I(U;Y1|W) - I(U;Y2|W) + L1
r01_leak: R0 + R1 <= I(W,U;Y1) - I(U;Y2|W) + L1
r01_a: R0 + R1 <= I(U;Y1|W) + I(W;Y1)
r01_b: R0 + R1 <= I(U;Y1|W) + I(W;Y2)
nonneg_R0: R0 >= 0
nonneg_R1: R1 >= 0
)"},
      {R::pd, "pd", {"W", "U", "X"}, C::physically_degraded, R"(
vars: R1, R2
r2: R2 <= I(W;Y2)
r1_leak: R1 <= I(U;Y1|W) - I(U;Y2|W) + L1
sum: R1 + R2 <= I(U;Y1|W) + I(W;Y2)
nonneg_R1: R1 >= 0
nonneg_R2: R2 >= 0
)"},
      {R::sd0, "sd0", {"W", "V", "X"}, C::semi_deterministic, R"(
vars: R1, R2
r1_leak: R1 <= H(Y1|W,V,Y2) + L1
r1: R1 <= H(Y1)
r2_leak: R2 <= I(V;Y2|W) - I(V;Y1|W) + L2
r2: R2 <= I(W,V;Y2)
sum_leak1: R1 + R2 <= H(Y1|W,V,Y2) + I(V;Y2|W) + I(W;Y1) + L1
sum_common1: R1 + R2 <= H(Y1|W,V) + I(V;Y2|W) + I(W;Y1)
sum_common2: R1 + R2 <= H(Y1|W,V) + I(V;Y2|W) + I(W;Y2)
nonneg_R1: R1 >= 0
nonneg_R2: R2 >= 0
)"},
      {R::liu, "liu", {"U0", "U1", "U2", "X"}, C::none, R"(
vars: R1, R2
r1_leak: R1 <= I(U1;Y1|U0) - I(U1;U2|U0) - I(U1;Y2|U0,U2)
r2_leak: R2 <= I(U2;Y2|U0) - I(U1;U2|U0) - I(U2;Y1|U0,U1)
nonneg_R1: R1 >= 0
nonneg_R2: R2 >= 0
)"},
      {R::gp_nosecrecy, "gp_nosecrecy", {"V", "X"}, C::semi_deterministic, R"(
vars: R1, R2
r1: R1 <= H(Y1)
r2: R2 <= I(V;Y2)
sum: R1 + R2 <= H(Y1|V) + I(V;Y2)
nonneg_R1: R1 >= 0
nonneg_R2: R2 >= 0
)"},
      {R::m1secret, "m1secret", {"V", "X"}, C::semi_deterministic, R"(
vars: R1, R2
r1_leak: R1 <= H(Y1|V,Y2)
r2: R2 <= I(V;Y2)
nonneg_R1: R1 >= 0
nonneg_R2: R2 >= 0
)"},
      {R::m2secret, "m2secret", {"W", "V", "X"}, C::semi_deterministic, R"(
vars: R1, R2
r1: R1 <= H(Y1)
r1_w: R1 <= H(Y1|W) + I(W;Y2)
r2_leak: R2 <= I(V;Y2|W) - I(V;Y1|W)
nonneg_R1: R1 >= 0
nonneg_R2: R2 >= 0
)"},
      {R::m2secret_alt, "m2secret_alt", {"W", "V", "X"}, C::semi_deterministic, R"(
vars: R1, R2
r1: R1 <= H(Y1)
r2_leak: R2 <= I(V;Y2|W) - I(V;Y1|W)
sum: R1 + R2 <= H(Y1|W,V) + I(W,V;Y2)
nonneg_R1: R1 >= 0
nonneg_R2: R2 >= 0
)"},
      {R::bothsecret, "bothsecret", {"W", "V", "X"}, C::semi_deterministic, R"(
vars: R1, R2
r1_leak: R1 <= H(Y1|W,V,Y2)
r2_leak: R2 <= I(V;Y2|W) - I(V;Y1|W)
nonneg_R1: R1 >= 0
nonneg_R2: R2 >= 0
)"},
      {R::ck, "ck", {"W", "U", "X"}, C::none, R"(
vars: R0, R1
r0_a: R0 <= I(W;Y1)
r0_b: R0 <= I(W;Y2)
r1_leak: R1 <= I(U;Y1|W) - I(U;Y2|W)
nonneg_R0: R0 >= 0
nonneg_R1: R1 >= 0
)"},
      {R::dm0, "dm0", {"W", "U", "X"}, C::none, R"(
vars: R0, R1
r0: R0 <= I(W;Y2)
r1_leak: R1 <= I(U;Y1|W) - I(U;Y2|W)
r01_leak: R0 + R1 <= I(W,U;Y1) - I(U;Y2|W)
nonneg_R0: R0 >= 0
nonneg_R1: R1 >= 0
)"},
      {R::degmsg, "degmsg", {"W", "X"}, C::none, R"(
vars: R0, R1
r0: R0 <= I(W;Y2)
r01_w: R0 + R1 <= I(X;Y1|W) + I(W;Y2)
r01: R0 + R1 <= I(X;Y1)
nonneg_R0: R0 >= 0
nonneg_R1: R1 >= 0
)"},
      {R::det, "det", {"X"}, C::deterministic, R"(
vars: R1, R2
r1: R1 <= H(Y1)
r1_leak: R1 <= H(Y1|Y2) + L1
r2: R2 <= H(Y2)
r2_leak: R2 <= H(Y2|Y1) + L2
sum: R1 + R2 <= H(Y1,Y2)
nonneg_R1: R1 >= 0
nonneg_R2: R2 >= 0
)"},
  };
  return e;
}

const std::vector<RegionSpec>& registry() {
  static const std::vector<RegionSpec> specs = [] {
    std::vector<RegionSpec> out;
    for (const auto& e : entries()) {
      RegionSpec s{e.id, e.name, e.aux, e.req, {}};
      s.system = e.text ? parse_system(e.text) : inner_bound_system();
      out.push_back(std::move(s));
    }
    return out;
  }();
  return specs;
}

const std::vector<RegionId>& ids() {
  static const std::vector<RegionId> v = [] {
    std::vector<RegionId> out;
    for (const auto& e : entries()) out.push_back(e.id);
    return out;
  }();
  return v;
}

bool carries_leakage(const Inequality& q, int j) {
  return q.rhs.count(InfoSymbol::leakage(j)) > 0;
}

}  // namespace

const RegionSpec& region_spec(RegionId id) {
  for (const auto& s : registry())
    if (s.id == id) return s;
  throw std::out_of_range("region_spec: unknown id");
}

std::span<const RegionId> all_region_ids() { return ids(); }

RegionId parse_region_id(std::string_view name) {
  for (const auto& s : registry())
    if (s.name == name) return s.id;
  throw std::invalid_argument("unknown region id '" + std::string(name) + "'");
}

std::string_view to_string(RegionId id) { return region_spec(id).name; }

bool satisfies(const ChannelClass& k, ChannelRequirement r) {
  switch (r) {
    case ChannelRequirement::none:
      return true;
    case ChannelRequirement::semi_deterministic:
      return k.semi_deterministic;
    case ChannelRequirement::physically_degraded:
      return k.physically_degraded;
    case ChannelRequirement::deterministic:
      return k.deterministic;
  }
  return false;
}

RatePolytope evaluate_region(const RegionSpec& spec, const JointPmf& induced, LeakagePair leak) {
  InfoEvaluator ev(induced);
  return substitute(spec.system, evaluate_symbols(spec.system, ev, leak), spec.name);
}

RatePolytope named_region_polytope(RegionId id, const JointPmf& dist, const Dmbc& c, LeakagePair leak) {
  const RegionSpec& spec = region_spec(id);
  if (leak.l1 < 0 || leak.l2 < 0) throw std::invalid_argument("leakage budgets must be nonnegative");
  require_axes(dist, spec.aux_axes, spec.name);
  if (!satisfies(classify(c), spec.requirement))
    throw std::invalid_argument(spec.name + ": channel does not meet the region's class requirement");
  return evaluate_region(spec, induce_joint(dist, c), leak);
}

RatePolytope inner_bound_polytope(const AuxChain& aux, const Dmbc& c, LeakagePair leak) {
  if (leak.l1 < 0 || leak.l2 < 0) throw std::invalid_argument("leakage budgets must be nonnegative");
  return evaluate_region(region_spec(RegionId::inner), induce_joint(aux.joint(), c), leak);
}

RatePolytope outer_bound_polytope(const OuterChain& aux, const Dmbc& c, LeakagePair leak) {
  if (leak.l1 < 0 || leak.l2 < 0) throw std::invalid_argument("leakage budgets must be nonnegative");
  return evaluate_region(region_spec(RegionId::outer), induce_joint(aux.joint(), c), leak);
}

double leakage_threshold(const AuxChain& aux, const Dmbc& c, int j) {
  if (j != 1 && j != 2) throw std::invalid_argument("leakage_threshold: j must be 1 or 2");
  const JointPmf joint = induce_joint(aux.joint(), c);
  InfoEvaluator ev(joint);
  const std::string y = j == 1 ? "Y1" : "Y2", ybar = j == 1 ? "Y2" : "Y1";
  const std::string u = j == 1 ? "U1" : "U2", ubar = j == 1 ? "U2" : "U1";
  return ev.mutual_information({"U0"}, {y}) + ev.mutual_information({u}, {ubar, ybar}, {"U0"});
}

SaturationReport saturation_check(const AuxChain& aux, const Dmbc& c, LeakagePair leak) {
  SaturationReport r;
  const IneqSystem& sys = region_spec(RegionId::inner).system;
  const JointPmf joint = induce_joint(aux.joint(), c);
  InfoEvaluator ev(joint);
  const std::string y[2] = {"Y1", "Y2"}, u[2] = {"U1", "U2"};
  for (int k = 0; k < 2; ++k)
    r.threshold[k] = ev.mutual_information({"U0"}, {y[k]}) +
                     ev.mutual_information({u[k]}, {u[1 - k], y[1 - k]}, {"U0"});
  // Leakage values are substituted as zero and added back per row so that rows with an
  // infinite budget keep a finite symbolic part.
  const SymbolValues values = evaluate_symbols(sys, ev, {0.0, 0.0});
  struct Row {
    std::vector<Rational> rate;
    double base;
    bool leak[2];
  };
  std::vector<Row> rows;
  for (const auto& q : sys.inequalities) {
    Row row{{}, 0.0, {carries_leakage(q, 1), carries_leakage(q, 2)}};
    for (const auto& v : sys.variables)
      if (v != "R0") row.rate.push_back(q.lhs.count(v) ? q.lhs.at(v) : Rational(0));
    for (const auto& [s, coef] : q.rhs)
      if (s.kind != SymbolKind::leakage) row.base += to_double(coef) * values.at(s);
    rows.push_back(std::move(row));
  }
  for (int k = 0; k < 2; ++k) {
    const double lk = leak[k + 1];
    r.saturated[k] = lk >= r.threshold[k];
    if (!r.saturated[k]) continue;
    bool ok = true;
    for (const auto& row : rows) {
      if (!row.leak[k]) continue;
      const double value = row.base + lk + (row.leak[1 - k] ? leak[2 - k] : 0.0);
      bool dominated = false;
      for (const auto& other : rows) {
        if (other.leak[k] || other.rate != row.rate) continue;
        const double ov = other.base + (other.leak[1 - k] ? leak[2 - k] : 0.0);
        if (ov <= value + 1e-9) dominated = true;
      }
      ok = ok && dominated;
    }
    r.verified[k] = ok;
  }
  return r;
}

}  // namespace bcleak
