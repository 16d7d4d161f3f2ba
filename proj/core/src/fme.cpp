#include "bcleak/fme.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "exact_lp.hpp"

namespace bcleak {
namespace {

constexpr std::string_view kAchievability = R"(
vars: R0, R1, R2, R10, R20, R11, R22, Rp1, Rp2, Rt1, Rt2
split1_lo: R1 - R10 - R11 <= 0
split1_hi: R10 + R11 - R1 <= 0
split2_lo: R2 - R20 - R22 <= 0
split2_hi: R20 + R22 - R2 <= 0
public1_nonneg: R10 >= 0
public1_cap: R10 - R1 <= 0
public1_leak: R10 <= L1
public2_nonneg: R20 >= 0
public2_cap: R20 - R2 <= 0
public2_leak: R20 <= L2
covering: Rp1 + Rp2 > I(U1;U2|U0)
decode1_private: R11 + Rp1 + Rt1 < I(U1;Y1|U0)
decode1_all: R0 + R20 + R1 + Rp1 + Rt1 < I(U0,U1;Y1)
decode2_private: R22 + Rp2 + Rt2 < I(U2;Y2|U0)
decode2_all: R0 + R10 + R2 + Rp2 + Rt2 < I(U0,U2;Y2)
dummy1_decodable: Rt1 < I(U1;Y2|U0,U2)
dummy2_decodable: Rt2 < I(U2;Y1|U0,U1)
leak1_dummy: Rt1 + Rp1 - R10 > I(U1;Y2|U0,U2) + I(U1;U2|U0) - L1
leak1_public: Rp1 - R10 > I(U1;U2|U0) - L1
leak2_dummy: Rt2 + Rp2 - R20 > I(U2;Y1|U0,U1) + I(U1;U2|U0) - L2
leak2_public: Rp2 - R20 > I(U1;U2|U0) - L2
bin1_nonneg: Rp1 >= 0
bin2_nonneg: Rp2 >= 0
dummy1_nonneg: Rt1 >= 0
dummy2_nonneg: Rt2 >= 0
nonneg_R0: R0 >= 0
nonneg_R1: R1 >= 0
nonneg_R2: R2 >= 0
)";

constexpr std::string_view kInnerBound = R"(
vars: R0, R1, R2
r1_leak: R1 <= I(U1;Y1|U0) - I(U1;U2|U0) - I(U1;Y2|U0,U2) + L1
r01_leak: R0 + R1 <= I(U0,U1;Y1) - I(U1;U2|U0) - I(U1;Y2|U0,U2) + L1
r01: R0 + R1 <= I(U0,U1;Y1)
r2_leak: R2 <= I(U2;Y2|U0) - I(U1;U2|U0) - I(U2;Y1|U0,U1) + L2
r02_leak: R0 + R2 <= I(U0,U2;Y2) - I(U1;U2|U0) - I(U2;Y1|U0,U1) + L2
r02: R0 + R2 <= I(U0,U2;Y2)
sum_leak1: R0 + R1 + R2 <= I(U0,U1;Y1) + I(U2;Y2|U0) - I(U1;U2|U0) - I(U1;Y2|U0,U2) + L1
sum_leak2: R0 + R1 + R2 <= I(U1;Y1|U0) + I(U0,U2;Y2) - I(U1;U2|U0) - I(U2;Y1|U0,U1) + L2
sum_common1: R0 + R1 + R2 <= I(U1;Y1|U0) + I(U2;Y2|U0) - I(U1;U2|U0) + I(U0;Y1)
sum_common2: R0 + R1 + R2 <= I(U1;Y1|U0) + I(U2;Y2|U0) - I(U1;U2|U0) + I(U0;Y2)
double_common: 2*R0 + R1 + R2 <= I(U0,U1;Y1) + I(U0,U2;Y2) - I(U1;U2|U0)
nonneg_R0: R0 >= 0
nonneg_R1: R1 >= 0
nonneg_R2: R2 >= 0
)";

constexpr std::string_view kDistributionRow = R"(
binning_feasible: 0 <= I(U1;Y1|U0) + I(U2;Y2|U0) - I(U1;U2|U0)
)";

// Divides by the magnitude of the leading coefficient (variables in system order,
// then symbols) so that positively scaled copies coincide.
Inequality scaled(Inequality q, const std::vector<std::string>& vars) {
  Rational lead = 0;
  for (const auto& v : vars)
    if (auto it = q.lhs.find(v); it != q.lhs.end()) {
      lead = it->second;
      break;
    }
  if (lead == 0 && !q.lhs.empty()) lead = q.lhs.begin()->second;
  if (lead == 0 && !q.rhs.empty()) lead = q.rhs.begin()->second;
  if (lead == 0) return q;
  if (lead < 0) lead = -lead;
  for (auto& [k, c] : q.lhs) c /= lead;
  for (auto& [k, c] : q.rhs) c /= lead;
  // Clear rate-side denominators so rows stay integral.
  boost::multiprecision::cpp_int den = 1;
  for (const auto& [k, c] : q.lhs) den = boost::multiprecision::lcm(den, denominator(c));
  if (den != 1) {
    for (auto& [k, c] : q.lhs) c *= den;
    for (auto& [k, c] : q.rhs) c *= den;
  }
  return q;
}

bool all_nonneg(const SymbolExpr& e) {
  return std::all_of(e.begin(), e.end(), [](const auto& kv) { return kv.second >= 0; });
}

// rhs(q) - rhs(p) has only nonnegative atom coefficients.
bool rhs_dominates(const SymbolExpr& q, const SymbolExpr& p) {
  SymbolExpr d = q;
  for (const auto& [s, c] : p) add_to(d, s, -c);
  return all_nonneg(d);
}

bool implied_by(const Inequality& q, const std::vector<const Inequality*>& others,
                const std::vector<std::string>& vars) {
  std::set<InfoSymbol> syms;
  for (const auto& [s, c] : q.rhs) syms.insert(s);
  for (const auto* p : others)
    for (const auto& [s, c] : p->rhs) syms.insert(s);
  const std::vector<InfoSymbol> sym_list(syms.begin(), syms.end());
  const std::size_t n = others.size();
  detail::RationalMatrix a_eq, a_le;
  std::vector<Rational> b_eq, b_le;
  for (const auto& v : vars) {
    std::vector<Rational> row(n);
    for (std::size_t i = 0; i < n; ++i)
      if (auto it = others[i]->lhs.find(v); it != others[i]->lhs.end()) row[i] = it->second;
    a_eq.push_back(std::move(row));
    auto it = q.lhs.find(v);
    b_eq.push_back(it == q.lhs.end() ? Rational(0) : it->second);
  }
  for (const auto& s : sym_list) {
    std::vector<Rational> row(n);
    for (std::size_t i = 0; i < n; ++i)
      if (auto it = others[i]->rhs.find(s); it != others[i]->rhs.end()) row[i] = it->second;
    a_le.push_back(std::move(row));
    auto it = q.rhs.find(s);
    b_le.push_back(it == q.rhs.end() ? Rational(0) : it->second);
  }
  return detail::lp_feasible(a_eq, b_eq, a_le, b_le, n);
}

std::string canonical_key(const Inequality& q, const std::vector<std::string>& vars) {
  Inequality k = scaled(q, vars);
  k.label.clear();
  k.strict = false;
  return render(k, vars);
}

}  // namespace

IneqSystem fme_eliminate(const IneqSystem& sys, std::string_view var) {
  if (!sys.has_variable(var))
    throw std::invalid_argument("fme_eliminate: unknown variable '" + std::string(var) + "'");
  const std::string v(var);
  IneqSystem out;
  for (const auto& x : sys.variables)
    if (x != v) out.variables.push_back(x);
  std::vector<const Inequality*> upper, lower;
  for (const auto& q : sys.inequalities) {
    auto it = q.lhs.find(v);
    if (it == q.lhs.end())
      out.inequalities.push_back(q);
    else if (it->second > 0)
      upper.push_back(&q);
    else
      lower.push_back(&q);
  }
  for (const auto* u : upper)
    for (const auto* l : lower) {
      const Rational cu = u->lhs.at(v), cl = -l->lhs.at(v);
      Inequality r;
      r.strict = u->strict || l->strict;
      for (const auto& [x, c] : u->lhs) add_to(r.lhs, x, c * cl);
      for (const auto& [x, c] : l->lhs) add_to(r.lhs, x, c * cu);
      for (const auto& [s, c] : u->rhs) add_to(r.rhs, s, c * cl);
      for (const auto& [s, c] : l->rhs) add_to(r.rhs, s, c * cu);
      r.lhs.erase(v);
      out.inequalities.push_back(std::move(r));
    }
  return out;
}

IneqSystem prune_redundant(const IneqSystem& sys, PruneOptions opts) {
  IneqSystem out;
  out.variables = sys.variables;
  std::vector<Inequality> rows;
  for (const auto& q0 : sys.inequalities) {
    Inequality q = q0;
    q.rhs = atoms(q.rhs);
    // 0 <= nonnegative combination of atoms
    if (q.lhs.empty() && all_nonneg(q.rhs) && !(q.strict && q.rhs.empty())) continue;
    q = scaled(std::move(q), sys.variables);
    bool merged = false;
    for (auto& r : rows)
      if (r.lhs == q.lhs && r.rhs == q.rhs) {
        r.strict = r.strict || q.strict;
        if (r.label.empty()) r.label = q.label;
        merged = true;
        break;
      }
    if (!merged) rows.push_back(std::move(q));
  }
  // Same rate part: keep the smaller right side when comparable atom-wise.
  std::vector<bool> dead(rows.size(), false);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size() && !dead[i]; ++j)
      if (i != j && !dead[j] && rows[i].lhs == rows[j].lhs && rhs_dominates(rows[i].rhs, rows[j].rhs))
        dead[i] = true;
  if (opts.implication) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (dead[i]) continue;
      std::vector<const Inequality*> others;
      for (std::size_t j = 0; j < rows.size(); ++j)
        if (j != i && !dead[j]) others.push_back(&rows[j]);
      if (implied_by(rows[i], others, sys.variables)) dead[i] = true;
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!dead[i]) out.inequalities.push_back(std::move(rows[i]));
  return out;
}

IneqSystem eliminate_all(const IneqSystem& sys, const std::vector<std::string>& order,
                         bool prune_each_step) {
  IneqSystem cur = prune_each_step ? prune_redundant(sys) : sys;
  for (const auto& v : order) {
    cur = fme_eliminate(cur, v);
    if (prune_each_step) cur = prune_redundant(cur);
  }
  return cur;
}

bool canonical_equal(const IneqSystem& a, const IneqSystem& b) {
  const std::set<std::string> va(a.variables.begin(), a.variables.end());
  const std::set<std::string> vb(b.variables.begin(), b.variables.end());
  if (va != vb) return false;
  const std::vector<std::string> vars(va.begin(), va.end());
  auto keys = [&](const IneqSystem& s) {
    std::vector<std::string> k;
    for (const auto& q : prune_redundant(s).inequalities) k.push_back(canonical_key(q, vars));
    std::sort(k.begin(), k.end());
    return k;
  };
  return keys(a) == keys(b);
}

IneqSystem achievability_system() { return parse_system(kAchievability); }

std::vector<std::string> achievability_elimination_order() {
  return {"Rt1", "Rt2", "Rp1", "Rp2", "R11", "R22", "R10", "R20"};
}

IneqSystem inner_bound_system() { return parse_system(kInnerBound); }

IneqSystem inner_bound_reference_system() {
  IneqSystem s = inner_bound_system();
  for (auto& q : parse_system(kDistributionRow).inequalities) s.inequalities.push_back(q);
  return s;
}

SymbolValues evaluate_symbols(const IneqSystem& sys, InfoEvaluator& ev, LeakagePair leak) {
  SymbolValues out;
  for (const auto& q : sys.inequalities)
    for (const auto& [s, c] : q.rhs) {
      if (out.count(s)) continue;
      double v = 0.0;
      switch (s.kind) {
        case SymbolKind::leakage:
          v = leak[s.leakage_index];
          break;
        case SymbolKind::entropy:
          v = ev.entropy(s.a, s.c);
          break;
        case SymbolKind::mutual_information:
          v = ev.mutual_information(s.a, s.b, s.c);
          break;
      }
      out.emplace(s, v);
    }
  return out;
}

RatePolytope substitute(const IneqSystem& sys, const SymbolValues& values, std::string label) {
  RatePolytope p;
  p.axes = sys.variables;
  p.label = std::move(label);
  for (const auto& q : sys.inequalities) {
    double rhs = 0.0;
    bool infinite = false;
    for (const auto& [s, c] : q.rhs) {
      auto it = values.find(s);
      if (it == values.end())
        throw std::invalid_argument("substitute: no value for " + s.to_string());
      if (std::isinf(it->second)) {
        if (it->second < 0 || c < 0)
          throw std::invalid_argument("substitute: infinite value with a negative coefficient");
        infinite = true;
        continue;
      }
      rhs += to_double(c) * it->second;
    }
    if (infinite) continue;
    Halfspace h;
    h.label = q.label;
    h.rhs = rhs;
    for (const auto& v : sys.variables) {
      auto it = q.lhs.find(v);
      h.coeffs.push_back(it == q.lhs.end() ? 0.0 : to_double(it->second));
    }
    p.halfspaces.push_back(std::move(h));
  }
  return p;
}

}  // namespace bcleak
