#include "bcleak/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <stdexcept>

#include "bcleak/fme.hpp"
#include "bcleak/random.hpp"
#include "bcleak/regions.hpp"
#include "exact_lp.hpp"

namespace bcleak {
namespace {

constexpr double kTol = 1e-9;
constexpr std::size_t kFan = 26;

// Calls f(index, prob) over the row-major tensor of a joint.
void for_each_cell(const JointPmf& p, const std::function<void(const std::vector<std::size_t>&, double)>& f) {
  std::vector<std::size_t> idx(p.rank(), 0);
  const auto t = p.tensor();
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    f(idx, t[flat]);
    for (std::size_t k = p.rank(); k-- > 0;) {
      if (++idx[k] < p.axes()[k].size) break;
      idx[k] = 0;
    }
  }
}

std::size_t flat_index(const std::vector<Axis>& axes, std::initializer_list<std::size_t> idx) {
  std::size_t flat = 0, k = 0;
  for (std::size_t i : idx) flat = flat * axes[k++].size + i;
  return flat;
}

double support_or_inf(const RatePolytope& p, std::span<const double> d) {
  try {
    return support_value(p, d);
  } catch (const std::domain_error&) {
    return kInfinity;
  }
}

// Largest |h_a - h_b| over the 2-D fan; 0 when both are empty, inf when exactly one is.
double support_deviation(const RatePolytope& a, const RatePolytope& b) {
  double worst = 0.0;
  for (const auto& d : quarter_fan(kFan)) {
    const double sa = support_or_inf(a, d), sb = support_or_inf(b, d);
    if (sa == sb) continue;
    worst = std::max(worst, std::isfinite(sa) && std::isfinite(sb) ? std::abs(sa - sb) : kInfinity);
  }
  return worst;
}

// Largest positive excess of h_a over h_b.
double support_excess(const RatePolytope& a, const RatePolytope& b) {
  double worst = 0.0;
  for (const auto& d : quarter_fan(kFan)) {
    const double sa = support_or_inf(a, d), sb = support_or_inf(b, d);
    if (sa == -kInfinity || sa <= sb) continue;
    worst = std::max(worst, std::isfinite(sa) && std::isfinite(sb) ? sa - sb : kInfinity);
  }
  return worst;
}

// Largest violation of any vertex of `inner` against the best of the given outer polytopes.
double vertex_excess(const RatePolytope& inner, const std::vector<RatePolytope>& outers) {
  double worst = 0.0;
  for (const auto& v : vertices(inner)) {
    double best = -kInfinity;
    for (const auto& o : outers) best = std::max(best, margin(o, v));
    worst = std::max(worst, -best);
  }
  return worst;
}

double row_rhs(const RatePolytope& p, std::string_view label) {
  const Halfspace* h = p.find(label);
  return h ? h->rhs : kInfinity;
}

std::size_t draw_size(Rng& rng, std::size_t lo, std::size_t hi) { return lo + rng.index(hi - lo + 1); }

double draw_leak(Rng& rng) {
  switch (rng.index(3)) {
    case 0:
      return 0.0;
    case 1:
      return rng.uniform(0.0, 1.0);
    default:
      return kInfinity;
  }
}

// Runs `trial(rng, deviation)` over independent streams; a thrown exception fails the check.
CheckResult run_trials(std::string name, std::size_t trials, std::uint64_t seed, double tolerance,
                       const std::function<double(Rng&)>& trial) {
  CheckResult r{std::move(name), trials, 0.0, true, {}};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(stream_seed(seed, t));
    double dev = 0.0;
    try {
      dev = trial(rng);
    } catch (const std::exception& e) {
      r.pass = false;
      r.max_deviation = kInfinity;
      r.detail = "trial " + std::to_string(t) + ": " + e.what();
      return r;
    }
    if (dev > r.max_deviation) r.max_deviation = dev;
    if (!(dev <= tolerance) && r.detail.empty()) {
      r.pass = false;
      r.detail = "first violation at trial " + std::to_string(t);
    }
  }
  return r;
}

std::uint64_t check_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char ch : name) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
  return splitmix64(seed ^ h);
}

Dmbc require_semi_deterministic(const Dmbc& c) {
  if (!classify(c).semi_deterministic) throw std::invalid_argument("channel is not semi-deterministic");
  return c;
}

Dmbc general_channel(Rng& rng) {
  return random_channel(draw_size(rng, 2, 3), draw_size(rng, 2, 3), draw_size(rng, 2, 3), rng);
}

JointPmf random_wvx(Rng& rng, std::size_t x_size, const char* mid = "V") {
  return random_joint({{"W", draw_size(rng, 1, 3)}, {mid, draw_size(rng, 2, 3)}, {"X", x_size}}, rng);
}

// P(W,U) P(X|U)
JointPmf random_markov_wux(Rng& rng, std::size_t x_size) {
  const JointPmf wu = random_joint({{"W", draw_size(rng, 1, 3)}, {"U", draw_size(rng, 2, 3)}}, rng);
  return extend_markov(wu, "U", {"X", x_size}, rng);
}

// (W,V,X) -> (V',X) with V' = (W,V).
JointPmf merge_wv(const JointPmf& wvx) {
  const std::size_t nw = wvx.axes()[0].size, nv = wvx.axes()[1].size, nx = wvx.axes()[2].size;
  std::vector<double> t(nw * nv * nx, 0.0);
  for_each_cell(wvx, [&](const std::vector<std::size_t>& i, double p) { t[(i[0] * nv + i[1]) * nx + i[2]] += p; });
  return JointPmf({{"V", nw * nv}, {"X", nx}}, std::move(t));
}

// (V,X) -> (W,V,X) with W constant.
JointPmf const_w(const JointPmf& vx) {
  std::vector<Axis> axes{{"W", 1}};
  for (const auto& a : vx.axes()) axes.push_back(a);
  return JointPmf(std::move(axes), std::vector<double>(vx.tensor().begin(), vx.tensor().end()));
}

RatePolytope region(RegionId id, const JointPmf& dist, const Dmbc& c, LeakagePair leak) {
  return named_region_polytope(id, dist, c, leak);
}

// Every vertex of `src` lifted by `lift` lands in the target region with margin >= floor.
template <class Lift>
double lifted_vertex_excess(const RatePolytope& src, Lift&& lift) {
  double worst = 0.0;
  for (const auto& v : vertices(src)) worst = std::max(worst, -lift(v).margin);
  return worst;
}

}  // namespace

// ---- lifts ----

LiftReport m2secret_lift(const JointPmf& dist, std::array<double, 2> r12, const Dmbc& c) {
  require_semi_deterministic(c);
  const JointPmf wvx = reorder_axes(dist, {"W", "V", "X"});
  LiftReport rep;
  rep.point = {r12[0], r12[1]};
  const RatePolytope source = region(RegionId::m2secret_alt, wvx, c, {});
  rep.source_member = contains(source, std::span<const double>(rep.point));
  if (!rep.source_member) throw std::invalid_argument("m2secret_lift: point outside the source region");
  const JointPmf induced = induce_joint(wvx, c);
  InfoEvaluator ev(induced);
  rep.gap = ev.mutual_information({"V"}, {"Y2"}, {"W"}) - ev.mutual_information({"V"}, {"Y1"}, {"W"});
  rep.gamma = std::max(0.0, rep.gap - r12[1]);
  rep.lambda = rep.gap > kTol ? std::clamp((rep.gap - rep.gamma) / rep.gap, 0.0, 1.0) : 1.0;

  const std::size_t nw = wvx.axes()[0].size, nv = wvx.axes()[1].size, nx = wvx.axes()[2].size;
  const std::vector<Axis> axes{{"W", nw + nw * nv}, {"V", nw * nv}, {"X", nx}};
  std::vector<double> t(axes[0].size * axes[1].size * nx, 0.0);
  for_each_cell(wvx, [&](const std::vector<std::size_t>& i, double p) {
    const std::size_t vstar = i[0] * nv + i[1];
    t[flat_index(axes, {i[0], vstar, i[2]})] += rep.lambda * p;
    t[flat_index(axes, {nw + vstar, vstar, i[2]})] += (1.0 - rep.lambda) * p;
  });
  rep.lifted.emplace(axes, std::move(t));
  rep.margin = margin(region(RegionId::m2secret, *rep.lifted, c, {}), rep.point);
  return rep;
}

LiftReport ck_lift(const JointPmf& dist, std::array<double, 2> r01, const Dmbc& c) {
  const JointPmf wux = reorder_axes(dist, {"W", "U", "X"});
  LiftReport rep;
  rep.point = {r01[0], r01[1]};
  const RatePolytope source = region(RegionId::dm0, wux, c, {});
  rep.source_member = contains(source, std::span<const double>(rep.point));
  if (!rep.source_member) throw std::invalid_argument("ck_lift: point outside the source region");
  const JointPmf induced = induce_joint(wux, c);
  InfoEvaluator ev(induced);
  rep.gap = ev.mutual_information({"U"}, {"Y1"}, {"W"}) - ev.mutual_information({"U"}, {"Y2"}, {"W"});
  rep.gamma = std::max(0.0, rep.gap - r01[1]);
  rep.lambda = rep.gap > kTol ? std::clamp((rep.gap - rep.gamma) / rep.gap, 0.0, 1.0) : 1.0;

  const std::size_t nw = wux.axes()[0].size, nu = wux.axes()[1].size, nx = wux.axes()[2].size;
  const std::vector<Axis> axes{{"W", nw + nu}, {"U", nu}, {"X", nx}};
  std::vector<double> t(axes[0].size * nu * nx, 0.0);
  for_each_cell(wux, [&](const std::vector<std::size_t>& i, double p) {
    t[flat_index(axes, {i[0], i[1], i[2]})] += rep.lambda * p;
    t[flat_index(axes, {nw + i[1], i[1], i[2]})] += (1.0 - rep.lambda) * p;
  });
  rep.lifted.emplace(axes, std::move(t));
  rep.markov_defect = conditional_mutual_information(*rep.lifted, {"X"}, {"W"}, {"U"});
  rep.margin = margin(region(RegionId::ck, *rep.lifted, c, {}), rep.point);
  if (rep.markov_defect > kTol) rep.margin = std::min(rep.margin, -rep.markov_defect);
  return rep;
}

// ---- deterministic channel ----

CheckResult det_match_report(const Dmbc& c, const Pmf& px, LeakagePair leak, std::uint64_t seed,
                              std::size_t trials) {
  if (!classify(c).deterministic) throw std::invalid_argument("det_match_check: channel is not deterministic");
  if (px.alphabet_size() != c.x_size) throw std::invalid_argument("det_match_check: input size mismatch");
  const auto g2 = y2_function(c);
  const RatePolytope det = region(RegionId::det, JointPmf::from_pmf(px, "X"), c, leak);
  auto rhs = [](const RatePolytope& p, std::string_view l) { return row_rhs(p, l); };
  // sd0 rows against their det counterparts; `exact` also asks for equality.
  auto compare = [&](const RatePolytope& sd0, bool exact) {
    double dev = 0.0;
    auto upd = [&](double sd_value, double det_value) {
      if (sd_value == det_value) return;
      if (std::isinf(sd_value) || std::isinf(det_value)) {
        if (exact || sd_value > det_value) dev = kInfinity;
        return;
      }
      dev = std::max(dev, exact ? std::abs(sd_value - det_value) : sd_value - det_value);
    };
    for (const char* l : {"r1", "r1_leak", "r2", "r2_leak"}) upd(rhs(sd0, l), rhs(det, l));
    const double common = std::min(rhs(sd0, "sum_common1"), rhs(sd0, "sum_common2"));
    upd(common, rhs(det, "sum"));
    if (exact && rhs(sd0, "sum_leak1") < rhs(det, "sum") - kTol) dev = std::max(dev, rhs(det, "sum") - rhs(sd0, "sum_leak1"));
    return dev;
  };

  CheckResult r{"det_to_sd0", trials + 1, 0.0, true, {}};
  {
    std::vector<double> t(c.y2_size * c.x_size, 0.0);
    for (std::size_t x = 0; x < c.x_size; ++x) t[g2[x] * c.x_size + x] = px[x];
    const JointPmf base({{"W", 1}, {"V", c.y2_size}, {"X", c.x_size}}, std::move(t));
    r.max_deviation = compare(region(RegionId::sd0, base, c, leak), true);
  }
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng(stream_seed(seed, k));
    const std::size_t nw = draw_size(rng, 1, 3), nv = draw_size(rng, 2, 3);
    const std::vector<Axis> axes{{"W", nw}, {"V", nv}, {"X", c.x_size}};
    std::vector<double> t(nw * nv * c.x_size, 0.0);
    for (std::size_t x = 0; x < c.x_size; ++x) {
      const auto wv = rng.flat_dirichlet(nw * nv);
      for (std::size_t k = 0; k < wv.size(); ++k) t[flat_index(axes, {k / nv, k % nv, x})] = px[x] * wv[k];
    }
    const JointPmf wvx(axes, std::move(t));
    r.max_deviation = std::max(r.max_deviation, compare(region(RegionId::sd0, wvx, c, leak), false));
  }
  r.pass = r.max_deviation <= kTol;
  if (!r.pass) r.detail = "row mismatch against the deterministic-channel region";
  return r;
}

bool det_match_check(const Dmbc& c, const Pmf& px, LeakagePair leak, std::uint64_t seed, std::size_t trials) {
  return det_match_report(c, px, leak, seed, trials).pass;
}

// ---- suites ----

bool SuiteReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> SuiteReport::failed() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.pass) out.push_back(c.name);
  return out;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j{{"name", c.name}, {"trials", c.trials}, {"pass", c.pass}};
    j["max_deviation"] = std::isfinite(c.max_deviation) ? nlohmann::json(c.max_deviation) : nlohmann::json("inf");
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(std::move(j));
  }
  return {{"checks", arr}, {"all_pass", all_pass()}};
}

SuiteReport reduction_suite(const SuiteOptions& opts) {
  SuiteReport rep;
  const std::size_t n = opts.trials;
  auto seed = [&](std::string_view name) { return check_seed(opts.seed, name); };

  rep.checks.push_back(run_trials("inner_to_marton", n, seed("inner_to_marton"), kTol, [](Rng& rng) {
    const Dmbc c = general_channel(rng);
    const JointPmf aux = random_joint(
        {{"U0", draw_size(rng, 1, 2)}, {"U1", draw_size(rng, 2, 3)}, {"U2", draw_size(rng, 2, 3)}, {"X", c.x_size}}, rng);
    const RatePolytope p = inner_bound_polytope(AuxChain(aux), c, LeakagePair::infinite());
    const JointPmf j = induce_joint(aux, c);
    InfoEvaluator ev(j);
    const double b = ev.mutual_information({"U1"}, {"U2"}, {"U0"});
    const double c1 = ev.mutual_information({"U0", "U1"}, {"Y1"}), c2 = ev.mutual_information({"U0", "U2"}, {"Y2"});
    const double s = ev.mutual_information({"U1"}, {"Y1"}, {"U0"}) + ev.mutual_information({"U2"}, {"Y2"}, {"U0"}) - b;
    const std::vector<std::pair<const char*, double>> marton = {
        {"r01", c1},
        {"r02", c2},
        {"sum_common1", s + ev.mutual_information({"U0"}, {"Y1"})},
        {"sum_common2", s + ev.mutual_information({"U0"}, {"Y2"})},
        {"double_common", c1 + c2 - b}};
    double dev = 0.0;
    std::size_t rate_rows = 0;
    for (const auto& h : p.halfspaces)
      if (h.label.rfind("nonneg_", 0) != 0) ++rate_rows;
    if (rate_rows != marton.size()) return kInfinity;
    for (const auto& [label, v] : marton) dev = std::max(dev, std::abs(row_rhs(p, label) - v));
    return dev;
  }));

  rep.checks.push_back(run_trials("inner_to_liu", n, seed("inner_to_liu"), kTol, [](Rng& rng) {
    const Dmbc c = general_channel(rng);
    const JointPmf aux = random_joint(
        {{"U0", draw_size(rng, 1, 2)}, {"U1", draw_size(rng, 2, 3)}, {"U2", draw_size(rng, 2, 3)}, {"X", c.x_size}}, rng);
    const RatePolytope in = slice(inner_bound_polytope(AuxChain(aux), c, {0.0, 0.0}), "R0");
    const RatePolytope liu = region(RegionId::liu, aux, c, {});
    double dev = support_deviation(in, liu);
    for (const char* l : {"r1_leak", "r2_leak"}) dev = std::max(dev, std::abs(row_rhs(in, l) - row_rhs(liu, l)));
    return dev;
  }));

  auto sd_channel = [&]() { return require_semi_deterministic(opts.channel); };

  rep.checks.push_back(run_trials("sd_slice_to_sd0", n, seed("sd_slice_to_sd0"), kTol, [&](Rng& rng) {
    const Dmbc c = sd_channel();
    const JointPmf p = random_wvx(rng, c.x_size);
    const LeakagePair leak{draw_leak(rng), draw_leak(rng)};
    return support_deviation(slice(region(RegionId::sd, p, c, leak), "R0"), region(RegionId::sd0, p, c, leak));
  }));

  rep.checks.push_back(run_trials("sd0_to_bothsecret", n, seed("sd0_to_bothsecret"), kTol, [&](Rng& rng) {
    const Dmbc c = sd_channel();
    const JointPmf p = random_wvx(rng, c.x_size);
    return support_deviation(slice(region(RegionId::sd, p, c, {0.0, 0.0}), "R0"),
                             region(RegionId::bothsecret, p, c, {}));
  }));

  // Corners where the union needs V to absorb W: sd0(P) sits inside target((W,V)) and
  // target(V) equals sd0 at a constant W.
  auto merge_corner = [&](const char* name, RegionId target, LeakagePair leak) {
    rep.checks.push_back(run_trials(name, n, seed(name), kTol, [&, target, leak](Rng& rng) {
      const Dmbc c = sd_channel();
      const JointPmf p = random_wvx(rng, c.x_size);
      const RatePolytope src = slice(region(RegionId::sd, p, c, leak), "R0");
      double dev = vertex_excess(src, {region(target, merge_wv(p), c, {})});
      const JointPmf vx = random_joint({{"V", draw_size(rng, 2, 3)}, {"X", c.x_size}}, rng);
      dev = std::max(dev, support_deviation(region(target, vx, c, {}), region(RegionId::sd0, const_w(vx), c, leak)));
      return dev;
    }));
  };
  merge_corner("sd0_to_m1secret", RegionId::m1secret, {0.0, kInfinity});
  merge_corner("sd0_to_gp_nosecrecy", RegionId::gp_nosecrecy, LeakagePair::infinite());

  rep.checks.push_back(run_trials("sd0_to_m2secret", n, seed("sd0_to_m2secret"), kTol, [&](Rng& rng) {
    const Dmbc c = sd_channel();
    const JointPmf p = random_wvx(rng, c.x_size);
    const LeakagePair leak{kInfinity, 0.0};
    const RatePolytope sd0 = slice(region(RegionId::sd, p, c, leak), "R0");
    const RatePolytope alt = region(RegionId::m2secret_alt, p, c, {});
    const RatePolytope m2 = region(RegionId::m2secret, p, c, {});
    // sd0 and m2secret inside the alternative form; the alternative form inside sd0 at P or
    // at (const, (W,V)); and inside m2secret of its time-shared lift.
    double dev = std::max(support_excess(sd0, alt), support_excess(m2, alt));
    dev = std::max(dev, vertex_excess(alt, {sd0, region(RegionId::sd0, const_w(merge_wv(p)), c, leak)}));
    dev = std::max(dev, lifted_vertex_excess(alt, [&](const std::vector<double>& v) {
      return m2secret_lift(p, {v[0], v[1]}, c);
    }));
    return dev;
  }));

  rep.checks.push_back(run_trials("dm_l0_to_dm0", n, seed("dm_l0_to_dm0"), kTol, [](Rng& rng) {
    const Dmbc c = general_channel(rng);
    const JointPmf p = random_markov_wux(rng, c.x_size);
    return support_deviation(region(RegionId::dm, p, c, {0.0, 0.0}), region(RegionId::dm0, p, c, {}));
  }));

  rep.checks.push_back(run_trials("dm_l0_to_ck", n, seed("dm_l0_to_ck"), kTol, [](Rng& rng) {
    const Dmbc c = general_channel(rng);
    const JointPmf p = random_markov_wux(rng, c.x_size);
    const RatePolytope dm = region(RegionId::dm, p, c, {0.0, 0.0});
    double dev = support_excess(region(RegionId::ck, p, c, {}), dm);
    dev = std::max(dev, lifted_vertex_excess(dm, [&](const std::vector<double>& v) {
      return ck_lift(p, {v[0], v[1]}, c);
    }));
    return dev;
  }));

  rep.checks.push_back(run_trials("dm_linf_to_degmsg", n, seed("dm_linf_to_degmsg"), kTol, [](Rng& rng) {
    const Dmbc c = general_channel(rng);
    const JointPmf wx = random_joint({{"W", draw_size(rng, 1, 3)}, {"X", c.x_size}}, rng);
    // U = X
    std::vector<double> t(wx.axes()[0].size * c.x_size * c.x_size, 0.0);
    for_each_cell(wx, [&](const std::vector<std::size_t>& i, double p) { t[(i[0] * c.x_size + i[1]) * c.x_size + i[1]] = p; });
    const JointPmf wux({{"W", wx.axes()[0].size}, {"U", c.x_size}, {"X", c.x_size}}, std::move(t));
    const RatePolytope dm = region(RegionId::dm, wux, c, {kInfinity, 0.0});
    const RatePolytope deg = region(RegionId::degmsg, wx, c, {});
    double dev = support_deviation(dm, deg);
    dev = std::max(dev, std::abs(row_rhs(dm, "r0") - row_rhs(deg, "r0")));
    dev = std::max(dev, std::abs(std::min(row_rhs(dm, "r01_a"), row_rhs(dm, "r01_b")) -
                                 std::min(row_rhs(deg, "r01"), row_rhs(deg, "r01_w"))));
    return dev;
  }));

  rep.checks.push_back(run_trials("outer_to_det", n, seed("outer_to_det"), kTol, [](Rng& rng) {
    const Dmbc c = random_deterministic_channel(draw_size(rng, 2, 4), 2, 2, rng);
    const Pmf px(rng.flat_dirichlet(c.x_size));
    const auto g1 = y1_function(c), g2 = y2_function(c);
    std::vector<double> t(c.y1_size * c.y2_size * c.x_size, 0.0);
    for (std::size_t x = 0; x < c.x_size; ++x) t[(g1[x] * c.y2_size + g2[x]) * c.x_size + x] = px[x];
    const JointPmf wuvx({{"W", 1}, {"U", c.y1_size}, {"V", c.y2_size}, {"X", c.x_size}}, std::move(t));
    const LeakagePair leak{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
    const RatePolytope outer = outer_bound_polytope(OuterChain(wuvx), c, leak);
    const RatePolytope det = region(RegionId::det, JointPmf::from_pmf(px, "X"), c, leak);
    return std::max(std::abs(row_rhs(outer, "r1_leak_v") - row_rhs(det, "r1_leak")),
                    std::abs(row_rhs(outer, "r2_leak_u") - row_rhs(det, "r2_leak")));
  }));

  {
    Rng rng(seed("det_to_sd0"));
    const Dmbc c = classify(opts.channel).deterministic ? opts.channel : random_deterministic_channel(3, 2, 2, rng);
    CheckResult agg{"det_to_sd0", 0, 0.0, true, {}};
    for (std::size_t t = 0; t < std::max<std::size_t>(1, n / 10); ++t) {
      const Pmf px(rng.flat_dirichlet(c.x_size));
      const LeakagePair leak{draw_leak(rng), draw_leak(rng)};
      const CheckResult r = det_match_report(c, px, leak, stream_seed(opts.seed, t), 50);
      agg.trials += r.trials;
      agg.max_deviation = std::max(agg.max_deviation, r.max_deviation);
      if (!r.pass && agg.pass) {
        agg.pass = false;
        agg.detail = r.detail;
      }
    }
    rep.checks.push_back(agg);
  }
  return rep;
}

CheckResult lift_suite_a(const SuiteOptions& opts) {
  return run_trials("m2secret_lift", opts.trials, check_seed(opts.seed, "m2secret_lift"), -kLiftMarginFloor,
                    [&](Rng& rng) {
                      const Dmbc c = require_semi_deterministic(opts.channel);
                      const JointPmf p = random_wvx(rng, c.x_size);
                      const RatePolytope alt = region(RegionId::m2secret_alt, p, c, {});
                      const auto vs = vertices(alt);
                      if (vs.empty()) return 0.0;
                      // Random convex combination of vertices: an interior or boundary point.
                      const auto w = rng.flat_dirichlet(vs.size());
                      std::array<double, 2> pt{0.0, 0.0};
                      for (std::size_t k = 0; k < vs.size(); ++k)
                        for (int i = 0; i < 2; ++i) pt[i] += w[k] * vs[k][i];
                      const LiftReport r = m2secret_lift(p, pt, c);
                      if (r.lambda < 0.0 || r.lambda > 1.0) return kInfinity;
                      return -r.margin;
                    });
}

CheckResult lift_suite_b(const SuiteOptions& opts) {
  return run_trials("ck_lift", opts.trials, check_seed(opts.seed, "ck_lift"), -kLiftMarginFloor,
                    [&](Rng& rng) {
                      validate_channel(opts.channel);
                      const Dmbc& c = opts.channel;
                      const JointPmf p = random_markov_wux(rng, c.x_size);
                      const RatePolytope dm0 = region(RegionId::dm0, p, c, {});
                      const auto vs = vertices(dm0);
                      if (vs.empty()) return 0.0;
                      const auto w = rng.flat_dirichlet(vs.size());
                      std::array<double, 2> pt{0.0, 0.0};
                      for (std::size_t k = 0; k < vs.size(); ++k)
                        for (int i = 0; i < 2; ++i) pt[i] += w[k] * vs[k][i];
                      const LiftReport r = ck_lift(p, pt, c);
                      if (r.lambda < 0.0 || r.lambda > 1.0) return kInfinity;
                      return -r.margin;
                    });
}

CheckResult sd_substitution_suite(const SuiteOptions& opts) {
  return run_trials("sd_substitution", opts.trials, check_seed(opts.seed, "sd_substitution"), kTol, [&](Rng& rng) {
    const Dmbc c = require_semi_deterministic(opts.channel);
    const auto f = y1_function(c);
    const JointPmf p = random_wvx(rng, c.x_size);
    const LeakagePair leak{draw_leak(rng), draw_leak(rng)};
    const std::size_t nw = p.axes()[0].size, nv = p.axes()[1].size;
    const std::vector<Axis> axes{{"U0", nw}, {"U1", c.y1_size}, {"U2", nv}, {"X", c.x_size}};
    std::vector<double> t(nw * c.y1_size * nv * c.x_size, 0.0);
    for_each_cell(p, [&](const std::vector<std::size_t>& i, double q) { t[flat_index(axes, {i[0], f[i[2]], i[1], i[2]})] += q; });
    const RatePolytope in = inner_bound_polytope(AuxChain(JointPmf(axes, std::move(t))), c, leak);
    const RatePolytope sd = region(RegionId::sd, p, c, leak);
    double dev = 0.0;
    for (const auto& h : sd.halfspaces) {
      const Halfspace* g = in.find(h.label);
      if (!g || g->coeffs != h.coeffs) return kInfinity;
      dev = std::max(dev, std::abs(g->rhs - h.rhs));
    }
    for (const auto& g : in.halfspaces) {
      if (sd.find(g.label)) continue;
      // Extra rows must be dominated by an sd row with the same coefficients.
      double best = kInfinity;
      for (const auto& h : sd.halfspaces)
        if (h.coeffs == g.coeffs) best = std::min(best, h.rhs);
      if (best > g.rhs + kTol) dev = std::max(dev, best - g.rhs);
    }
    return dev;
  });
}

CheckResult saturation_suite(const SuiteOptions& opts) {
  std::size_t saturated = 0;
  CheckResult r = run_trials("saturation", opts.trials, check_seed(opts.seed, "saturation"), kTol, [&](Rng& rng) {
    const Dmbc c = general_channel(rng);
    const JointPmf aux = random_joint(
        {{"U0", draw_size(rng, 2, 3)}, {"U1", draw_size(rng, 2, 3)}, {"U2", draw_size(rng, 2, 3)}, {"X", c.x_size}}, rng);
    const AuxChain chain(aux);
    const double t1 = leakage_threshold(chain, c, 1), t2 = leakage_threshold(chain, c, 2);
    // Each budget lands at or above its threshold with probability one half.
    const LeakagePair leak{rng.uniform(0.0, 2.0) * t1,
                           rng.uniform(0.0, 2.0) * t2};
    const RatePolytope base = slice(inner_bound_polytope(chain, c, leak), "R0");
    double dev = 0.0;
    for (int j = 1; j <= 2; ++j) {
      if (leak[j] < (j == 1 ? t1 : t2)) continue;
      ++saturated;
      LeakagePair open = leak;
      (j == 1 ? open.l1 : open.l2) = kInfinity;
      dev = std::max(dev, support_deviation(base, slice(inner_bound_polytope(chain, c, open), "R0")));
    }
    return dev;
  });
  r.detail = (r.detail.empty() ? "" : r.detail + "; ") + std::to_string(saturated) + " saturated budgets";
  return r;
}

CheckResult fme_derivation_check() {
  const IneqSystem derived = eliminate_all(achievability_system(), achievability_elimination_order());
  const bool eq = canonical_equal(derived, inner_bound_reference_system());
  return {"fme_derivation", 1, eq ? 0.0 : 1.0, eq, std::to_string(derived.inequalities.size()) + " rows"};
}

CheckResult projection_battery(const SuiteOptions& opts, std::size_t points_per_system) {
  const InfoSymbol unit = InfoSymbol::entropy({"Z"});
  return run_trials("projection_battery", opts.trials, check_seed(opts.seed, "projection_battery"), 0.0, [&](Rng& rng) {
    const std::size_t nvars = draw_size(rng, 2, 4), nelim = draw_size(rng, 1, nvars - 1);
    IneqSystem sys;
    for (std::size_t i = 0; i < nvars; ++i) sys.variables.push_back("x" + std::to_string(i + 1));
    const std::size_t rows = draw_size(rng, 3, 7);
    for (std::size_t k = 0; k < rows; ++k) {
      Inequality q;
      for (const auto& v : sys.variables) {
        const int a = static_cast<int>(rng.index(7)) - 3;
        if (a != 0) q.lhs[v] = a;
      }
      q.rhs[unit] = static_cast<int>(rng.index(13)) - 2;
      q.label = "row" + std::to_string(k);
      sys.inequalities.push_back(std::move(q));
    }
    for (const auto& v : sys.variables) {
      Inequality q;
      q.lhs[v] = -1;
      q.label = "nonneg_" + v;
      sys.inequalities.push_back(std::move(q));
    }
    const std::vector<std::string> elim(sys.variables.end() - static_cast<std::ptrdiff_t>(nelim), sys.variables.end());
    const IneqSystem projected = eliminate_all(sys, elim);
    const std::size_t keep = nvars - nelim;

    auto coef = [](const Inequality& q, const std::string& v) { return q.lhs.count(v) ? q.lhs.at(v) : Rational(0); };
    auto rhs_of = [&](const Inequality& q) { return q.rhs.count(unit) ? q.rhs.at(unit) : Rational(0); };
    double disagreements = 0.0;
    for (std::size_t s = 0; s < points_per_system; ++s) {
      std::vector<Rational> y(keep);
      for (auto& v : y) v = Rational(static_cast<int>(rng.index(25)) - 4, 4);
      bool in_proj = true;
      for (const auto& q : projected.inequalities) {
        Rational lhs = 0;
        for (std::size_t i = 0; i < keep; ++i) lhs += coef(q, sys.variables[i]) * y[i];
        if (q.strict ? !(lhs < rhs_of(q)) : !(lhs <= rhs_of(q))) in_proj = false;
      }
      detail::RationalMatrix a_le;
      std::vector<Rational> b_le;
      for (const auto& q : sys.inequalities) {
        Rational b = rhs_of(q);
        for (std::size_t i = 0; i < keep; ++i) b -= coef(q, sys.variables[i]) * y[i];
        std::vector<Rational> row;
        for (const auto& v : elim) row.push_back(coef(q, v));
        a_le.push_back(std::move(row));
        b_le.push_back(b);
      }
      const bool witness = detail::lp_feasible({}, {}, a_le, b_le, nelim);
      if (witness != in_proj) disagreements += 1.0;
    }
    return disagreements;
  });
}

SuiteReport verify_all(const SuiteOptions& opts) {
  std::vector<std::future<std::vector<CheckResult>>> jobs;
  jobs.push_back(std::async(std::launch::async, [&] { return reduction_suite(opts).checks; }));
  jobs.push_back(std::async(std::launch::async, [&] { return std::vector{lift_suite_a(opts), lift_suite_b(opts)}; }));
  jobs.push_back(std::async(std::launch::async, [&] { return std::vector{sd_substitution_suite(opts)}; }));
  jobs.push_back(std::async(std::launch::async, [&] { return std::vector{saturation_suite(opts)}; }));
  jobs.push_back(std::async(std::launch::async, [] { return std::vector{fme_derivation_check()}; }));
  jobs.push_back(std::async(std::launch::async, [&] { return std::vector{projection_battery(opts)}; }));
  SuiteReport rep;
  for (auto& j : jobs)
    for (auto& c : j.get()) rep.checks.push_back(std::move(c));
  return rep;
}

}  // namespace bcleak
