#include "bcleak/blackwell.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "bcleak/channel.hpp"
#include "bcleak/search.hpp"

namespace bcleak {
namespace {

constexpr double kTilt = 1e-7;
constexpr int kGoldenIters = 60;
constexpr int kRefineRounds = 4;

struct Terms {
  double hb_beta, c1, hb_alpha, c2, hx;
};

Terms terms(double a, double b) {
  const double g = std::max(0.0, 1.0 - a - b);
  Terms t{};
  t.hb_beta = binary_entropy(b);
  t.hb_alpha = binary_entropy(a);
  t.c1 = a < 1.0 ? (1.0 - a) * binary_entropy(std::clamp(b / (1.0 - a), 0.0, 1.0)) : 0.0;
  t.c2 = b < 1.0 ? (1.0 - b) * binary_entropy(std::clamp(a / (1.0 - b), 0.0, 1.0)) : 0.0;
  t.hx = entropy(std::vector<double>{a, b, g});
  return t;
}

struct Caps {
  double r1, r2, sum;
};

Caps caps(const Terms& t, double l1, double l2) {
  return {std::min(t.hb_beta, t.c1 + l1), std::min(t.hb_alpha, t.c2 + l2), t.hx};
}

double support(const Caps& k, double c, double s) {
  return std::max(c * k.r1 + s * std::min(k.r2, k.sum - k.r1), c * std::min(k.r1, k.sum - k.r2) + s * k.r2);
}

void check_params(BlackwellParams p) {
  if (!(p.alpha >= -1e-12 && p.beta >= -1e-12 && p.alpha + p.beta <= 1.0 + 1e-12))
    throw std::invalid_argument("Blackwell parameters outside the simplex");
}

BlackwellParams clamp_params(BlackwellParams p) {
  p.alpha = std::clamp(p.alpha, 0.0, 1.0);
  p.beta = std::clamp(p.beta, 0.0, 1.0 - p.alpha);
  return p;
}

// Simplex grid over (alpha, beta) with the per-point terms cached.
struct Grid {
  std::size_t n;
  std::vector<BlackwellParams> params;
  std::vector<Terms> terms;

  explicit Grid(double resolution) {
    if (!(resolution > 0.0 && resolution <= 0.5)) throw std::invalid_argument("bad grid resolution");
    n = static_cast<std::size_t>(std::llround(1.0 / resolution));
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; i + j <= n; ++j) {
        const double a = static_cast<double>(i) / static_cast<double>(n);
        const double b = static_cast<double>(j) / static_cast<double>(n);
        params.push_back({a, b});
        terms.push_back(bcleak::terms(a, b));
      }
  }
};

using Objective = std::function<double(BlackwellParams)>;

// Golden-section ascent along the three pairwise mass exchanges of the ternary simplex,
// each bracketed to +-radius around the current point.
BlackwellParams refine(const Objective& f, BlackwellParams p, double radius) {
  static constexpr double dirs[3][2] = {{1.0, 0.0}, {0.0, 1.0}, {1.0, -1.0}};
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double best = f(p);
  for (int round = 0; round < kRefineRounds; ++round)
    for (const auto& d : dirs) {
      double lo = -radius, hi = radius;
      auto feasible_t = [&](double t) {
        const double a = p.alpha + t * d[0], b = p.beta + t * d[1];
        return a >= 0.0 && b >= 0.0 && a + b <= 1.0;
      };
      // Shrink the bracket onto the simplex.
      for (int k = 0; k < 60 && !feasible_t(lo); ++k) lo *= 0.5;
      for (int k = 0; k < 60 && !feasible_t(hi); ++k) hi *= 0.5;
      if (!feasible_t(lo)) lo = 0.0;
      if (!feasible_t(hi)) hi = 0.0;
      auto g = [&](double t) { return f(clamp_params({p.alpha + t * d[0], p.beta + t * d[1]})); };
      double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
      double g1 = g(x1), g2 = g(x2);
      for (int it = 0; it < kGoldenIters; ++it) {
        if (g1 < g2) {
          lo = x1;
          x1 = x2;
          g1 = g2;
          x2 = lo + phi * (hi - lo);
          g2 = g(x2);
        } else {
          hi = x2;
          x2 = x1;
          g2 = g1;
          x1 = hi - phi * (hi - lo);
          g1 = g(x1);
        }
      }
      const double t = 0.5 * (lo + hi);
      const double v = g(t);
      if (v > best) {
        best = v;
        p = clamp_params({p.alpha + t * d[0], p.beta + t * d[1]});
      }
    }
  return p;
}

// Argmax over the grid followed by local refinement.
BlackwellParams maximize(const Grid& grid, const std::function<double(const Terms&)>& on_terms,
                         double resolution) {
  std::size_t arg = 0;
  double best = -kInfinity;
  for (std::size_t k = 0; k < grid.params.size(); ++k) {
    const double v = on_terms(grid.terms[k]);
    if (v > best) {
      best = v;
      arg = k;
    }
  }
  return refine([&](BlackwellParams p) { return on_terms(terms(p.alpha, p.beta)); }, grid.params[arg],
                2.0 * resolution);
}

double bisect(const std::function<bool(double)>& after, double lo, double hi) {
  for (int i = 0; i < 50; ++i) {
    const double mid = 0.5 * (lo + hi);
    (after(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

JointPmf bwc_input(BlackwellParams p) {
  check_params(p);
  p = clamp_params(p);
  return JointPmf({Axis{"X", 3}}, {p.alpha, p.beta, std::max(0.0, 1.0 - p.alpha - p.beta)});
}

RatePolytope bwc_polytope(BlackwellParams p, LeakagePair leak) {
  check_params(p);
  if (leak.l1 < 0 || leak.l2 < 0) throw std::invalid_argument("leakage budgets must be nonnegative");
  p = clamp_params(p);
  const Terms t = terms(p.alpha, p.beta);
  RatePolytope out;
  out.axes = {"R1", "R2"};
  out.label = "blackwell";
  out.halfspaces.push_back({{1, 0}, t.hb_beta, "r1"});
  if (std::isfinite(leak.l1)) out.halfspaces.push_back({{1, 0}, t.c1 + leak.l1, "r1_leak"});
  out.halfspaces.push_back({{0, 1}, t.hb_alpha, "r2"});
  if (std::isfinite(leak.l2)) out.halfspaces.push_back({{0, 1}, t.c2 + leak.l2, "r2_leak"});
  out.halfspaces.push_back({{1, 1}, t.hx, "sum"});
  out.halfspaces.push_back({{-1, 0}, 0.0, "nonneg_R1"});
  out.halfspaces.push_back({{0, -1}, 0.0, "nonneg_R2"});
  return out;
}

double bwc_lstar(BlackwellParams p) {
  check_params(p);
  p = clamp_params(p);
  const Terms t = terms(p.alpha, p.beta);
  return std::max(0.0, t.hb_beta - t.c1);
}

ThresholdResult bwc_saturation_threshold(double leak, double resolution, std::size_t directions) {
  if (leak < 0) throw std::invalid_argument("leakage must be nonnegative");
  if (directions < 2) throw std::invalid_argument("need at least two directions");
  const Grid grid(resolution);
  std::vector<Caps> k;
  k.reserve(grid.terms.size());
  for (const auto& t : grid.terms) k.push_back(caps(t, leak, leak));
  ThresholdResult out;
  for (std::size_t d = 0; d < directions; ++d) {
    const double th = (std::numbers::pi / 2) * static_cast<double>(d) / static_cast<double>(directions - 1);
    const double c0 = d + 1 == directions ? 0.0 : std::cos(th), s0 = d == 0 ? 0.0 : std::sin(th);
    // Tilt toward the diagonal so that flat faces resolve to their exposed endpoint.
    double c = c0, s = s0;
    if (2 * d < directions - 1) {
      c = c0 - kTilt * s0;
      s = s0 + kTilt * c0;
    } else if (2 * d > directions - 1) {
      c = c0 + kTilt * s0;
      s = s0 - kTilt * c0;
    }
    std::size_t arg = 0;
    double best = -kInfinity;
    for (std::size_t i = 0; i < k.size(); ++i) {
      const double v = support(k[i], c, s);
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    const BlackwellParams p = refine(
        [&](BlackwellParams q) { return support(caps(terms(q.alpha, q.beta), leak, leak), c, s); },
        grid.params[arg], 2.0 * resolution);
    out.boundary.push_back(p);
    const double ls = bwc_lstar(p);
    if (d == 0 || ls > out.lstar) {
      out.lstar = ls;
      out.argmax = p;
      out.direction = d;
    }
  }
  return out;
}

SumRateCurve bwc_sumrate_curve(std::span<const double> leak_grid, double resolution) {
  const Grid grid(resolution);
  SumRateCurve out;
  auto best_sum = [&](double l) {
    return maximize(grid, [&](const Terms& t) {
      const Caps k = caps(t, l, l);
      return std::min(k.r1 + k.r2, k.sum);
    }, resolution);
  };
  auto best_caps = [&](double l) {
    return maximize(grid, [&](const Terms& t) {
      const Caps k = caps(t, l, l);
      return k.r1 + k.r2;
    }, resolution);
  };
  for (double l : leak_grid) {
    if (l < 0) throw std::invalid_argument("leakage must be nonnegative");
    const BlackwellParams p = best_sum(l);
    const Caps k = caps(terms(p.alpha, p.beta), l, l);
    out.leak.push_back(l);
    out.sum_rate.push_back(std::min(k.r1 + k.r2, k.sum));
    out.argmax.push_back(p);
  }
  const BlackwellParams hx_arg =
      maximize(grid, [](const Terms& t) { return t.hx; }, resolution);
  out.plateau = terms(hx_arg.alpha, hx_arg.beta).hx;
  // The total-entropy row binds once it cuts below the rate caps at their maximizer.
  out.breakpoint = bisect([&](double l) {
    const BlackwellParams p = best_caps(l);
    const Caps k = caps(terms(p.alpha, p.beta), l, l);
    return k.sum < k.r1 + k.r2;
  }, 0.0, 1.0);
  out.decoupled_breakpoint = bisect([&](double l) {
    const BlackwellParams p = best_caps(l);
    const Caps k = caps(terms(p.alpha, p.beta), l, l);
    return k.r1 + k.r2 >= out.plateau;
  }, 0.0, 1.0);
  return out;
}

FrontierCurve bwc_frontier(LeakagePair leak, double resolution, std::size_t refine_iters,
                           std::size_t workers) {
  if (!(resolution > 0.0 && resolution <= 1e-2 + 1e-15))
    throw std::invalid_argument("bwc_frontier: resolution must be in (0, 0.01]");
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / resolution));
  const AuxSampler sampler = AuxSampler::grid({Axis{"X", 3}}, steps);
  PolytopeFn fn = [leak](const JointPmf& p) {
    auto t = p.tensor();
    return bwc_polytope({t[0], t[1]}, leak);
  };
  return frontier_search(sampler, fn, refine_iters, workers, "blackwell");
}

BwcShapes bwc_shapes(BlackwellParams p) {
  return {bwc_polytope(p, LeakagePair::infinite()), bwc_polytope(p, {0.0, kInfinity}),
          bwc_polytope(p, {kInfinity, 0.0}), bwc_polytope(p, {0.0, 0.0})};
}

}  // namespace bcleak
