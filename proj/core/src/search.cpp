#include "bcleak/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

#include "bcleak/random.hpp"

namespace bcleak {
namespace {

constexpr std::size_t kMaxGrid = 5'000'000;
constexpr std::size_t kRestarts = 3;
constexpr double kInitialStep = 0.05;

// C(n, k) saturating at kMaxGrid + 1.
std::size_t binom_capped(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (r > kMaxGrid) return kMaxGrid + 1;
  }
  return static_cast<std::size_t>(std::llround(r));
}

// Compositions of `total` into `parts` nonnegative parts, in lexicographic order.
std::vector<std::size_t> unrank_composition(std::size_t k, std::size_t total, std::size_t parts) {
  std::vector<std::size_t> out(parts, 0);
  std::size_t rest = total;
  for (std::size_t i = 0; i + 1 < parts; ++i) {
    const std::size_t m = parts - i;
    for (std::size_t v = 0; v <= rest; ++v) {
      const std::size_t cnt = binom_capped(rest - v + m - 2, m - 2);
      if (k < cnt) {
        out[i] = v;
        rest -= v;
        break;
      }
      k -= cnt;
    }
  }
  out[parts - 1] = rest;
  return out;
}

void add_vertices(const RatePolytope& p, std::size_t prov, std::vector<FrontierPoint>& out) {
  for (const auto& v : vertices(planar_view(p))) out.push_back({v[0], v[1], prov});
}

double reach(const PolytopeFn& fn, const JointPmf& p, const std::array<double, 2>& u) {
  const RatePolytope q = planar_view(fn(p));
  return radial_reach(q, u);
}

struct Refined {
  std::vector<JointPmf> accepted;
};

// Coordinate ascent on the flat tensor for the radial reach along u.
Refined refine_one(const PolytopeFn& fn, const JointPmf& start, const std::array<double, 2>& u,
                   std::size_t iters) {
  Refined out;
  std::vector<double> p(start.tensor().begin(), start.tensor().end());
  double best = reach(fn, start, u);
  const auto axes = start.axes();
  for (std::size_t restart = 0; restart < kRestarts; ++restart) {
    double step = kInitialStep * std::pow(0.5, static_cast<double>(restart));
    for (std::size_t it = 0; it < iters; ++it) {
      bool improved = false;
      for (std::size_t i = 0; i < p.size(); ++i)
        for (double sgn : {1.0, -1.0}) {
          std::vector<double> q = p;
          q[i] = std::max(0.0, q[i] + sgn * step);
          double s = 0.0;
          for (double v : q) s += v;
          if (s <= 0.0) continue;
          for (double& v : q) v /= s;
          JointPmf cand(axes, q);
          const double r = reach(fn, cand, u);
          if (r > best + 1e-12) {
            best = r;
            p = std::move(q);
            out.accepted.push_back(std::move(cand));
            improved = true;
          }
        }
      if (!improved) step *= 0.5;
    }
  }
  return out;
}

template <class F>
void parallel_for(std::size_t n, std::size_t workers, F&& body) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    body(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
    pool.emplace_back([&, w, lo, hi] { body(w, lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

void SearchBudget::validate() const {
  if (grid_steps == 0 || random_samples == 0 || refine_iters == 0)
    throw std::invalid_argument("search budget fields must be positive");
}

AuxSampler::AuxSampler(std::vector<Axis> axes, SearchBudget budget)
    : axes_(std::move(axes)), budget_(budget) {
  budget_.validate();
  random_count_ = budget_.random_samples;
  for (const Axis& a : axes_) cells_ *= a.size;
  grid_count_ = binom_capped(budget_.grid_steps + cells_ - 1, cells_ - 1);
  if (grid_count_ > kMaxGrid) throw std::invalid_argument("AuxSampler: grid too large for these alphabets");
}

AuxSampler AuxSampler::grid(std::vector<Axis> axes, std::size_t steps) {
  AuxSampler s(std::move(axes), SearchBudget{steps, 1, 1, 0});
  s.random_count_ = 0;
  return s;
}

JointPmf AuxSampler::at(std::size_t k) const {
  if (k >= size()) throw std::out_of_range("AuxSampler::at");
  if (k < grid_count_) {
    const auto comp = unrank_composition(k, budget_.grid_steps, cells_);
    std::vector<double> t(cells_);
    for (std::size_t i = 0; i < cells_; ++i)
      t[i] = static_cast<double>(comp[i]) / static_cast<double>(budget_.grid_steps);
    return JointPmf(axes_, std::move(t));
  }
  Rng rng(stream_seed(budget_.seed, k - grid_count_));
  return random_joint(axes_, rng);
}

std::vector<JointPmf> sample_aux_chains(const std::vector<Axis>& axes, const SearchBudget& budget) {
  AuxSampler s(axes, budget);
  std::vector<JointPmf> out;
  out.reserve(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) out.push_back(s.at(k));
  return out;
}

FrontierCurve frontier_search(const AuxSampler& sampler, const PolytopeFn& polytope,
                              std::size_t refine_iters, std::size_t workers, std::string label) {
  const std::size_t n = sampler.size(), grid = sampler.grid_count();
  std::vector<std::vector<FrontierPoint>> per_sample(n);
  parallel_for(n, workers, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) add_vertices(polytope(sampler.at(k)), k, per_sample[k]);
  });

  // Refinement seeds: the supporters of the staircase of every dyadic prefix of the random
  // stream, each aimed along its point's ray. Doubling the random budget only adds seeds.
  struct Seed {
    std::size_t prov;
    std::array<double, 2> u;
    auto operator<=>(const Seed&) const = default;
  };
  std::set<Seed> seed_set;
  StaircaseBuilder all;
  std::size_t done = 0;
  std::vector<std::size_t> prefixes;
  for (std::size_t r = n - grid; r > 0; r /= 2) prefixes.push_back(grid + r);
  if (grid > 0) prefixes.push_back(grid);
  for (auto it = prefixes.rbegin(); it != prefixes.rend(); ++it) {
    for (; done < *it; ++done) all.add_all(per_sample[done]);
    for (const auto& q : all.staircase()) {
      const double norm = std::hypot(q.r1, q.r2);
      if (norm <= 0.0) continue;
      seed_set.insert({q.provenance, {q.r1 / norm, q.r2 / norm}});
    }
  }
  const std::vector<Seed> seeds(seed_set.begin(), seed_set.end());
  std::vector<Refined> refined(seeds.size());
  parallel_for(seeds.size(), workers, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      refined[i] = refine_one(polytope, sampler.at(seeds[i].prov), seeds[i].u, refine_iters);
  });
  std::vector<JointPmf> extra;
  std::vector<FrontierPoint> buf;
  for (auto& r : refined)
    for (auto& cand : r.accepted) {
      buf.clear();
      add_vertices(polytope(cand), n + extra.size(), buf);
      all.add_all(buf);
      extra.push_back(std::move(cand));
    }
  return all.build(
      [&](std::size_t prov) { return prov < n ? sampler.at(prov) : extra.at(prov - n); },
      std::move(label));
}

std::vector<Axis> region_axes(RegionId id, const Dmbc& c, std::size_t aux_size) {
  if (aux_size == 0) throw std::invalid_argument("auxiliary alphabet size must be positive");
  std::vector<Axis> axes;
  for (const auto& name : region_spec(id).aux_axes)
    axes.push_back({name, name == "X" ? c.x_size : aux_size});
  return axes;
}

FrontierCurve union_frontier(RegionId id, const Dmbc& c, LeakagePair leak, const SearchBudget& budget,
                             const UnionOptions& opts) {
  budget.validate();
  const RegionSpec& spec = region_spec(id);
  if (!satisfies(classify(c), spec.requirement))
    throw std::invalid_argument(spec.name + ": channel does not meet the region's class requirement");
  if (leak.l1 < 0 || leak.l2 < 0) throw std::invalid_argument("leakage budgets must be nonnegative");
  AuxSampler sampler(region_axes(id, c, opts.aux_size), budget);
  PolytopeFn fn = [&](const JointPmf& p) {
    if (id == RegionId::outer) return evaluate_region(spec, induce_joint(project_outer_markov(p), c), leak);
    return evaluate_region(spec, induce_joint(p, c), leak);
  };
  return frontier_search(sampler, fn, budget.refine_iters, opts.workers, spec.name);
}

}  // namespace bcleak
