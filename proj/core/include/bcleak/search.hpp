#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "bcleak/channel.hpp"
#include "bcleak/frontier.hpp"
#include "bcleak/polytope.hpp"
#include "bcleak/regions.hpp"

namespace bcleak {

struct SearchBudget {
  std::size_t grid_steps = 4;
  std::size_t random_samples = 64;
  std::size_t refine_iters = 8;
  std::uint64_t seed = 1;

  void validate() const;
};

// Deterministic candidate stream: all grid points of the joint simplex with
// `grid_steps` steps (lexicographic), then `random_samples` flat-Dirichlet draws, draw k
// seeded from (seed, k) alone.
class AuxSampler {
 public:
  AuxSampler(std::vector<Axis> axes, SearchBudget budget);
  // Grid points only, no random draws.
  static AuxSampler grid(std::vector<Axis> axes, std::size_t steps);

  std::size_t size() const { return grid_count_ + random_count_; }
  std::size_t grid_count() const { return grid_count_; }
  const std::vector<Axis>& axes() const { return axes_; }
  JointPmf at(std::size_t k) const;

 private:
  std::vector<Axis> axes_;
  SearchBudget budget_;
  std::size_t cells_ = 1;
  std::size_t grid_count_ = 0;
  std::size_t random_count_ = 0;
};

std::vector<JointPmf> sample_aux_chains(const std::vector<Axis>& axes, const SearchBudget& budget);

using PolytopeFn = std::function<RatePolytope(const JointPmf&)>;

struct UnionOptions {
  std::size_t aux_size = 2;  // alphabet size of every auxiliary
  std::size_t workers = 1;
};

// Staircase of the union of planar polytopes over the sampler's stream, followed by
// coordinate-perturbation refinement of every frontier-supporting candidate.
FrontierCurve frontier_search(const AuxSampler& sampler, const PolytopeFn& polytope,
                              std::size_t refine_iters, std::size_t workers, std::string label = {});

std::vector<Axis> region_axes(RegionId id, const Dmbc& c, std::size_t aux_size);

FrontierCurve union_frontier(RegionId id, const Dmbc& c, LeakagePair leak, const SearchBudget& budget,
                             const UnionOptions& opts = {});

}  // namespace bcleak
