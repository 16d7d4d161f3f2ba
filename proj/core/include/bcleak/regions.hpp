#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bcleak/channel.hpp"
#include "bcleak/ineq.hpp"
#include "bcleak/polytope.hpp"

namespace bcleak {

enum class RegionId {
  inner,
  outer,
  sd,
  dm,
  pd,
  sd0,
  liu,
  gp_nosecrecy,
  m1secret,
  m2secret,
  m2secret_alt,
  bothsecret,
  ck,
  dm0,
  degmsg,
  det,
};

enum class ChannelRequirement { none, semi_deterministic, physically_degraded, deterministic };

struct RegionSpec {
  RegionId id;
  std::string name;
  AxisNames aux_axes;  // distribution axes, X last
  ChannelRequirement requirement = ChannelRequirement::none;
  IneqSystem system;   // variables are the rate axes
};

const RegionSpec& region_spec(RegionId id);
std::span<const RegionId> all_region_ids();
RegionId parse_region_id(std::string_view name);
std::string_view to_string(RegionId id);

bool satisfies(const ChannelClass& k, ChannelRequirement r);

// Evaluates the region on a distribution over its auxiliary axes (checked), after
// checking the channel class requirement.
RatePolytope named_region_polytope(RegionId id, const JointPmf& dist, const Dmbc& c, LeakagePair leak);
// No checks; `induced` already carries Y1 and Y2.
RatePolytope evaluate_region(const RegionSpec& spec, const JointPmf& induced, LeakagePair leak);

RatePolytope inner_bound_polytope(const AuxChain& aux, const Dmbc& c, LeakagePair leak);
RatePolytope outer_bound_polytope(const OuterChain& aux, const Dmbc& c, LeakagePair leak);

// Leakage level above which raising Lj no longer changes the inner polytope.
double leakage_threshold(const AuxChain& aux, const Dmbc& c, int j);

struct SaturationReport {
  std::array<double, 2> threshold{};
  std::array<bool, 2> saturated{};
  // For saturated j: every row carrying Lj in the R0 = 0 slice is dominated by a
  // leakage-free row with the same rate part.
  std::array<bool, 2> verified{};
};

SaturationReport saturation_check(const AuxChain& aux, const Dmbc& c, LeakagePair leak);

}  // namespace bcleak
