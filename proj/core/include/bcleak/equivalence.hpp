#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcleak/channel.hpp"
#include "bcleak/polytope.hpp"

namespace bcleak {

inline constexpr double kLiftMarginFloor = -1e-9;

struct LiftReport {
  double gap = 0.0;     // private-rate penalty term of the source region
  double gamma = 0.0;   // gap minus the lifted coordinate
  double lambda = 1.0;  // weight of the first time-sharing branch
  std::vector<double> point;
  bool source_member = false;
  std::optional<JointPmf> lifted;
  double margin = 0.0;  // target-region membership margin of the point
  double markov_defect = 0.0;
  bool member() const { return margin >= kLiftMarginFloor; }
};

// (R1,R2) in m2secret_alt under P(W,V,X) -> same point in m2secret under the time-shared
// auxiliary W* = (branch, W or (W,V)), V* = (W,V). Requires a semi-deterministic channel.
LiftReport m2secret_lift(const JointPmf& wvx, std::array<double, 2> r12, const Dmbc& c);
// (R0,R1) in dm0 under P(W,U)P(X|U) -> same point in ck under W* = (branch, W or U), U* = U.
LiftReport ck_lift(const JointPmf& wux, std::array<double, 2> r01, const Dmbc& c);

struct CheckResult {
  std::string name;
  std::size_t trials = 0;
  double max_deviation = 0.0;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::vector<CheckResult> checks;

  bool all_pass() const;
  std::vector<std::string> failed() const;
  nlohmann::json to_json() const;
};

struct SuiteOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  // Channel used by the checks that need a semi-deterministic or deterministic channel.
  Dmbc channel = blackwell();
};

// Deterministic-channel region equals sd0 at W = const, V = Y2, row by row, and random
// (W,V) augmentations never exceed it.
CheckResult det_match_report(const Dmbc& c, const Pmf& px, LeakagePair leak, std::uint64_t seed = 1,
                              std::size_t trials = 50);
bool det_match_check(const Dmbc& c, const Pmf& px, LeakagePair leak, std::uint64_t seed = 1,
                      std::size_t trials = 50);

// Region-to-region specializations (each check draws its own random distributions).
SuiteReport reduction_suite(const SuiteOptions& opts = {});

CheckResult lift_suite_a(const SuiteOptions& opts);
CheckResult lift_suite_b(const SuiteOptions& opts);
// Inner bound at U0 = W, U1 = Y1, U2 = V matches the semi-deterministic region row by row.
CheckResult sd_substitution_suite(const SuiteOptions& opts);
// Finite and infinite Lj inner polytopes agree once Lj reaches the saturation threshold.
CheckResult saturation_suite(const SuiteOptions& opts);
CheckResult fme_derivation_check();
// Random small systems: membership in the eliminated system against exact LP feasibility.
CheckResult projection_battery(const SuiteOptions& opts, std::size_t points_per_system = 100);

SuiteReport verify_all(const SuiteOptions& opts);

}  // namespace bcleak
