#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bcleak/frontier.hpp"
#include "bcleak/polytope.hpp"

namespace bcleak {

// Input pmf (alpha, beta, 1 - alpha - beta) on the ternary Blackwell input.
struct BlackwellParams {
  double alpha = 0.0;
  double beta = 0.0;
};

JointPmf bwc_input(BlackwellParams p);
// Rows r1, r1_leak, r2, r2_leak, sum over (R1, R2); leakage rows are omitted for infinite budgets.
RatePolytope bwc_polytope(BlackwellParams p, LeakagePair leak);
// I(Y1;Y2) under the input pmf.
double bwc_lstar(BlackwellParams p);

struct ThresholdResult {
  double lstar = 0.0;
  BlackwellParams argmax;          // boundary distribution attaining lstar
  std::size_t direction = 0;       // fan index where it was attained
  std::vector<BlackwellParams> boundary;  // refined maximizer per fan direction
};

// Max of I(Y1;Y2) over the distributions that attain the support of the (L, L) region
// in each of `directions` evenly spaced nonnegative directions.
ThresholdResult bwc_saturation_threshold(double leak, double resolution = 1e-3,
                                         std::size_t directions = 181);

struct SumRateCurve {
  std::vector<double> leak;
  std::vector<double> sum_rate;
  std::vector<BlackwellParams> argmax;
  // Smallest L at which the total-entropy row binds at the optimum.
  double breakpoint = 0.0;
  double plateau = 0.0;
  // Where min{max(R1 cap + R2 cap), max H(X)} turns, optimizing the two terms separately.
  double decoupled_breakpoint = 0.0;
};

SumRateCurve bwc_sumrate_curve(std::span<const double> leak_grid, double resolution = 1e-3);

FrontierCurve bwc_frontier(LeakagePair leak, double resolution = 1e-2, std::size_t refine_iters = 8,
                           std::size_t workers = 1);

struct BwcShapes {
  RatePolytope no_secrecy;    // (inf, inf)
  RatePolytope m1_secret;     // (0, inf)
  RatePolytope m2_secret;     // (inf, 0)
  RatePolytope both_secret;   // (0, 0)
};

BwcShapes bwc_shapes(BlackwellParams p);

}  // namespace bcleak
