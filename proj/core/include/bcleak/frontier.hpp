#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "bcleak/pmf.hpp"

namespace bcleak {

struct FrontierPoint {
  double r1 = 0.0;
  double r2 = 0.0;
  std::size_t provenance = 0;  // index into FrontierCurve::sources
};

// Nondominated staircase: r1 strictly increasing, r2 strictly decreasing. Consecutive
// points with the same provenance come from one convex polytope, so the segment between
// them belongs to the union as well.
struct FrontierCurve {
  std::vector<FrontierPoint> points;
  std::vector<JointPmf> sources;
  std::string label;
};

class StaircaseBuilder {
 public:
  void add(double r1, double r2, std::size_t provenance);
  std::size_t candidates() const { return pts_.size(); }
  void add_all(const std::vector<FrontierPoint>& pts);
  // Sources are re-indexed to the ones that survive.
  FrontierCurve build(const std::function<JointPmf(std::size_t)>& source_of,
                      std::string label = {}) const;
  std::vector<FrontierPoint> staircase() const;

 private:
  std::vector<FrontierPoint> pts_;
};

// Largest r2 in the downward closure of the curve at abscissa x (-inf past the end).
double frontier_height(const FrontierCurve& f, double x);
// (r1, r2) lies in the curve's region enlarged by tol in both coordinates.
bool covered(const FrontierCurve& f, double r1, double r2, double tol);
// Smallest t >= 0 with every point of a covered by b at tolerance t.
double frontier_excess(const FrontierCurve& a, const FrontierCurve& b);
double frontier_distance(const FrontierCurve& a, const FrontierCurve& b);

// Every point of b is covered by a within `slack`, and some point of a lies outside
// b's region by more than `margin`.
bool frontier_dominates(const FrontierCurve& a, const FrontierCurve& b, double margin,
                        double slack = 1e-9);

// Upper-right boundary of the convex hull of the curve and the origin, from the
// highest point on the r2 axis to the farthest point on the r1 axis.
std::vector<std::array<double, 2>> upper_concave_envelope(const FrontierCurve& f);

// Short stable hash of a distribution (axes and tensor bytes).
std::string fingerprint(const JointPmf& p);

}  // namespace bcleak
