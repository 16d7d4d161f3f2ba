#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bcleak {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kMembershipSlack = 1e-9;

struct LeakagePair {
  double l1 = 0.0;
  double l2 = 0.0;

  static LeakagePair infinite() { return {kInfinity, kInfinity}; }
  double operator[](int j) const { return j == 1 ? l1 : l2; }
};

struct RatePoint {
  double r0 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;

  // Coordinate named R0, R1 or R2.
  double get(std::string_view axis) const;
};

// coeffs . r <= rhs
struct Halfspace {
  std::vector<double> coeffs;
  double rhs = 0.0;
  std::string label;
};

struct RatePolytope {
  std::vector<std::string> axes;
  std::vector<Halfspace> halfspaces;
  std::string label;

  std::size_t dim() const { return axes.size(); }
  std::size_t axis_index(std::string_view name) const;
  const Halfspace* find(std::string_view row_label) const;
};

std::vector<double> coordinates(const RatePolytope& p, const RatePoint& point);
bool contains(const RatePolytope& p, std::span<const double> x, double slack = kMembershipSlack);
bool contains(const RatePolytope& p, const RatePoint& point, double slack = kMembershipSlack);
// Min over rows of rhs - coeffs.x; nonnegative iff x is a member.
double margin(const RatePolytope& p, std::span<const double> x);

// Vertex enumeration for dimension <= 3.
std::vector<std::vector<double>> vertices(const RatePolytope& p);
bool is_empty(const RatePolytope& p);
// Max of direction.x over the polytope; -inf when empty. Throws std::domain_error
// when unbounded in a direction with positive weight.
double support_value(const RatePolytope& p, std::span<const double> direction);
// Largest t with t*u inside the polytope, for a nonnegative direction u.
double radial_reach(const RatePolytope& p, std::span<const double> u);

// Fixes one axis to a value and drops it.
RatePolytope slice(const RatePolytope& p, std::string_view axis, double value = 0.0);
// 2-D view used for frontiers: the R0 = 0 slice of a 3-D rate polytope, or the polytope itself.
RatePolytope planar_view(const RatePolytope& p);

// n directions spread over the closed quarter circle, (cos t, sin t).
std::vector<std::array<double, 2>> quarter_fan(std::size_t n);

}  // namespace bcleak
