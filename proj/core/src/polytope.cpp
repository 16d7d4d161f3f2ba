#include "bcleak/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bcleak {
namespace {

// Solves the d x d system in place by Gaussian elimination; false if singular.
bool solve(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const std::size_t d = b.size();
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-12) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t k = col; k < d; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  x.resize(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = b[i] / a[i][i];
  return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool row_is_zero(const Halfspace& h) {
  return std::all_of(h.coeffs.begin(), h.coeffs.end(), [](double c) { return c == 0.0; });
}

}  // namespace

double RatePoint::get(std::string_view axis) const {
  if (axis == "R0") return r0;
  if (axis == "R1") return r1;
  if (axis == "R2") return r2;
  throw std::out_of_range("RatePoint: unknown axis '" + std::string(axis) + "'");
}

std::size_t RatePolytope::axis_index(std::string_view name) const {
  for (std::size_t i = 0; i < axes.size(); ++i)
    if (axes[i] == name) return i;
  throw std::out_of_range("RatePolytope: no axis '" + std::string(name) + "'");
}

const Halfspace* RatePolytope::find(std::string_view row_label) const {
  for (const auto& h : halfspaces)
    if (h.label == row_label) return &h;
  return nullptr;
}

std::vector<double> coordinates(const RatePolytope& p, const RatePoint& point) {
  std::vector<double> x;
  for (const auto& a : p.axes) x.push_back(point.get(a));
  return x;
}

double margin(const RatePolytope& p, std::span<const double> x) {
  double m = kInfinity;
  for (const auto& h : p.halfspaces) m = std::min(m, h.rhs - dot(h.coeffs, x));
  return m;
}

bool contains(const RatePolytope& p, std::span<const double> x, double slack) {
  return margin(p, x) >= -slack;
}

bool contains(const RatePolytope& p, const RatePoint& point, double slack) {
  const auto x = coordinates(p, point);
  return contains(p, x, slack);
}

std::vector<std::vector<double>> vertices(const RatePolytope& p) {
  const std::size_t d = p.dim();
  if (d == 0 || d > 3) throw std::invalid_argument("vertices: dimension must be 1..3");
  std::vector<const Halfspace*> rows;
  for (const auto& h : p.halfspaces) {
    if (row_is_zero(h)) {
      if (h.rhs < -kMembershipSlack) return {};
      continue;
    }
    if (std::isfinite(h.rhs)) rows.push_back(&h);
  }
  std::vector<std::vector<double>> out;
  const std::size_t n = rows.size();
  std::vector<std::size_t> pick(d);
  auto consider = [&]() {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (auto i : pick) {
      a.push_back(rows[i]->coeffs);
      b.push_back(rows[i]->rhs);
    }
    std::vector<double> x;
    if (!solve(a, b, x)) return;
    double scale = 1.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    if (!contains(p, x, kMembershipSlack * scale)) return;
    for (const auto& v : out) {
      double dist = 0.0;
      for (std::size_t k = 0; k < d; ++k) dist = std::max(dist, std::abs(v[k] - x[k]));
      if (dist <= 1e-12 * scale) return;
    }
    out.push_back(std::move(x));
  };
  if (n < d) return out;
  // Enumerate all d-subsets of the rows.
  for (std::size_t k = 0; k < d; ++k) pick[k] = k;
  while (true) {
    consider();
    std::size_t k = d;
    while (k > 0 && pick[k - 1] == n - d + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

bool is_empty(const RatePolytope& p) { return vertices(p).empty(); }

double support_value(const RatePolytope& p, std::span<const double> direction) {
  if (direction.size() != p.dim()) throw std::invalid_argument("support_value: direction dimension");
  for (std::size_t k = 0; k < p.dim(); ++k) {
    if (direction[k] <= 0.0) continue;
    const bool bounded = std::any_of(p.halfspaces.begin(), p.halfspaces.end(), [&](const Halfspace& h) {
      return std::isfinite(h.rhs) && h.coeffs[k] > 0.0 &&
             std::all_of(h.coeffs.begin(), h.coeffs.end(), [](double c) { return c >= 0.0; });
    });
    if (!bounded) throw std::domain_error("support_value: polytope unbounded along " + p.axes[k]);
  }
  double best = -kInfinity;
  for (const auto& v : vertices(p)) best = std::max(best, dot(direction, v));
  return best;
}

double radial_reach(const RatePolytope& p, std::span<const double> u) {
  double t = kInfinity;
  for (const auto& h : p.halfspaces) {
    const double a = dot(h.coeffs, u);
    if (a > 0.0)
      t = std::min(t, h.rhs / a);
    else if (h.rhs < -kMembershipSlack)
      return -kInfinity;
  }
  return t;
}

RatePolytope slice(const RatePolytope& p, std::string_view axis, double value) {
  const std::size_t k = p.axis_index(axis);
  RatePolytope out;
  out.label = p.label;
  for (std::size_t i = 0; i < p.dim(); ++i)
    if (i != k) out.axes.push_back(p.axes[i]);
  for (const auto& h : p.halfspaces) {
    Halfspace s;
    s.label = h.label;
    s.rhs = h.rhs - h.coeffs[k] * value;
    for (std::size_t i = 0; i < h.coeffs.size(); ++i)
      if (i != k) s.coeffs.push_back(h.coeffs[i]);
    if (row_is_zero(s) && s.rhs >= 0.0) continue;
    out.halfspaces.push_back(std::move(s));
  }
  return out;
}

RatePolytope planar_view(const RatePolytope& p) {
  if (p.dim() == 2) return p;
  if (p.dim() == 3) return slice(p, "R0", 0.0);
  throw std::invalid_argument("planar_view: unsupported dimension");
}

std::vector<std::array<double, 2>> quarter_fan(std::size_t n) {
  std::vector<std::array<double, 2>> out;
  if (n == 0) return out;
  if (n == 1) return {{std::cos(std::numbers::pi / 4), std::sin(std::numbers::pi / 4)}};
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (std::numbers::pi / 2) * static_cast<double>(k) / static_cast<double>(n - 1);
    // Snap the endpoints so that axis directions are exact.
    const double c = (k == n - 1) ? 0.0 : std::cos(t);
    const double s = (k == 0) ? 0.0 : std::sin(t);
    out.push_back({c, s});
  }
  return out;
}

}  // namespace bcleak
