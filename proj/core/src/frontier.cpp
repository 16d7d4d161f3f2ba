#include "bcleak/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <map>

namespace bcleak {
namespace {

constexpr double kTie = 1e-12;

double cross(const std::array<double, 2>& o, const std::array<double, 2>& a,
             const std::array<double, 2>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

void StaircaseBuilder::add(double r1, double r2, std::size_t provenance) {
  if (!std::isfinite(r1) || !std::isfinite(r2)) return;
  pts_.push_back({std::max(r1, 0.0), std::max(r2, 0.0), provenance});
}

std::vector<FrontierPoint> StaircaseBuilder::staircase() const {
  std::vector<FrontierPoint> p = pts_;
  // Descending r1; near-equal r1 keeps the larger r2; provenance breaks exact ties.
  std::sort(p.begin(), p.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
    if (a.r1 != b.r1) return a.r1 > b.r1;
    if (a.r2 != b.r2) return a.r2 > b.r2;
    return a.provenance < b.provenance;
  });
  std::vector<FrontierPoint> out;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& q : p) {
    if (q.r2 <= best + kTie) continue;
    if (!out.empty() && out.back().r1 - q.r1 <= kTie) {
      out.back() = q;
    } else {
      out.push_back(q);
    }
    best = q.r2;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

void StaircaseBuilder::add_all(const std::vector<FrontierPoint>& pts) {
  pts_.insert(pts_.end(), pts.begin(), pts.end());
}

FrontierCurve StaircaseBuilder::build(const std::function<JointPmf(std::size_t)>& source_of,
                                      std::string label) const {
  FrontierCurve f;
  f.label = std::move(label);
  std::map<std::size_t, std::size_t> remap;
  for (auto q : staircase()) {
    auto [it, fresh] = remap.emplace(q.provenance, f.sources.size());
    if (fresh) f.sources.push_back(source_of(q.provenance));
    q.provenance = it->second;
    f.points.push_back(q);
  }
  return f;
}

double frontier_height(const FrontierCurve& f, double x) {
  const auto& p = f.points;
  auto it = std::lower_bound(p.begin(), p.end(), x,
                             [](const FrontierPoint& a, double v) { return a.r1 < v; });
  if (it == p.end()) return -std::numeric_limits<double>::infinity();
  double h = it->r2;
  if (it != p.begin()) {
    const auto& a = *(it - 1);
    const auto& b = *it;
    if (a.provenance == b.provenance && b.r1 > a.r1) {
      const double t = (x - a.r1) / (b.r1 - a.r1);
      h = std::max(h, a.r2 + std::clamp(t, 0.0, 1.0) * (b.r2 - a.r2));
    }
  }
  return h;
}

bool covered(const FrontierCurve& f, double r1, double r2, double tol) {
  return frontier_height(f, r1 - tol) >= r2 - tol;
}

double frontier_excess(const FrontierCurve& a, const FrontierCurve& b) {
  double worst = 0.0;
  for (const auto& q : a.points) {
    if (covered(b, q.r1, q.r2, worst)) continue;
    double lo = worst, hi = std::max(q.r1, q.r2) + 1.0;
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (covered(b, q.r1, q.r2, mid) ? hi : lo) = mid;
    }
    worst = hi;
  }
  return worst;
}

double frontier_distance(const FrontierCurve& a, const FrontierCurve& b) {
  return std::max(frontier_excess(a, b), frontier_excess(b, a));
}

bool frontier_dominates(const FrontierCurve& a, const FrontierCurve& b, double margin, double slack) {
  for (const auto& q : b.points)
    if (!covered(a, q.r1, q.r2, slack)) return false;
  for (const auto& q : a.points)
    if (!covered(b, q.r1, q.r2, margin)) return true;
  return false;
}

std::vector<std::array<double, 2>> upper_concave_envelope(const FrontierCurve& f) {
  std::vector<std::array<double, 2>> pts;
  if (f.points.empty()) return pts;
  pts.push_back({0.0, f.points.front().r2});
  for (const auto& q : f.points) pts.push_back({q.r1, q.r2});
  pts.push_back({f.points.back().r1, 0.0});
  std::vector<std::array<double, 2>> hull;
  for (const auto& q : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), q) >= 0) hull.pop_back();
    hull.push_back(q);
  }
  return hull;
}

std::string fingerprint(const JointPmf& p) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](const void* data, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& a : p.axes()) {
    mix(a.name.data(), a.name.size());
    mix(&a.size, sizeof a.size);
  }
  for (double v : p.tensor()) mix(&v, sizeof v);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bcleak
