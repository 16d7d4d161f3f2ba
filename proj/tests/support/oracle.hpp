#pragma once

// Independent reference computations for tests: plain loops over explicit tables,
// no calls into the library's information machinery.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

inline double h(const std::vector<double>& p) {
  double s = 0.0;
  for (double q : p)
    if (q > 0) s -= q * std::log2(q);
  return s;
}

inline double hb(double p) { return h({p, 1.0 - p}); }

// Blackwell channel with P_X = (a, b, 1 - a - b): x0 -> (0,1), x1 -> (1,0), x2 -> (0,0).
struct Bwc {
  double a, b;
  // P(y1, y2)
  double p(int y1, int y2) const {
    if (y1 == 0 && y2 == 1) return a;
    if (y1 == 1 && y2 == 0) return b;
    if (y1 == 0 && y2 == 0) return 1.0 - a - b;
    return 0.0;
  }
  double h_y1() const { return h({p(0, 0) + p(0, 1), p(1, 0) + p(1, 1)}); }
  double h_y2() const { return h({p(0, 0) + p(1, 0), p(0, 1) + p(1, 1)}); }
  double h_y1y2() const { return h({p(0, 0), p(0, 1), p(1, 0), p(1, 1)}); }
  double i_y1y2() const { return h_y1() + h_y2() - h_y1y2(); }
  double h_y1_given_y2() const { return h_y1y2() - h_y2(); }
  double h_y2_given_y1() const { return h_y1y2() - h_y1(); }
};

// Joint entropy of a subset of coordinates of a dense row-major table.
inline double h_subset(const std::vector<double>& t, const std::vector<std::size_t>& sizes,
                       const std::vector<bool>& keep) {
  std::size_t out_size = 1;
  for (std::size_t k = 0; k < sizes.size(); ++k)
    if (keep[k]) out_size *= sizes[k];
  std::vector<double> m(out_size, 0.0);
  std::vector<std::size_t> idx(sizes.size(), 0);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    std::size_t o = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k)
      if (keep[k]) o = o * sizes[k] + idx[k];
    m[o] += t[flat];
    for (std::size_t k = sizes.size(); k-- > 0;) {
      if (++idx[k] < sizes[k]) break;
      idx[k] = 0;
    }
  }
  return h(m);
}

}  // namespace oracle
