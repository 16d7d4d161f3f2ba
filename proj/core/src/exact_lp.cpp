#include "exact_lp.hpp"

#include <stdexcept>

namespace bcleak::detail {

bool lp_feasible(const RationalMatrix& a_eq, const std::vector<Rational>& b_eq,
                 const RationalMatrix& a_le, const std::vector<Rational>& b_le, std::size_t n) {
  const std::size_t me = a_eq.size(), ml = a_le.size(), m = me + ml;
  if (b_eq.size() != me || b_le.size() != ml) throw std::invalid_argument("lp_feasible: shape mismatch");
  if (m == 0) return true;
  // Columns: n originals, ml slacks, m artificials, then rhs.
  const std::size_t cols = n + ml + m;
  RationalMatrix t(m + 1, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = t[i];
    const bool eq = i < me;
    const auto& src = eq ? a_eq[i] : a_le[i - me];
    for (std::size_t j = 0; j < n; ++j) row[j] = src[j];
    if (!eq) row[n + (i - me)] = 1;
    row[cols] = eq ? b_eq[i] : b_le[i - me];
    if (row[cols] < 0)
      for (auto& v : row) v = -v;
    row[n + ml + i] = 1;
    basis[i] = n + ml + i;
  }
  // Objective row holds reduced costs of minimizing the artificial sum.
  auto& obj = t[m];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < n + ml || j == cols) obj[j] -= t[i][j];

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // cannot happen for a bounded phase-one objective
    const Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return obj[cols] == 0;
}

}  // namespace bcleak::detail
