#include "bcleak/channel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bcleak {
namespace {

bool is_zero_one(double v) { return std::abs(v) <= 1e-12 || std::abs(v - 1.0) <= 1e-12; }

// Fits P(y1,y2|x) = P(y1|x) T(y2|y1) column by column in the least-squares sense.
bool degraded_factorization(const Dmbc& c) {
  for (std::size_t y1 = 0; y1 < c.y1_size; ++y1) {
    double denom = 0.0;
    for (std::size_t x = 0; x < c.x_size; ++x) denom += std::pow(c.y1_given_x(x, y1), 2);
    if (denom <= 1e-24) continue;
    double tsum = 0.0;
    std::vector<double> t(c.y2_size, 0.0);
    for (std::size_t y2 = 0; y2 < c.y2_size; ++y2) {
      for (std::size_t x = 0; x < c.x_size; ++x) t[y2] += c.y1_given_x(x, y1) * c.prob(x, y1, y2);
      t[y2] /= denom;
      if (t[y2] < -kDegradedTolerance) return false;
      tsum += t[y2];
    }
    if (std::abs(tsum - 1.0) > kDegradedTolerance) return false;
    for (std::size_t x = 0; x < c.x_size; ++x)
      for (std::size_t y2 = 0; y2 < c.y2_size; ++y2)
        if (std::abs(c.prob(x, y1, y2) - c.y1_given_x(x, y1) * t[y2]) > kDegradedTolerance)
          return false;
  }
  return true;
}

std::vector<std::size_t> argmax_rows(const Dmbc& c, bool first) {
  std::vector<std::size_t> f(c.x_size, 0);
  const std::size_t n = first ? c.y1_size : c.y2_size;
  for (std::size_t x = 0; x < c.x_size; ++x) {
    bool found = false;
    for (std::size_t y = 0; y < n; ++y) {
      const double p = first ? c.y1_given_x(x, y) : c.y2_given_x(x, y);
      if (std::abs(p - 1.0) <= 1e-12) {
        f[x] = y;
        found = true;
      } else if (std::abs(p) > 1e-12) {
        throw ChannelError("output is not a deterministic function of the input", x);
      }
    }
    if (!found) throw ChannelError("output is not a deterministic function of the input", x);
  }
  return f;
}

}  // namespace

double Dmbc::y1_given_x(std::size_t x, std::size_t y1) const {
  double s = 0.0;
  for (std::size_t y2 = 0; y2 < y2_size; ++y2) s += prob(x, y1, y2);
  return s;
}

double Dmbc::y2_given_x(std::size_t x, std::size_t y2) const {
  double s = 0.0;
  for (std::size_t y1 = 0; y1 < y1_size; ++y1) s += prob(x, y1, y2);
  return s;
}

void validate_channel(const Dmbc& c) {
  if (c.x_size == 0 || c.y1_size == 0 || c.y2_size == 0)
    throw ChannelError("channel alphabets must be nonempty");
  if (c.kernel.size() != c.x_size * c.y1_size * c.y2_size)
    throw ChannelError("kernel has " + std::to_string(c.kernel.size()) + " entries, expected " +
                       std::to_string(c.x_size * c.y1_size * c.y2_size));
  for (std::size_t x = 0; x < c.x_size; ++x) {
    double s = 0.0;
    for (std::size_t k = 0; k < c.y1_size * c.y2_size; ++k) {
      const double v = c.kernel[x * c.y1_size * c.y2_size + k];
      if (!std::isfinite(v) || v < 0.0)
        throw ChannelError("kernel row " + std::to_string(x) + " has a negative entry", x);
      s += v;
    }
    if (std::abs(s - 1.0) > kChannelTolerance)
      throw ChannelError("kernel row " + std::to_string(x) + " sums to " + std::to_string(s), x);
  }
}

ChannelClass classify(const Dmbc& c) {
  validate_channel(c);
  ChannelClass k;
  k.deterministic = std::all_of(c.kernel.begin(), c.kernel.end(), is_zero_one);
  k.semi_deterministic = true;
  for (std::size_t x = 0; x < c.x_size && k.semi_deterministic; ++x)
    for (std::size_t y1 = 0; y1 < c.y1_size; ++y1)
      if (!is_zero_one(c.y1_given_x(x, y1))) {
        k.semi_deterministic = false;
        break;
      }
  k.physically_degraded = degraded_factorization(c);
  return k;
}

Dmbc blackwell() {
  Dmbc c{3, 2, 2, std::vector<double>(12, 0.0)};
  auto set = [&](std::size_t x, std::size_t y1, std::size_t y2) { c.kernel[(x * 2 + y1) * 2 + y2] = 1.0; };
  set(0, 0, 1);
  set(1, 1, 0);
  set(2, 0, 0);
  return c;
}

std::vector<std::size_t> y1_function(const Dmbc& c) { return argmax_rows(c, true); }
std::vector<std::size_t> y2_function(const Dmbc& c) { return argmax_rows(c, false); }

JointPmf induce_joint(const JointPmf& input, const Dmbc& c, const std::string& x_axis) {
  const std::size_t xi = input.axis_index(x_axis);
  if (input.axes()[xi].size != c.x_size)
    throw std::invalid_argument("induce_joint: input alphabet size does not match the channel");
  if (input.has_axis("Y1") || input.has_axis("Y2"))
    throw std::invalid_argument("induce_joint: input already has output axes");
  const std::size_t xs = input.strides()[xi];
  const std::size_t ny = c.y1_size * c.y2_size;
  auto t = input.tensor();
  std::vector<double> out(t.size() * ny);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::size_t x = (i / xs) % c.x_size;
    for (std::size_t k = 0; k < ny; ++k) out[i * ny + k] = t[i] * c.kernel[x * ny + k];
  }
  auto axes = input.axes();
  axes.push_back({"Y1", c.y1_size});
  axes.push_back({"Y2", c.y2_size});
  return JointPmf(std::move(axes), std::move(out));
}

void require_axes(const JointPmf& joint, const AxisNames& names, const std::string& what) {
  std::set<std::string> want(names.begin(), names.end()), have;
  for (const Axis& a : joint.axes()) have.insert(a.name);
  if (want != have) {
    std::string s;
    for (const auto& n : names) s += (s.empty() ? "" : ",") + n;
    throw std::invalid_argument(what + ": expected axes {" + s + "}");
  }
}

JointPmf reorder_axes(const JointPmf& joint, const AxisNames& order) {
  require_axes(joint, order, "reorder_axes");
  return joint.marginal(order);
}

AuxChain::AuxChain(JointPmf joint) : joint_(reorder_axes(joint, {"U0", "U1", "U2", "X"})) {}

double outer_markov_defect(const JointPmf& joint) {
  const JointPmf j = reorder_axes(joint, {"W", "U", "V", "X"});
  const auto& ax = j.axes();
  const std::size_t nw = ax[0].size, nu = ax[1].size, nv = ax[2].size, nx = ax[3].size;
  const JointPmf uvx = j.marginal({"U", "V", "X"});
  const JointPmf uv = j.marginal({"U", "V"});
  auto t = j.tensor();
  double defect = 0.0;
  for (std::size_t w = 0; w < nw; ++w)
    for (std::size_t u = 0; u < nu; ++u)
      for (std::size_t v = 0; v < nv; ++v) {
        double pwuv = 0.0;
        for (std::size_t x = 0; x < nx; ++x) pwuv += t[((w * nu + u) * nv + v) * nx + x];
        const double puv = uv.tensor()[u * nv + v];
        for (std::size_t x = 0; x < nx; ++x) {
          const double cond = puv > 0.0 ? uvx.tensor()[(u * nv + v) * nx + x] / puv : 0.0;
          defect = std::max(defect, std::abs(t[((w * nu + u) * nv + v) * nx + x] - pwuv * cond));
        }
      }
  return defect;
}

JointPmf project_outer_markov(const JointPmf& joint) {
  const JointPmf j = reorder_axes(joint, {"W", "U", "V", "X"});
  const auto& ax = j.axes();
  const std::size_t nw = ax[0].size, nu = ax[1].size, nv = ax[2].size, nx = ax[3].size;
  const JointPmf wuv = j.marginal({"W", "U", "V"});
  const JointPmf uvx = j.marginal({"U", "V", "X"});
  const JointPmf uv = j.marginal({"U", "V"});
  std::vector<double> out(j.size(), 0.0);
  for (std::size_t w = 0; w < nw; ++w)
    for (std::size_t u = 0; u < nu; ++u)
      for (std::size_t v = 0; v < nv; ++v) {
        const double puv = uv.tensor()[u * nv + v];
        for (std::size_t x = 0; x < nx; ++x)
          out[((w * nu + u) * nv + v) * nx + x] =
              puv > 0.0 ? wuv.tensor()[(w * nu + u) * nv + v] * uvx.tensor()[(u * nv + v) * nx + x] / puv
                        : 0.0;
      }
  return JointPmf(ax, std::move(out));
}

OuterChain::OuterChain(JointPmf joint) : joint_(reorder_axes(joint, {"W", "U", "V", "X"})) {
  if (outer_markov_defect(joint_) > kNormTolerance)
    throw std::invalid_argument("OuterChain: X depends on W given (U,V)");
}

}  // namespace bcleak
