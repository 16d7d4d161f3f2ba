#include "bcleak/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace bcleak {
namespace {

std::vector<double> normalized(std::vector<double> p, const char* what) {
  if (p.empty()) throw std::invalid_argument(std::string(what) + ": empty probability vector");
  double total = 0.0;
  for (double& v : p) {
    if (!std::isfinite(v) || v < -kLogFloor)
      throw std::invalid_argument(std::string(what) + ": negative or non-finite entry");
    if (v < 0.0) v = 0.0;
    total += v;
  }
  if (std::abs(total - 1.0) > kNormTolerance)
    throw std::invalid_argument(std::string(what) + ": entries sum to " + std::to_string(total));
  for (double& v : p) v /= total;
  return p;
}

double plogp_sum(std::span<const double> probs) {
  double h = 0.0;
  for (double v : probs)
    if (v > kLogFloor) h -= v * std::log2(v);
  return h;
}

void check_disjoint(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  if ((a & b) || (a & c) || (b & c))
    throw std::invalid_argument("information measure with overlapping axis groups");
}

}  // namespace

Pmf::Pmf(std::vector<double> probs) : probs_(normalized(std::move(probs), "Pmf")) {}

JointPmf::JointPmf(std::vector<Axis> axes, std::vector<double> tensor) : axes_(std::move(axes)) {
  if (axes_.size() > 63) throw std::invalid_argument("JointPmf: too many axes");
  std::set<std::string> names;
  std::size_t n = 1;
  for (const Axis& a : axes_) {
    if (a.size == 0) throw std::invalid_argument("JointPmf: axis '" + a.name + "' has size 0");
    if (!names.insert(a.name).second)
      throw std::invalid_argument("JointPmf: duplicate axis '" + a.name + "'");
    n *= a.size;
  }
  if (tensor.size() != n)
    throw std::invalid_argument("JointPmf: tensor length " + std::to_string(tensor.size()) +
                                " does not match axis sizes (" + std::to_string(n) + ")");
  tensor_ = normalized(std::move(tensor), "JointPmf");
}

JointPmf JointPmf::uniform(std::vector<Axis> axes) {
  std::size_t n = 1;
  for (const Axis& a : axes) n *= a.size;
  return JointPmf(std::move(axes), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

JointPmf JointPmf::from_pmf(const Pmf& p, std::string name) {
  return JointPmf({Axis{std::move(name), p.alphabet_size()}},
                  std::vector<double>(p.probs().begin(), p.probs().end()));
}

bool JointPmf::has_axis(std::string_view name) const {
  return std::any_of(axes_.begin(), axes_.end(), [&](const Axis& a) { return a.name == name; });
}

std::size_t JointPmf::axis_index(std::string_view name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i].name == name) return i;
  throw std::out_of_range("JointPmf: no axis named '" + std::string(name) + "'");
}

std::vector<std::size_t> JointPmf::strides() const {
  std::vector<std::size_t> s(axes_.size(), 1);
  for (std::size_t i = axes_.size(); i-- > 1;) s[i - 1] = s[i] * axes_[i].size;
  return s;
}

double JointPmf::at(std::span<const std::size_t> index) const {
  if (index.size() != axes_.size()) throw std::out_of_range("JointPmf::at: wrong index rank");
  auto s = strides();
  std::size_t flat = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= axes_[i].size) throw std::out_of_range("JointPmf::at: index out of range");
    flat += index[i] * s[i];
  }
  return tensor_[flat];
}

std::uint64_t JointPmf::mask_of(const AxisNames& names) const {
  std::uint64_t m = 0;
  for (const auto& n : names) m |= std::uint64_t{1} << axis_index(n);
  return m;
}

std::vector<double> JointPmf::marginal_mask(std::uint64_t mask) const {
  const std::size_t r = axes_.size();
  std::vector<std::size_t> mstride(r, 0);
  std::size_t msize = 1;
  for (std::size_t i = r; i-- > 0;) {
    if (mask & (std::uint64_t{1} << i)) {
      mstride[i] = msize;
      msize *= axes_[i].size;
    }
  }
  // Row-major order over the kept axes requires the last kept axis to vary fastest,
  // which the reverse accumulation above provides.
  std::vector<double> out(msize, 0.0);
  std::vector<std::size_t> idx(r, 0);
  std::size_t moff = 0;
  for (double v : tensor_) {
    out[moff] += v;
    for (std::size_t i = r; i-- > 0;) {
      moff += mstride[i];
      if (++idx[i] < axes_[i].size) break;
      moff -= mstride[i] * axes_[i].size;
      idx[i] = 0;
    }
  }
  return out;
}

JointPmf JointPmf::marginal(const AxisNames& names) const {
  std::vector<std::size_t> pos;
  for (const auto& n : names) pos.push_back(axis_index(n));
  std::vector<Axis> out_axes;
  std::vector<std::size_t> ostride(names.size(), 1);
  for (std::size_t k = 0; k < pos.size(); ++k) out_axes.push_back(axes_[pos[k]]);
  for (std::size_t k = pos.size(); k-- > 1;) ostride[k - 1] = ostride[k] * out_axes[k].size;
  std::size_t n = 1;
  for (const Axis& a : out_axes) n *= a.size;
  std::vector<double> out(n, 0.0);
  const std::size_t r = axes_.size();
  std::vector<std::size_t> idx(r, 0);
  for (double v : tensor_) {
    std::size_t o = 0;
    for (std::size_t k = 0; k < pos.size(); ++k) o += idx[pos[k]] * ostride[k];
    out[o] += v;
    for (std::size_t i = r; i-- > 0;) {
      if (++idx[i] < axes_[i].size) break;
      idx[i] = 0;
    }
  }
  return JointPmf(std::move(out_axes), std::move(out));
}

double binary_entropy(double p) {
  if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) throw std::domain_error("binary_entropy: p outside [0,1]");
  p = std::clamp(p, 0.0, 1.0);
  double h = 0.0;
  if (p > kLogFloor) h -= p * std::log2(p);
  if (1.0 - p > kLogFloor) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double entropy(std::span<const double> probs) { return plogp_sum(probs); }

double entropy(const JointPmf& joint, const AxisNames& axes) {
  InfoEvaluator ev(joint);
  return ev.entropy(axes);
}

double conditional_entropy(const JointPmf& joint, const AxisNames& a, const AxisNames& given) {
  InfoEvaluator ev(joint);
  return ev.entropy(a, given);
}

double mutual_information(const JointPmf& joint, const AxisNames& a, const AxisNames& b) {
  InfoEvaluator ev(joint);
  return ev.mutual_information(a, b);
}

double conditional_mutual_information(const JointPmf& joint, const AxisNames& a, const AxisNames& b,
                                      const AxisNames& given) {
  InfoEvaluator ev(joint);
  return ev.mutual_information(a, b, given);
}

double InfoEvaluator::entropy_mask(std::uint64_t mask) {
  if (mask == 0) return 0.0;
  if (auto it = cache_.find(mask); it != cache_.end()) return it->second;
  double h = plogp_sum(joint_->marginal_mask(mask));
  cache_.emplace(mask, h);
  return h;
}

double InfoEvaluator::entropy(const AxisNames& a, const AxisNames& given) {
  if (a.empty()) throw std::invalid_argument("entropy: empty axis group");
  const std::uint64_t ma = joint_->mask_of(a), mc = joint_->mask_of(given);
  if (ma & mc) throw std::invalid_argument("entropy: conditioning overlaps the measured axes");
  return std::max(0.0, entropy_mask(ma | mc) - entropy_mask(mc));
}

double InfoEvaluator::mutual_information(const AxisNames& a, const AxisNames& b,
                                         const AxisNames& given) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mutual_information: empty axis group");
  const std::uint64_t ma = joint_->mask_of(a), mb = joint_->mask_of(b), mc = joint_->mask_of(given);
  check_disjoint(ma, mb, mc);
  const double v = entropy_mask(ma | mc) + entropy_mask(mb | mc) - entropy_mask(ma | mb | mc) -
                   entropy_mask(mc);
  return std::max(0.0, v);
}

}  // namespace bcleak
