#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bcleak {

// Normalization slack accepted before a pmf is rejected.
inline constexpr double kNormTolerance = 1e-9;
// Probabilities below this are exact zeros inside log terms.
inline constexpr double kLogFloor = 1e-15;

struct Axis {
  std::string name;
  std::size_t size = 0;
  bool operator==(const Axis&) const = default;
};

using AxisNames = std::vector<std::string>;

class Pmf {
 public:
  explicit Pmf(std::vector<double> probs);

  std::size_t alphabet_size() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

// Dense row-major tensor over named axes; the last axis varies fastest.
class JointPmf {
 public:
  JointPmf(std::vector<Axis> axes, std::vector<double> tensor);

  static JointPmf uniform(std::vector<Axis> axes);
  static JointPmf from_pmf(const Pmf& p, std::string name);

  const std::vector<Axis>& axes() const { return axes_; }
  std::span<const double> tensor() const { return tensor_; }
  std::size_t rank() const { return axes_.size(); }
  std::size_t size() const { return tensor_.size(); }

  bool has_axis(std::string_view name) const;
  std::size_t axis_index(std::string_view name) const;
  std::vector<std::size_t> strides() const;
  double at(std::span<const std::size_t> index) const;

  // Marginal over the named axes, in the order given.
  JointPmf marginal(const AxisNames& names) const;
  // Marginal over an axis bitmask, axes kept in their original order.
  std::vector<double> marginal_mask(std::uint64_t mask) const;
  std::uint64_t mask_of(const AxisNames& names) const;

 private:
  std::vector<Axis> axes_;
  std::vector<double> tensor_;
};

double binary_entropy(double p);
double entropy(std::span<const double> probs);
double entropy(const JointPmf& joint, const AxisNames& axes);
double conditional_entropy(const JointPmf& joint, const AxisNames& a, const AxisNames& given);
double mutual_information(const JointPmf& joint, const AxisNames& a, const AxisNames& b);
double conditional_mutual_information(const JointPmf& joint, const AxisNames& a, const AxisNames& b,
                                      const AxisNames& given);

// Memoizes marginal entropies by axis mask; for evaluating many symbols on one joint.
class InfoEvaluator {
 public:
  explicit InfoEvaluator(const JointPmf& joint) : joint_(&joint) {}

  const JointPmf& joint() const { return *joint_; }
  double entropy_mask(std::uint64_t mask);
  double entropy(const AxisNames& a, const AxisNames& given = {});
  double mutual_information(const AxisNames& a, const AxisNames& b, const AxisNames& given = {});

 private:
  const JointPmf* joint_;
  std::unordered_map<std::uint64_t, double> cache_;
};

}  // namespace bcleak
