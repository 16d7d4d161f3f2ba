#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcleak/pmf.hpp"

namespace bcleak {

inline constexpr double kChannelTolerance = 1e-9;
inline constexpr double kDegradedTolerance = 1e-8;

// Two-receiver memoryless broadcast channel, kernel indexed [x][y1][y2].
struct Dmbc {
  std::size_t x_size = 0;
  std::size_t y1_size = 0;
  std::size_t y2_size = 0;
  std::vector<double> kernel;

  double prob(std::size_t x, std::size_t y1, std::size_t y2) const {
    return kernel[(x * y1_size + y1) * y2_size + y2];
  }
  double y1_given_x(std::size_t x, std::size_t y1) const;
  double y2_given_x(std::size_t x, std::size_t y2) const;
};

struct ChannelClass {
  bool deterministic = false;
  bool semi_deterministic = false;
  bool physically_degraded = false;
};

class ChannelError : public std::runtime_error {
 public:
  ChannelError(const std::string& what, std::optional<std::size_t> row = std::nullopt)
      : std::runtime_error(what), row_(row) {}
  std::optional<std::size_t> row() const { return row_; }

 private:
  std::optional<std::size_t> row_;
};

// Throws ChannelError naming the first row that is not a pmf.
void validate_channel(const Dmbc& c);
ChannelClass classify(const Dmbc& c);
Dmbc blackwell();

// For a semi-deterministic channel, y1 = f(x).
std::vector<std::size_t> y1_function(const Dmbc& c);
std::vector<std::size_t> y2_function(const Dmbc& c);

// Appends Y1 and Y2 axes to a distribution that contains the channel input axis.
JointPmf induce_joint(const JointPmf& input, const Dmbc& c, const std::string& x_axis = "X");

// Joint over (U0,U1,U2,X) for the inner bound.
class AuxChain {
 public:
  explicit AuxChain(JointPmf joint);
  const JointPmf& joint() const { return joint_; }

 private:
  JointPmf joint_;
};

// Joint over (W,U,V,X) with X depending on (W,U,V) only through (U,V).
class OuterChain {
 public:
  explicit OuterChain(JointPmf joint);
  const JointPmf& joint() const { return joint_; }

 private:
  JointPmf joint_;
};

// Max over (w,u,v,x) of |P(w,u,v,x) - P(w,u,v) P(x|u,v)| for a (W,U,V,X) joint.
double outer_markov_defect(const JointPmf& joint);

// P(w,u,v) P(x|u,v) built from the marginals of a (W,U,V,X) joint.
JointPmf project_outer_markov(const JointPmf& joint);

// Reorders the axes of a joint to the given names (must be a permutation).
JointPmf reorder_axes(const JointPmf& joint, const AxisNames& order);
void require_axes(const JointPmf& joint, const AxisNames& names, const std::string& what);

}  // namespace bcleak
