#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bcleak/channel.hpp"
#include "bcleak/pmf.hpp"

namespace bcleak {

std::uint64_t splitmix64(std::uint64_t x);
// Independent stream for item k of a run seeded with `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t k);

// Portable draws on top of mt19937_64 (no std distribution objects, whose output is
// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n);  // [0, n)
  std::vector<double> flat_dirichlet(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

JointPmf random_joint(const std::vector<Axis>& axes, Rng& rng);
// Row-stochastic kernel with flat-Dirichlet rows.
Dmbc random_channel(std::size_t x, std::size_t y1, std::size_t y2, Rng& rng);
// Y1 a random function of X (onto when possible), Y2 noisy.
Dmbc random_semi_deterministic_channel(std::size_t x, std::size_t y1, std::size_t y2, Rng& rng);
Dmbc random_deterministic_channel(std::size_t x, std::size_t y1, std::size_t y2, Rng& rng);

// Appends axis `tail`, drawn through a random kernel from axis `parent` alone.
JointPmf extend_markov(const JointPmf& base, const std::string& parent, const Axis& tail, Rng& rng);

}  // namespace bcleak
