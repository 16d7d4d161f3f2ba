#include "bcleak/random.hpp"

#include <cmath>

namespace bcleak {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t k) {
  return splitmix64(splitmix64(seed) ^ splitmix64(k + 0x632be59bd9b4e019ULL));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

std::vector<double> Rng::flat_dirichlet(std::size_t n) {
  std::vector<double> v(n);
  double s = 0.0;
  for (double& x : v) {
    x = -std::log(1.0 - uniform());
    s += x;
  }
  for (double& x : v) x /= s;
  return v;
}

JointPmf random_joint(const std::vector<Axis>& axes, Rng& rng) {
  std::size_t n = 1;
  for (const Axis& a : axes) n *= a.size;
  return JointPmf(axes, rng.flat_dirichlet(n));
}

Dmbc random_channel(std::size_t x, std::size_t y1, std::size_t y2, Rng& rng) {
  Dmbc c{x, y1, y2, {}};
  for (std::size_t i = 0; i < x; ++i) {
    auto row = rng.flat_dirichlet(y1 * y2);
    c.kernel.insert(c.kernel.end(), row.begin(), row.end());
  }
  return c;
}

Dmbc random_semi_deterministic_channel(std::size_t x, std::size_t y1, std::size_t y2, Rng& rng) {
  Dmbc c{x, y1, y2, std::vector<double>(x * y1 * y2, 0.0)};
  for (std::size_t i = 0; i < x; ++i) {
    const std::size_t f = i < y1 ? i : rng.index(y1);
    auto row = rng.flat_dirichlet(y2);
    for (std::size_t k = 0; k < y2; ++k) c.kernel[(i * y1 + f) * y2 + k] = row[k];
  }
  return c;
}

Dmbc random_deterministic_channel(std::size_t x, std::size_t y1, std::size_t y2, Rng& rng) {
  Dmbc c{x, y1, y2, std::vector<double>(x * y1 * y2, 0.0)};
  for (std::size_t i = 0; i < x; ++i) {
    const std::size_t f = i < y1 ? i : rng.index(y1);
    const std::size_t g = rng.index(y2);
    c.kernel[(i * y1 + f) * y2 + g] = 1.0;
  }
  return c;
}

JointPmf extend_markov(const JointPmf& base, const std::string& parent, const Axis& tail, Rng& rng) {
  const std::size_t pi = base.axis_index(parent);
  const std::size_t np = base.axes()[pi].size;
  std::vector<std::vector<double>> kernel;
  for (std::size_t i = 0; i < np; ++i) kernel.push_back(rng.flat_dirichlet(tail.size));
  const std::size_t ps = base.strides()[pi];
  auto t = base.tensor();
  std::vector<double> out(t.size() * tail.size);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::size_t p = (i / ps) % np;
    for (std::size_t k = 0; k < tail.size; ++k) out[i * tail.size + k] = t[i] * kernel[p][k];
  }
  auto axes = base.axes();
  axes.push_back(tail);
  return JointPmf(std::move(axes), std::move(out));
}

}  // namespace bcleak
