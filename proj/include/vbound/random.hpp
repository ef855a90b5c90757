#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace vbound {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent random stream for one trial, derived only from (seed, trial index), so any subset
/// of trials can be replayed or run in any order.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t index)
      : engine_(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL))) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// n independent standard normal variates.
inline std::vector<double> sample_gaussian(std::size_t n, TrialStream& rng) {
  std::vector<double> y(n);
  for (auto& v : y) v = rng.normal();
  return y;
}

}  // namespace vbound
