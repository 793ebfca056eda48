#pragma once

#include "expthresh/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace expthresh {

/// Seeded generator with draws that do not depend on the standard library's
/// distribution implementations, so a seed reproduces the same stream anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// True with probability q, clamped to [0,1]; exact for dyadic q.
  bool bernoulli(const Rational& q);
  /// Uniform real in [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace expthresh
