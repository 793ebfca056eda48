#include "expthresh/random.hpp"

namespace expthresh {

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return x % bound;
}

bool Rng::bernoulli(const Rational& q) {
  if (q <= 0) return false;
  if (q >= 1) return true;
  // compare a uniform 64-bit draw u against q * 2^64: true iff u < q * 2^64
  BigInt u = next();
  return Rational(u) < q * Rational(BigInt(1) << 64);
}

}  // namespace expthresh
