#pragma once

#include "expthresh/interval.hpp"
#include "expthresh/monotone_family.hpp"
#include "expthresh/random.hpp"
#include "expthresh/weight_function.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

namespace testing {

using namespace expthresh;

inline Rational Q(const char* s) { return parse_rational(s); }

inline SubsetMask set_of(unsigned n, std::initializer_list<unsigned> xs) { return SubsetMask::from_elements(n, xs); }

inline bool encloses(const Interval& x, double v, double tol = 1e-12) {
  return x.lower_double() <= v + tol && x.upper_double() >= v - tol && x.width_double() <= 1e-6;
}

/// Two tight enclosures of the same number: they overlap and are narrow.
inline bool same_value(const Interval& a, const Interval& b) {
  return certainly_lt(a, b) != Tri::yes && certainly_lt(b, a) != Tri::yes && a.width_double() < 1e-20 &&
         b.width_double() < 1e-20;
}

/// Random weight function on nonempty subsets of size in [kmin, kmax] with
/// weights on the grid {1/8, ..., 8/8}.
inline WeightFunction random_weights(Rng& rng, unsigned n, unsigned kmin, unsigned kmax, unsigned entries) {
  std::vector<WeightEntry> es;
  for (unsigned i = 0; i < entries * 4 && es.size() < entries; ++i) {
    unsigned k = kmin + static_cast<unsigned>(rng.below(kmax - kmin + 1));
    std::vector<unsigned> all(n);
    for (unsigned x = 0; x < n; ++x) all[x] = x;
    rng.shuffle(all);
    all.resize(k);
    SubsetMask s = SubsetMask::from_elements(n, all);
    bool dup = false;
    for (const auto& e : es) dup |= e.set == s;
    if (!dup) es.push_back({s, Rational(static_cast<long>(rng.below(8) + 1), 8)});
  }
  return WeightFunction(GroundSet(n), std::move(es));
}

inline SubsetMask random_subset(Rng& rng, unsigned n, double density = 0.5) {
  SubsetMask s(n);
  for (unsigned x = 0; x < n; ++x)
    if (rng.uniform01() < density) s.set(x);
  return s;
}

/// sum_{T subset S} g(T) by scanning every entry.
inline Rational naive_sum_within(const WeightFunction& g, const SubsetMask& s) {
  Rational acc = 0;
  for (const auto& e : g.entries())
    if (e.set.is_subset_of(s)) acc += e.weight;
  return acc;
}

/// All members of a predicate over 2^n as words.
template <class F>
std::vector<std::uint64_t> members(unsigned n, F&& f) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w)
    if (f(SubsetMask::from_word(n, w))) out.push_back(w);
  return out;
}

/// Minimal members by the quadratic double loop.
inline std::vector<std::uint64_t> minimal_by_double_loop(const std::vector<std::uint64_t>& ms) {
  std::vector<std::uint64_t> out;
  for (auto a : ms) {
    bool minimal = true;
    for (auto b : ms)
      if (b != a && (b & a) == b) minimal = false;
    if (minimal) out.push_back(a);
  }
  return out;
}

/// Random nontrivial monotone family: `count` random sets of size in [1, kmax],
/// reduced to their minimal elements.
inline MonotoneFamily random_family(Rng& rng, unsigned n, unsigned count, unsigned kmax) {
  std::vector<SubsetMask> gens;
  for (unsigned i = 0; i < count; ++i) {
    std::vector<unsigned> all(n);
    for (unsigned x = 0; x < n; ++x) all[x] = x;
    rng.shuffle(all);
    all.resize(1 + rng.below(kmax));
    gens.push_back(SubsetMask::from_elements(n, all));
  }
  return MonotoneFamily::generated_by(GroundSet(n), gens);
}

/// Minimum integral cover weight by trying every subset of the candidate sets.
/// Costs are scaled to integers: p = a/b, cost(T) = a^|T| b^(n-|T|).
inline Rational exhaustive_min_cover(const MonotoneFamily& f, const std::vector<SubsetMask>& candidates, const Rational& p) {
  REQUIRE(candidates.size() <= 24);
  const unsigned n = f.n();
  const long a = static_cast<long>(boost::multiprecision::numerator(p));
  const long b = static_cast<long>(boost::multiprecision::denominator(p));
  std::vector<std::uint64_t> cover_bits(candidates.size(), 0);
  std::vector<long long> cost(candidates.size(), 1);
  const auto& cons = f.minimal();
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    for (std::size_t i = 0; i < cons.size(); ++i)
      if (candidates[j].is_subset_of(cons[i])) cover_bits[j] |= std::uint64_t{1} << i;
    unsigned t = candidates[j].count();
    for (unsigned r = 0; r < t; ++r) cost[j] *= a;
    for (unsigned r = t; r < n; ++r) cost[j] *= b;
  }
  const std::uint64_t all = (std::uint64_t{1} << cons.size()) - 1;
  long long best = -1;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << candidates.size()); ++pick) {
    std::uint64_t got = 0;
    long long c = 0;
    for (std::size_t j = 0; j < candidates.size(); ++j)
      if ((pick >> j) & 1) {
        got |= cover_bits[j];
        c += cost[j];
      }
    if (got == all && (best < 0 || c < best)) best = c;
  }
  REQUIRE(best >= 0);
  long long scale = 1;
  for (unsigned r = 0; r < n; ++r) scale *= b;
  return Rational(best, scale);
}

/// Every nonempty subset of some minimal element.
inline std::vector<SubsetMask> useful_sets(const MonotoneFamily& f) {
  std::vector<SubsetMask> out;
  for (std::uint64_t w = 1; w < (std::uint64_t{1} << f.n()); ++w) {
    SubsetMask t = SubsetMask::from_word(f.n(), w);
    for (const auto& m : f.minimal())
      if (t.is_subset_of(m)) {
        out.push_back(t);
        break;
      }
  }
  return out;
}

}  // namespace testing
