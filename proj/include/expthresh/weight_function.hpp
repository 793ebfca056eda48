#pragma once

#include "expthresh/interval.hpp"
#include "expthresh/rational.hpp"
#include "expthresh/real.hpp"
#include "expthresh/subset_mask.hpp"

#include <optional>
#include <string>
#include <vector>

namespace expthresh {

/// The universe {0, ..., n-1}, optionally with display labels.
struct GroundSet {
  unsigned n = 0;
  std::vector<std::string> labels;

  GroundSet() = default;
  explicit GroundSet(unsigned n_, std::vector<std::string> labels_ = {});

  SubsetMask empty_set() const { return SubsetMask(n); }
  SubsetMask full_set() const { return SubsetMask::full(n); }
  SubsetMask subset(std::initializer_list<unsigned> xs) const { return SubsetMask::from_elements(n, xs); }
  SubsetMask subset(const std::vector<unsigned>& xs) const { return SubsetMask::from_elements(n, xs); }
};

struct WeightEntry {
  SubsetMask set;
  Rational weight;
};

/// g: 2^X -> [0, inf) with finite support, never weighting the empty set.
/// Entries are kept in lexicographic order of their sets.
class WeightFunction {
 public:
  WeightFunction() = default;
  /// Zero weights are dropped; duplicate sets, negative weights and the empty
  /// set are rejected.
  WeightFunction(GroundSet ground, std::vector<WeightEntry> entries);

  static WeightFunction indicator(GroundSet ground, const std::vector<SubsetMask>& sets);
  static WeightFunction constant(GroundSet ground, const std::vector<SubsetMask>& sets, const Rational& c);

  const GroundSet& ground() const { return ground_; }
  unsigned n() const { return ground_.n; }
  const std::vector<WeightEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::optional<unsigned> uniform_k() const { return uniform_k_; }
  std::vector<SubsetMask> support() const;

  Rational total() const { return total_; }
  Rational max_weight() const;
  /// The common value when g is constant on its support.
  std::optional<Rational> constant_value() const;
  Rational weight_of(const SubsetMask& t) const;
  /// sum of g(T) over T subset of S.
  Rational sum_within(const SubsetMask& s) const;
  /// sum of g(T) over T containing x.
  const std::vector<Rational>& degrees() const { return degrees_; }
  /// Number of support sets containing x.
  const std::vector<unsigned>& edge_degrees() const { return edge_degrees_; }
  /// c_j = sum of g(T) over |T| = j, so w(g,p) = sum_j c_j p^j.
  std::vector<Rational> cardinality_polynomial() const;
  /// Largest number of support sets through a common pair of elements.
  unsigned max_codegree() const;

  WeightFunction restricted_to_cardinality(unsigned k) const;
  WeightFunction scaled(const Rational& c) const;
  /// min{c * g(T), 1} on the support.
  WeightFunction scaled_clamped(const Rational& c) const;

  template <class F>
  void for_each_within(const SubsetMask& s, F&& f) const {
    s.for_each([&](unsigned x) {
      for (unsigned idx : by_lowest_[x])
        if (entries_[idx].set.is_subset_of(s)) f(entries_[idx]);
    });
  }

 private:
  GroundSet ground_;
  std::vector<WeightEntry> entries_;
  std::optional<unsigned> uniform_k_;
  Rational total_;
  std::vector<Rational> degrees_;
  std::vector<unsigned> edge_degrees_;
  std::vector<std::vector<unsigned>> by_lowest_;
};

/// Interval enclosing w(g,p) = sum_T g(T) p^|T|.
Interval weight_of_function(const WeightFunction& g, const Interval& p);

/// S in <g>: sum of g(T) over T subset of S is at least 1 (exact).
bool member_upset(const WeightFunction& g, const SubsetMask& s);

/// The unique p in [0,1] with w(g,p) = 1. Closed form (sum g)^(-1/k) when g is
/// k-uniform, otherwise the root of the weight polynomial. NoRoot if w(g,1) < 1.
Real unit_weight_p(const WeightFunction& g);

}  // namespace expthresh
