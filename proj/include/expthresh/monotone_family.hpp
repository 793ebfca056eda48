#pragma once

#include "expthresh/budgets.hpp"
#include "expthresh/real.hpp"
#include "expthresh/weight_function.hpp"

#include <vector>

namespace expthresh {

/// An increasing family given by its antichain of minimal elements.
class MonotoneFamily {
 public:
  MonotoneFamily() = default;
  /// Rejects an empty list, the empty set (the family would be 2^X) and
  /// lists that are not antichains.
  MonotoneFamily(GroundSet ground, std::vector<SubsetMask> minimal);
  /// Keeps only the inclusion-minimal sets of `generators`.
  static MonotoneFamily generated_by(GroundSet ground, std::vector<SubsetMask> generators);

  const GroundSet& ground() const { return ground_; }
  unsigned n() const { return ground_.n; }
  const std::vector<SubsetMask>& minimal() const { return minimal_; }

  bool contains(const SubsetMask& s) const;

 private:
  GroundSet ground_;
  std::vector<SubsetMask> minimal_;
};

/// Inclusion-minimal sets of an arbitrary list, sorted by size then lexicographically.
std::vector<SubsetMask> minimal_sets(std::vector<SubsetMask> sets);

/// counts[j] = number of members of F with exactly j elements (exhaustive).
std::vector<BigInt> member_counts_by_size(const MonotoneFamily& f, const Budgets& budgets = {});

/// P[X_p in F] exactly.
Rational containment_probability(const MonotoneFamily& f, const Rational& p, const Budgets& budgets = {});

/// Coefficients (in powers of p) of P[X_p in F].
std::vector<Rational> containment_polynomial(const MonotoneFamily& f, const Budgets& budgets = {});

/// The p with P[X_p in F] = 1/2.
Real threshold_pc(const MonotoneFamily& f, const Budgets& budgets = {});

}  // namespace expthresh
