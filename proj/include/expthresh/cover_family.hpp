#pragma once

#include "expthresh/budgets.hpp"
#include "expthresh/interval.hpp"
#include "expthresh/star_system.hpp"
#include "expthresh/subset_mask.hpp"

#include <memory>
#include <string>
#include <vector>

namespace expthresh {

struct CoverWeight {
  Interval value;
  /// The lower end is 0 and only the upper end is meaningful.
  bool upper_only = false;
};

/// A family G of nonempty subsets, explicit or given by structure. Membership
/// means S in <G> (some member of G lies inside S). Copies share state.
class CoverFamily {
 public:
  enum class Kind { explicit_sets, singleton_levels, volume, stars, union_of, copy_projection };

  CoverFamily();

  static CoverFamily explicit_sets(unsigned n, std::vector<SubsetMask> sets);
  /// Union over j >= 1 of the j-subsets of the first min(j*a, n) elements of `order`.
  static CoverFamily singleton_levels(unsigned n, std::vector<unsigned> order, unsigned a);
  /// All t-subsets of V.
  static CoverFamily volume(SubsetMask v, unsigned t);
  static CoverFamily stars(std::shared_ptr<const StarSystem> system);
  static CoverFamily union_of(unsigned n, std::vector<CoverFamily> parts);
  /// The members of `inner` lying in copy `copy` (elements [copy*size, (copy+1)*size)),
  /// shifted down to a ground set of `size` elements.
  static CoverFamily copy_projection(CoverFamily inner, unsigned copy, unsigned size);

  Kind kind() const;
  unsigned n() const;

  // variant data
  const std::vector<SubsetMask>& sets() const;
  const std::vector<unsigned>& order() const;
  unsigned level_size() const;  // a
  const SubsetMask& volume_set() const;
  unsigned volume_t() const;
  const StarSystem& star_system() const;
  std::shared_ptr<const StarSystem> star_system_ptr() const;
  const std::vector<CoverFamily>& parts() const;
  const CoverFamily& inner() const;
  unsigned copy_index() const;

  /// S in <G>. Only star families can answer unknown (witness search budget).
  Tri member(const SubsetMask& s, const Budgets& budgets = {}) const;

  /// w(G,p). Exact for every variant except star systems and unions whose
  /// members cannot be deduplicated within budget, which give upper bounds.
  CoverWeight weight(const Interval& p, const Budgets& budgets = {}) const;
  /// Weight of the members lying inside [offset, offset+size).
  CoverWeight restricted_weight(const Interval& p, unsigned offset, unsigned size, const Budgets& budgets = {}) const;

  /// Upper bound on the number of members (exact for non-star, non-union variants).
  BigInt size_bound() const;
  BigInt size_bound(unsigned offset, unsigned size) const;

  /// Distinct members sorted by size then lexicographically.
  /// MaterializationTooLarge above budgets.materialize_members.
  std::vector<SubsetMask> materialize(const Budgets& budgets = {}) const;
  std::vector<SubsetMask> materialize(unsigned offset, unsigned size, const Budgets& budgets = {}) const;

  std::string describe() const;

  struct Impl;

 private:
  explicit CoverFamily(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace expthresh
