#pragma once

#include "expthresh/budgets.hpp"
#include "expthresh/interval.hpp"
#include "expthresh/real.hpp"
#include "expthresh/subset_mask.hpp"

#include <optional>
#include <vector>

namespace expthresh {

/// One index i of the family: b vertex-disjoint stars with exactly `edges`
/// edges each.
struct StarLevel {
  unsigned b = 1;
  unsigned edges = 1;
};

struct Star {
  unsigned center = 0;
  std::vector<unsigned> edges;  // indices into StarSystem::edges()
};

struct StarWitness {
  std::size_t level = 0;  // 0-based index into levels()
  std::vector<Star> stars;
  bool from_greedy = true;
};

/// The family of vertex sets of b_i vertex-disjoint stars with L_i edges each,
/// over a linear k-uniform hypergraph, where a center x may only be used at
/// level i when L_i >= (L / 8ek) * deg(x) * sum_g^(-1+1/k).
class StarSystem {
 public:
  StarSystem(unsigned n, unsigned k, std::vector<SubsetMask> edges, std::vector<StarLevel> levels, Real L,
             Rational sum_g, int precision = 128, int max_precision = 2048);

  unsigned n() const { return n_; }
  unsigned k() const { return k_; }
  const std::vector<SubsetMask>& edges() const { return edges_; }
  const std::vector<StarLevel>& levels() const { return levels_; }
  const Real& L() const { return L_; }
  const Rational& sum_g() const { return sum_g_; }

  const std::vector<unsigned>& incident(unsigned x) const { return incident_[x]; }
  unsigned degree(unsigned x) const { return static_cast<unsigned>(incident_[x].size()); }
  /// (L / 8ek) * deg(x) * sum_g^(-1+1/k).
  Real threshold(unsigned x) const;
  /// Certified L_level >= threshold(x); undecidable comparisons count as false.
  bool qualifies(unsigned x, std::size_t level) const { return level >= first_level_[x]; }
  /// Certified d >= threshold(x) for an integer d.
  bool meets_threshold(unsigned x, unsigned d) const;

  /// The greedy star extraction inside S followed by witness assembly.
  std::optional<StarWitness> greedy_witness(const SubsetMask& s) const;
  /// Greedy first, then a budgeted exhaustive search per level.
  Tri find_witness(const SubsetMask& s, std::size_t node_budget, StarWitness* out = nullptr) const;
  /// Empty string when the witness satisfies every structural requirement.
  std::string check_witness(const StarWitness& w, const SubsetMask& s) const;
  SubsetMask witness_vertices(const StarWitness& w) const;

  /// Distinct member sets lying inside [offset, offset+size), shifted down.
  std::vector<SubsetMask> materialize(std::size_t budget, unsigned offset, unsigned size) const;
  std::vector<SubsetMask> materialize(std::size_t budget) const { return materialize(budget, 0, n_); }
  /// sum_i e_{b_i}(binom(deg z, L_i) * [z qualifies]) * p^(b_i((k-1)L_i+1)), over
  /// vertices and edges inside the window; an upper bound on the weight.
  Interval weight_upper_bound(const Interval& p, unsigned offset, unsigned size) const;
  Interval weight_upper_bound(const Interval& p) const { return weight_upper_bound(p, 0, n_); }
  /// Number of (b_i)-tuples of qualifying stars inside the window, summed over
  /// levels; bounds the number of members.
  BigInt count_bound(unsigned offset, unsigned size) const;

 private:
  std::vector<BigInt> level_counts(unsigned offset, unsigned size) const;

  unsigned n_;
  unsigned k_;
  std::vector<SubsetMask> edges_;
  std::vector<StarLevel> levels_;
  Real L_;
  Rational sum_g_;
  Real coef_;  // L / (8ek) * sum_g^(-1+1/k)
  int precision_;
  int max_precision_;
  std::vector<std::vector<unsigned>> incident_;
  std::vector<std::size_t> first_level_;
  std::vector<Interval> threshold_enclosure_;
};

}  // namespace expthresh
