#pragma once

#include "expthresh/budgets.hpp"
#include "expthresh/interval.hpp"
#include "expthresh/monotone_family.hpp"
#include "expthresh/oracles/covering_lp.hpp"
#include "expthresh/real.hpp"

#include <optional>
#include <vector>

namespace expthresh {

/// Minimum-weight covers of F: choose weights x_T on candidate sets T so that
/// every minimal element M of F has sum_{T subset M} x_T >= 1, minimizing
/// sum x_T p^|T|. Candidates default to the nonempty subsets of minimal
/// elements (no other set helps cover anything).
struct CoverProgram {
  GroundSet ground;
  std::vector<SubsetMask> constraints;
  std::vector<SubsetMask> variables;
  /// covers[j]: constraints containing variables[j]
  std::vector<std::vector<std::size_t>> covers;

  static CoverProgram for_family(const MonotoneFamily& f, const Budgets& budgets = {});
  /// Only the given candidate sets (e.g. G restricted to a support).
  static CoverProgram with_variables(const MonotoneFamily& f, std::vector<SubsetMask> variables);

  CoveringLp lp_at(const Rational& p) const;
};

struct CoverSolution {
  bool integral = false;
  /// Encloses the optimum at p and the value of `assignment` at p.
  Interval objective;
  std::optional<Rational> exact_objective;  // when p is rational
  std::vector<Rational> assignment;         // one per program variable, in [0,1]
  /// c_j = sum of x_T over |T| = j; the assignment's weight is sum_j c_j p^j.
  std::vector<Rational> polynomial;

  // fractional only
  std::vector<Rational> dual;  // one per constraint
  Interval dual_objective;
  bool dual_verified = false;

  // integral only
  std::size_t nodes = 0;

  std::vector<SubsetMask> support(const CoverProgram& program) const;
};

CoverSolution solve_fractional(const CoverProgram& program, const Rational& p, const Budgets& budgets = {});
/// Branch and bound with the LP relaxation as bound, branching on the largest
/// fractional value (x = 1 first). BudgetExceeded above budgets.bnb_nodes nodes.
CoverSolution solve_integral(const CoverProgram& program, const Rational& p, const Budgets& budgets = {});

struct IntegralBelow {
  /// An optimal integral cover when one weighs less than the cutoff; empty
  /// means the search proved every integral cover weighs at least the cutoff.
  std::optional<CoverSolution> solution;
  std::size_t nodes = 0;
};
IntegralBelow solve_integral_below(const CoverProgram& program, const Rational& p, const Rational& cutoff,
                                   const Budgets& budgets = {});

/// Irrational p is handled by solving at the outward-rounded rational
/// endpoints of its enclosure; the optimum is monotone in p.
CoverSolution min_cover_weight_fractional(const MonotoneFamily& f, const Interval& p, const Budgets& budgets = {});
CoverSolution min_cover_weight_integral(const MonotoneFamily& f, const Interval& p, const Budgets& budgets = {});

struct ThresholdResult {
  Real value;
  /// An optimal solution at (or just below) the threshold whose weight
  /// polynomial crosses theta there.
  CoverSolution witness;
  std::size_t solves = 0;
};

/// q: the largest p whose minimum integral cover weight is at most theta.
ThresholdResult expectation_threshold_q(const MonotoneFamily& f, const Rational& theta = Rational(1, 2),
                                        const Budgets& budgets = {});
/// q_f: the same with fractional covers.
ThresholdResult fractional_expectation_threshold_qf(const MonotoneFamily& f, const Rational& theta = Rational(1, 2),
                                                    const Budgets& budgets = {});

}  // namespace expthresh
