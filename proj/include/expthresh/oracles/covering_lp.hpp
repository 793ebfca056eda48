#pragma once

#include "expthresh/rational.hpp"

#include <cstddef>
#include <vector>

namespace expthresh {

/// min sum_j cost_j x_j  s.t.  sum_{j covers i} x_j >= 1 for every row i, x >= 0.
/// `covers[j]` lists the rows variable j appears in. Costs must be nonnegative.
struct CoveringLp {
  std::size_t rows = 0;
  std::vector<std::vector<std::size_t>> covers;
  std::vector<Rational> cost;
};

struct CoveringLpSolution {
  Rational objective;
  std::vector<Rational> x;  // primal, one per variable
  std::vector<Rational> y;  // dual, one per row: max sum y  s.t.  sum_{i covered by j} y_i <= cost_j
  std::size_t pivots = 0;
};

/// Exact rational simplex on the dual (a packing LP whose origin is feasible),
/// reading the primal optimum off the slack reduced costs. Largest-coefficient
/// pivoting that falls back to Bland's rule after a run of degenerate pivots.
/// PreconditionViolated when a row has no variable (the covering LP is
/// infeasible); DegeneratePivotLimit when `pivot_limit` pivots do not suffice.
CoveringLpSolution solve_covering_lp(const CoveringLp& lp, std::size_t pivot_limit = 0);

/// y >= 0, every dual constraint holds, and sum y equals `objective` exactly.
bool dual_certificate_holds(const CoveringLp& lp, const std::vector<Rational>& y, const Rational& objective);
/// x >= 0, every row is covered, and sum cost*x equals `objective` exactly.
bool primal_feasible(const CoveringLp& lp, const std::vector<Rational>& x, const Rational& objective);

}  // namespace expthresh
