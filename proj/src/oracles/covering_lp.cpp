#include "expthresh/oracles/covering_lp.hpp"

#include "expthresh/errors.hpp"

namespace expthresh {

CoveringLpSolution solve_covering_lp(const CoveringLp& lp, std::size_t pivot_limit) {
  const std::size_t m = lp.rows, N = lp.covers.size();
  require(lp.cost.size() == N, ErrorCode::invalid_argument, "one cost per variable");
  std::vector<char> covered(m, 0);
  for (std::size_t j = 0; j < N; ++j) {
    require(lp.cost[j] >= 0, ErrorCode::invalid_argument, "covering costs must be nonnegative");
    for (std::size_t i : lp.covers[j]) {
      require(i < m, ErrorCode::invalid_argument, "row index out of range");
      covered[i] = 1;
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    require(covered[i], ErrorCode::precondition_violated, "row " + std::to_string(i) + " has no covering variable");
  if (pivot_limit == 0) pivot_limit = 100 * (m + N) + 1000;

  // rows: one per primal variable j: sum_{i in covers[j]} y_i + s_j = cost_j
  const std::size_t width = m + N;
  std::vector<std::vector<Rational>> t(N, std::vector<Rational>(width + 1, Rational(0)));
  std::vector<std::size_t> basis(N);
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i : lp.covers[j]) t[j][i] = 1;
    t[j][m + j] = 1;
    t[j][width] = lp.cost[j];
    basis[j] = m + j;
  }
  std::vector<Rational> d(width + 1, Rational(0));  // z + sum d_c v_c = d[width]
  for (std::size_t i = 0; i < m; ++i) d[i] = -1;

  CoveringLpSolution out;
  bool bland = false;
  std::size_t degenerate_run = 0;
  std::vector<std::size_t> nz;
  while (true) {
    std::size_t col = width;
    for (std::size_t c = 0; c < width; ++c) {
      if (d[c] >= 0) continue;
      if (col == width || (!bland && d[c] < d[col])) col = c;
      if (bland) break;
    }
    if (col == width) break;
    if (++out.pivots > pivot_limit) fail(ErrorCode::degenerate_pivot_limit, "simplex pivot limit reached");

    std::size_t r = N;
    Rational best;
    for (std::size_t j = 0; j < N; ++j) {
      if (t[j][col] <= 0) continue;
      Rational ratio = t[j][width] / t[j][col];
      if (r == N || ratio < best || (ratio == best && basis[j] < basis[r])) {
        r = j;
        best = ratio;
      }
    }
    if (r == N) fail(ErrorCode::precondition_violated, "covering LP dual is unbounded");
    if (best == 0) {
      if (++degenerate_run > 50) bland = true;
    } else {
      degenerate_run = 0;
    }

    Rational inv = 1 / t[r][col];
    nz.clear();
    for (std::size_t c = 0; c <= width; ++c)
      if (t[r][c] != 0) {
        t[r][c] *= inv;
        nz.push_back(c);
      }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[col] == 0) return;
      Rational f = row[col];
      for (std::size_t c : nz) row[c] -= f * t[r][c];
    };
    for (std::size_t j = 0; j < N; ++j)
      if (j != r) eliminate(t[j]);
    eliminate(d);
    basis[r] = col;
  }

  out.objective = d[width];
  out.x.assign(N, Rational(0));
  for (std::size_t j = 0; j < N; ++j) out.x[j] = d[m + j];
  out.y.assign(m, Rational(0));
  for (std::size_t j = 0; j < N; ++j)
    if (basis[j] < m) out.y[basis[j]] = t[j][width];
  return out;
}

bool dual_certificate_holds(const CoveringLp& lp, const std::vector<Rational>& y, const Rational& objective) {
  if (y.size() != lp.rows) return false;
  Rational total = 0;
  for (const auto& v : y) {
    if (v < 0) return false;
    total += v;
  }
  for (std::size_t j = 0; j < lp.covers.size(); ++j) {
    Rational s = 0;
    for (std::size_t i : lp.covers[j]) s += y[i];
    if (s > lp.cost[j]) return false;
  }
  return total == objective;
}

bool primal_feasible(const CoveringLp& lp, const std::vector<Rational>& x, const Rational& objective) {
  if (x.size() != lp.covers.size()) return false;
  std::vector<Rational> load(lp.rows, Rational(0));
  Rational total = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < 0) return false;
    total += x[j] * lp.cost[j];
    for (std::size_t i : lp.covers[j]) load[i] += x[j];
  }
  for (const auto& l : load)
    if (l < 1) return false;
  return total == objective;
}

}  // namespace expthresh
