#include "expthresh/oracles/cover_program.hpp"

#include "expthresh/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace expthresh {

namespace {

void sort_sets(std::vector<SubsetMask>& v) {
  std::sort(v.begin(), v.end(), [](const SubsetMask& a, const SubsetMask& b) {
    unsigned ca = a.count(), cb = b.count();
    return ca != cb ? ca < cb : lex_less(a, b);
  });
}

void fill_covers(CoverProgram& prog) {
  prog.covers.assign(prog.variables.size(), {});
  for (std::size_t j = 0; j < prog.variables.size(); ++j)
    for (std::size_t i = 0; i < prog.constraints.size(); ++i)
      if (prog.variables[j].is_subset_of(prog.constraints[i])) prog.covers[j].push_back(i);
}

std::vector<Rational> polynomial_of(const CoverProgram& prog, const std::vector<Rational>& x) {
  std::vector<Rational> c(1, Rational(0));
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0) continue;
    unsigned s = prog.variables[j].count();
    if (c.size() <= s) c.resize(s + 1, Rational(0));
    c[s] += x[j];
  }
  return c;
}

Interval eval_poly(const std::vector<Rational>& c, const Interval& p) {
  Interval acc = Interval::of(0, p.bits());
  for (std::size_t j = c.size(); j-- > 0;) acc = acc * p + Interval::of(c[j], p.bits());
  return acc;
}

bool is_integral(const Rational& v) { return boost::multiprecision::denominator(v) == 1; }

struct BranchAndBound {
  const CoverProgram& prog;
  std::vector<Rational> cost;
  const Budgets& budgets;
  std::vector<signed char> fixed;  // -1 free, 0, 1
  std::optional<Rational> best;
  std::vector<Rational> best_x;
  std::size_t nodes = 0;
  // every integral objective is a multiple of `unit` (0 when p = 0)
  Rational unit = 0;

  BranchAndBound(const CoverProgram& p, const Rational& prob, const Budgets& b) : prog(p), budgets(b) {
    BigInt num = 0, den = 1;
    for (const auto& v : prog.variables) {
      cost.push_back(pow(prob, static_cast<long>(v.count())));
      num = boost::multiprecision::gcd(num, boost::multiprecision::numerator(cost.back()));
      den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(cost.back()));
    }
    if (num != 0) unit = Rational(num, den);
    fixed.assign(prog.variables.size(), -1);
  }

  /// The least attainable objective at or above a relaxation bound.
  Rational round_up(const Rational& bound) const {
    if (unit == 0) return bound;
    return Rational(ceil_of(bound / unit)) * unit;
  }

  void greedy_incumbent() {
    const std::size_t m = prog.constraints.size();
    std::vector<char> done(m, 0);
    std::vector<Rational> x(prog.variables.size(), Rational(0));
    std::size_t left = m;
    Rational total = 0;
    while (left) {
      std::size_t pick = x.size();
      Rational pick_cost;
      std::size_t pick_gain = 0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] != 0) continue;
        std::size_t gain = 0;
        for (std::size_t i : prog.covers[j]) gain += !done[i];
        if (!gain) continue;
        // cost per newly covered constraint, compared without division
        if (pick == x.size() || cost[j] * pick_gain < pick_cost * gain) {
          pick = j;
          pick_cost = cost[j];
          pick_gain = gain;
        }
      }
      require(pick < x.size(), ErrorCode::precondition_violated, "some constraint has no candidate cover set");
      x[pick] = 1;
      total += cost[pick];
      for (std::size_t i : prog.covers[pick])
        if (!done[i]) {
          done[i] = 1;
          --left;
        }
    }
    best = total;
    best_x = std::move(x);
  }

  void search() {
    if (++nodes > budgets.bnb_nodes)
      fail(ErrorCode::budget_exceeded, "branch and bound exceeded " + std::to_string(budgets.bnb_nodes) + " nodes");
    const std::size_t m = prog.constraints.size(), N = prog.variables.size();
    std::vector<char> done(m, 0);
    Rational fixed_cost = 0;
    for (std::size_t j = 0; j < N; ++j)
      if (fixed[j] == 1) {
        fixed_cost += cost[j];
        for (std::size_t i : prog.covers[j]) done[i] = 1;
      }
    if (best && fixed_cost >= *best) return;

    std::vector<std::size_t> row_of(m, m), rows;
    for (std::size_t i = 0; i < m; ++i)
      if (!done[i]) {
        row_of[i] = rows.size();
        rows.push_back(i);
      }
    std::vector<signed char> x_int(fixed);
    if (rows.empty()) {
      for (auto& v : x_int) v = v == 1;
      record(fixed_cost, x_int);
      return;
    }
    CoveringLp lp;
    lp.rows = rows.size();
    std::vector<std::size_t> var_of;
    std::vector<char> reach(rows.size(), 0);
    for (std::size_t j = 0; j < N; ++j) {
      if (fixed[j] != -1) continue;
      std::vector<std::size_t> cov;
      for (std::size_t i : prog.covers[j])
        if (!done[i]) cov.push_back(row_of[i]);
      if (cov.empty()) continue;
      for (std::size_t r : cov) reach[r] = 1;
      lp.covers.push_back(std::move(cov));
      lp.cost.push_back(cost[j]);
      var_of.push_back(j);
    }
    for (char r : reach)
      if (!r) return;  // infeasible
    CoveringLpSolution sol = solve_covering_lp(lp);
    Rational bound = fixed_cost + sol.objective;
    if (best && round_up(bound) >= *best) return;

    std::size_t branch = N;
    Rational branch_val = 0;
    for (std::size_t v = 0; v < var_of.size(); ++v) {
      const Rational& xv = sol.x[v];
      if (is_integral(xv)) continue;
      if (branch == N || xv > branch_val) {
        branch = var_of[v];
        branch_val = xv;
      }
    }
    if (branch == N) {
      for (auto& v : x_int) v = v == 1;
      for (std::size_t v = 0; v < var_of.size(); ++v)
        if (sol.x[v] >= 1) x_int[var_of[v]] = 1;
      record(bound, x_int);
      return;
    }
    fixed[branch] = 1;
    search();
    fixed[branch] = 0;
    search();
    fixed[branch] = -1;
  }

  void record(const Rational& value, const std::vector<signed char>& x) {
    if (best && value >= *best) return;
    best = value;
    best_x.assign(x.size(), Rational(0));
    for (std::size_t j = 0; j < x.size(); ++j) best_x[j] = x[j] == 1 ? 1 : 0;
  }
};

Rational dyadic_above(const Rational& v, int bits) {
  // smallest multiple of 2^-bits strictly above v
  BigInt scale = BigInt(1) << bits;
  BigInt f = floor_of(v * Rational(scale));
  return Rational(f + 1, scale);
}

struct ScalarSolve {
  Rational value;
  CoverSolution sol;
};

ThresholdResult threshold(const MonotoneFamily& f, const Rational& theta, const Budgets& budgets, bool integral) {
  require(theta > 0 && theta <= 1, ErrorCode::invalid_argument, "theta must lie in (0, 1]");
  CoverProgram prog = CoverProgram::for_family(f, budgets);
  ThresholdResult out;
  auto solve = [&](const Rational& p) {
    ++out.solves;
    CoverSolution s = integral ? solve_integral(prog, p, budgets) : solve_fractional(prog, p, budgets);
    Rational v = *s.exact_objective;
    return ScalarSolve{v, std::move(s)};
  };
  ScalarSolve at_one = solve(Rational(1));
  if (at_one.value <= theta) {
    out.value = Real(1);
    out.witness = std::move(at_one.sol);
    return out;
  }
  Rational lo = 0, hi = 1;
  ScalarSolve lo_sol = solve(lo);
  for (int step = 0; step < 12; ++step) {
    Rational mid = (lo + hi) / 2;
    ScalarSolve s = solve(mid);
    if (s.value <= theta) {
      lo = mid;
      lo_sol = std::move(s);
    } else {
      hi = mid;
    }
  }
  const int bits = budgets.precision + 2;
  while (true) {
    // the optimum is a minimum of increasing polynomials; the one optimal at lo
    // crosses theta at some r >= lo, and q >= r
    Real r = Real::poly_root(lo_sol.sol.polynomial, theta);
    Interval ri = r.eval(bits + 8);
    Rational r_lo = ri.lower_rational();
    Rational up = dyadic_above(ri.upper_rational(), bits);
    if (up >= hi) {
      out.value = Real::enclosed(std::max(r_lo, lo), hi);
      out.witness = std::move(lo_sol.sol);
      return out;
    }
    ScalarSolve s = solve(up);
    if (s.value > theta) {
      if (auto rx = r.exact()) {
        // optimum strictly increasing: q = r when the candidate is optimal at r
        ScalarSolve at_r = solve(*rx);
        if (at_r.value == theta) {
          out.value = r;
          out.witness = std::move(lo_sol.sol);
          return out;
        }
      }
      out.value = Real::enclosed(std::max(r_lo, lo), up);
      out.witness = std::move(lo_sol.sol);
      return out;
    }
    lo = up;
    lo_sol = std::move(s);
  }
}

}  // namespace

CoverProgram CoverProgram::for_family(const MonotoneFamily& f, const Budgets& budgets) {
  CoverProgram prog;
  prog.ground = f.ground();
  prog.constraints = f.minimal();
  std::unordered_set<SubsetMask, SubsetMaskHash> seen;
  for (const auto& m : prog.constraints) {
    auto xs = m.elements();
    require(xs.size() < 40 && (std::size_t{1} << xs.size()) <= budgets.lp_variables, ErrorCode::budget_exceeded,
            "minimal element too large for the cover program");
    for (std::uint64_t w = 1; w < (std::uint64_t{1} << xs.size()); ++w) {
      SubsetMask t(f.n());
      for (std::size_t b = 0; b < xs.size(); ++b)
        if ((w >> b) & 1) t.set(xs[b]);
      seen.insert(std::move(t));
      if (seen.size() > budgets.lp_variables)
        fail(ErrorCode::budget_exceeded, "cover program exceeds " + std::to_string(budgets.lp_variables) + " variables");
    }
  }
  prog.variables.assign(seen.begin(), seen.end());
  sort_sets(prog.variables);
  fill_covers(prog);
  return prog;
}

CoverProgram CoverProgram::with_variables(const MonotoneFamily& f, std::vector<SubsetMask> variables) {
  CoverProgram prog;
  prog.ground = f.ground();
  prog.constraints = f.minimal();
  for (const auto& v : variables) {
    require(v.width() == f.n() && !v.empty(), ErrorCode::invalid_argument, "cover candidates must be nonempty subsets");
  }
  sort_sets(variables);
  variables.erase(std::unique(variables.begin(), variables.end()), variables.end());
  prog.variables = std::move(variables);
  fill_covers(prog);
  return prog;
}

CoveringLp CoverProgram::lp_at(const Rational& p) const {
  CoveringLp lp;
  lp.rows = constraints.size();
  lp.covers = covers;
  for (const auto& v : variables) lp.cost.push_back(pow(p, static_cast<long>(v.count())));
  return lp;
}

std::vector<SubsetMask> CoverSolution::support(const CoverProgram& program) const {
  std::vector<SubsetMask> out;
  for (std::size_t j = 0; j < assignment.size(); ++j)
    if (assignment[j] != 0) out.push_back(program.variables[j]);
  return out;
}

CoverSolution solve_fractional(const CoverProgram& program, const Rational& p, const Budgets& budgets) {
  require(p >= 0 && p <= 1, ErrorCode::invalid_argument, "p must lie in [0,1]");
  CoveringLp lp = program.lp_at(p);
  CoveringLpSolution sol = solve_covering_lp(lp);
  CoverSolution out;
  out.integral = false;
  out.exact_objective = sol.objective;
  out.objective = Interval::of(sol.objective, budgets.precision);
  out.assignment = sol.x;
  for (auto& v : out.assignment) v = std::min(v, Rational(1));
  out.polynomial = polynomial_of(program, out.assignment);
  out.dual = sol.y;
  out.dual_objective = out.objective;
  // clamping x at 1 keeps feasibility and can only lower the cost
  out.dual_verified = dual_certificate_holds(lp, sol.y, sol.objective) && primal_feasible(lp, out.assignment, sol.objective);
  return out;
}

namespace {

CoverSolution integral_solution(const CoverProgram& program, const BranchAndBound& bb, const Budgets& budgets) {
  CoverSolution out;
  out.integral = true;
  out.exact_objective = *bb.best;
  out.objective = Interval::of(*bb.best, budgets.precision);
  out.assignment = bb.best_x;
  out.polynomial = polynomial_of(program, out.assignment);
  out.nodes = bb.nodes;
  return out;
}

}  // namespace

CoverSolution solve_integral(const CoverProgram& program, const Rational& p, const Budgets& budgets) {
  require(p >= 0 && p <= 1, ErrorCode::invalid_argument, "p must lie in [0,1]");
  BranchAndBound bb(program, p, budgets);
  bb.greedy_incumbent();
  bb.search();
  return integral_solution(program, bb, budgets);
}

IntegralBelow solve_integral_below(const CoverProgram& program, const Rational& p, const Rational& cutoff,
                                   const Budgets& budgets) {
  require(p >= 0 && p <= 1, ErrorCode::invalid_argument, "p must lie in [0,1]");
  BranchAndBound bb(program, p, budgets);
  bb.greedy_incumbent();
  const bool greedy_below = *bb.best < cutoff;
  if (!greedy_below) {
    bb.best = cutoff;
    bb.best_x.clear();
  }
  bb.search();
  IntegralBelow out;
  out.nodes = bb.nodes;
  if (!bb.best_x.empty()) out.solution = integral_solution(program, bb, budgets);
  return out;
}

namespace {

CoverSolution solve_over_interval(const MonotoneFamily& f, const Interval& p, const Budgets& budgets, bool integral) {
  CoverProgram prog = CoverProgram::for_family(f, budgets);
  auto run = [&](const Rational& q) { return integral ? solve_integral(prog, q, budgets) : solve_fractional(prog, q, budgets); };
  Rational lo = std::max(Rational(0), p.lower_rational()), hi = std::min(Rational(1), p.upper_rational());
  CoverSolution at_lo = run(lo);
  if (lo == hi) return at_lo;
  CoverSolution at_hi = run(hi);
  Interval range = Interval::between(*at_lo.exact_objective, *at_hi.exact_objective, p.bits());
  at_lo.exact_objective.reset();
  at_lo.objective = range.hull(eval_poly(at_lo.polynomial, p));
  if (!integral) at_lo.dual_objective = range;
  return at_lo;
}

}  // namespace

CoverSolution min_cover_weight_fractional(const MonotoneFamily& f, const Interval& p, const Budgets& budgets) {
  return solve_over_interval(f, p, budgets, false);
}

CoverSolution min_cover_weight_integral(const MonotoneFamily& f, const Interval& p, const Budgets& budgets) {
  return solve_over_interval(f, p, budgets, true);
}

ThresholdResult expectation_threshold_q(const MonotoneFamily& f, const Rational& theta, const Budgets& budgets) {
  return threshold(f, theta, budgets, true);
}

ThresholdResult fractional_expectation_threshold_qf(const MonotoneFamily& f, const Rational& theta, const Budgets& budgets) {
  return threshold(f, theta, budgets, false);
}

}  // namespace expthresh
