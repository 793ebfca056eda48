// Runs the acceptance checks and prints one PASS/FAIL line per criterion.

#include "mutations.hpp"

#include "cli.hpp"
#include "expthresh/constructions/basic.hpp"
#include "expthresh/constructions/linear.hpp"
#include "expthresh/constructions/reductions.hpp"
#include "expthresh/combinations.hpp"
#include "expthresh/errors.hpp"
#include "expthresh/instances/instances.hpp"
#include "expthresh/oracles/cover_program.hpp"
#include "expthresh/random.hpp"
#include "expthresh/upset.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace expthresh;
using testing::Json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Accumulates failures; the first few are kept for the report line.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  Outcome outcome(const std::string& summary) const {
    if (failures == 0) return {true, summary};
    return {false, summary + "; " + std::to_string(failures) + " of " + std::to_string(checks) +
                       " checks failed, first: " + first};
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream ss;
  ss << std::setprecision(digits) << v;
  return ss.str();
}

const int bits = 256;

bool overlap(const Interval& a, const Interval& b) { return certainly_lt(a, b) != Tri::yes && certainly_lt(b, a) != Tri::yes; }

bool same_real(const Real& a, const Real& b) {
  Interval x = a.eval(bits), y = b.eval(bits);
  return overlap(x, y) && x.width_double() <= 1e-30 * (1 + std::abs(x.mid_double()));
}

Rational sum_inside(const WeightFunction& g, const SubsetMask& s) {
  Rational acc = 0;
  for (const auto& e : g.entries())
    if (e.set.is_subset_of(s)) acc += e.weight;
  return acc;
}

std::vector<SubsetMask> all_subsets(unsigned n) {
  std::vector<SubsetMask> out;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) out.push_back(SubsetMask::from_word(n, w));
  return out;
}

/// p = a/b with b small: min over sub-collections of the candidate sets that
/// meet every minimal element, by enumerating all 2^|candidates| picks.
Rational enumerate_min_cover(const MonotoneFamily& f, const std::vector<SubsetMask>& cands, const Rational& p) {
  const unsigned n = f.n();
  const long a = static_cast<long>(boost::multiprecision::numerator(p));
  const long b = static_cast<long>(boost::multiprecision::denominator(p));
  const auto& mins = f.minimal();
  const std::size_t m = cands.size();
  std::vector<std::uint64_t> covers(m, 0);
  std::vector<long long> cost(m, 1);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < mins.size(); ++i)
      if (cands[j].is_subset_of(mins[i])) covers[j] |= std::uint64_t{1} << i;
    for (unsigned r = 0; r < n; ++r) cost[j] *= r < cands[j].count() ? a : b;
  }
  const std::uint64_t all = mins.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << mins.size()) - 1;
  std::vector<std::uint64_t> got(std::size_t{1} << m, 0);
  std::vector<long long> total(std::size_t{1} << m, 0);
  long long best = -1;
  for (std::size_t pick = 1; pick < got.size(); ++pick) {
    const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(pick));
    got[pick] = got[pick & (pick - 1)] | covers[low];
    total[pick] = total[pick & (pick - 1)] + cost[low];
    if (got[pick] == all && (best < 0 || total[pick] < best)) best = total[pick];
  }
  long long scale = 1;
  for (unsigned r = 0; r < n; ++r) scale *= b;
  return Rational(best, scale);
}

std::vector<SubsetMask> subsets_of_minimal(const MonotoneFamily& f) {
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

const std::vector<Rational> p_grid = {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4)};

Outcome threshold_chain() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  double worst = -1;
  std::size_t minimal_sets = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const unsigned n = 1 + static_cast<unsigned>(seed % 7);
    auto f = random_monotone_family(n, seed, n + 1 + static_cast<unsigned>(seed % n));
    minimal_sets += f.minimal().size();
    Interval q = expectation_threshold_q(f).value.eval(128);
    Interval qf = fractional_expectation_threshold_qf(f).value.eval(128);
    Interval pc = threshold_pc(f).eval(128);
    t.expect(q.upper_double() <= qf.lower_double() + 1e-6, "q > q_f at seed " + std::to_string(seed));
    t.expect(qf.upper_double() <= pc.lower_double() + 1e-6, "q_f > p_c at seed " + std::to_string(seed));
    worst = std::max({worst, q.upper_double() - qf.lower_double(), qf.upper_double() - pc.lower_double()});
  }
  const double secs = seconds_since(t0);
  t.expect(secs < 60, "runtime " + fmt(secs) + " s over 60 s");
  return t.outcome("100 families, n <= 7, " + std::to_string(minimal_sets) + " minimal sets in all, largest upper-minus-lower " + fmt(worst) + ", " + fmt(secs) + " s");
}

std::vector<MonotoneFamily> small_families() {
  std::vector<MonotoneFamily> out;
  for (std::uint64_t seed = 0; out.size() < 25; ++seed) {
    auto f = random_monotone_family(3 + static_cast<unsigned>(seed % 3), 1000 + seed);
    if (subsets_of_minimal(f).size() <= 20) out.push_back(f);
  }
  return out;
}

Outcome oracle_equivalence() {
  Tally t;
  std::size_t i = 0;
  for (const auto& f : small_families()) {
    auto prog = CoverProgram::for_family(f);
    // an optimal cover never needs a set outside every minimal element
    const auto cands = subsets_of_minimal(f);
    for (const auto& p : p_grid) {
      const Rational bb = *solve_integral(prog, p).exact_objective;
      const Rational ex = enumerate_min_cover(f, cands, p);
      t.expect(bb == ex, "instance " + std::to_string(i) + " p=" + to_string(p) + ": " + to_string(bb) +
                             " vs " + to_string(ex));
    }
    ++i;
  }
  return t.outcome("25 instances, n <= 5, 5 values of p, exact rational agreement");
}

Outcome lp_duality() {
  Tally t;
  std::size_t solved = 0;
  std::vector<MonotoneFamily> fams = small_families();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const unsigned n = 1 + static_cast<unsigned>(seed % 7);
    fams.push_back(random_monotone_family(n, seed, n + 1 + static_cast<unsigned>(seed % n)));
  }
  for (const auto& f : fams) {
    auto prog = CoverProgram::for_family(f);
    for (const auto& p : p_grid) {
      auto frac = solve_fractional(prog, p);
      auto integ = solve_integral(prog, p);
      t.expect(frac.dual_verified, "dual certificate rejected");
      t.expect(overlap(frac.objective, frac.dual_objective), "primal and dual objectives disagree");
      t.expect(*frac.exact_objective <= *integ.exact_objective, "fractional above integral");
      // weak duality by hand: the dual objective is the sum of y
      Rational ysum = 0;
      for (const auto& y : frac.dual) ysum += y;
      t.expect(ysum == *frac.exact_objective, "dual sum differs from the primal optimum");
      ++solved;
    }
  }
  return t.outcome(std::to_string(solved) + " fractional solves with verified duals, fractional <= integral");
}

Outcome singleton_construction() {
  Tally t;
  std::size_t built = 0;
  for (std::uint64_t seed = 0; built < 50; ++seed) {
    const unsigned n = 4 + static_cast<unsigned>(seed % 13);
    auto g = random_weight_function(n, 1, 500 + seed);
    if (g.total() < 1) continue;
    ++built;
    const Real p = unit_weight_p(g);
    t.expect(overlap(weight_of_function(g, p.eval(bits)), Interval::of(1, bits)), "w(g,p) != 1");
    auto cert = singleton_cover(g, p);
    t.expect(same_real(cert.loss, Real(4) * Real::e()), "loss is not 4e");
    t.expect(cert.bound.exact() == Rational(1), "bound is not 1");
    auto rep = verify_certificate(cert, {}, CoverageMode::exhaustive());
    t.expect(rep.valid && rep.mode_used.kind == CoverageKind::exhaustive, "certificate fails at n=" + std::to_string(n));

    const unsigned a = static_cast<unsigned>(ceil_of(g.total()));
    const Interval x = (p / (Real(4) * Real::e())).eval(bits);
    Interval sum = Interval::of(0, bits);
    for (unsigned j = 1; j <= n; ++j) {
      const unsigned top = std::min(j * a, n);
      if (top < j) break;
      sum = sum + Interval::of(Rational(binomial(top, j)), bits) * x.pow(j);
    }
    t.expect(certify_le(sum, Real(1), 2048) == Tri::yes, "closed-form weight above 1");
  }
  return t.outcome("50 singleton weight functions, n in 4..16, exhaustive verification and closed form <= 1");
}

Outcome randomized_construction() {
  Tally t;
  const unsigned n = 10;
  std::vector<SubsetMask> pairs;
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = a + 1; b < n; ++b) pairs.push_back(SubsetMask::from_elements(n, {a, b}));
  auto g = WeightFunction::constant(GroundSet(n), pairs, Rational(1, 45));
  const Real p = unit_weight_p(g);
  const Real loss = randomized_loss(n, 2);
  t.expect(same_real(loss, Real(4) * sqrt(Real(10))), "loss is not 4 n^(1/k)");
  const auto minimal = minimal_elements_of_upset(g);
  const Interval x = (p / loss).eval(bits);

  std::size_t accepted = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    auto d = randomized_draw(g, p, rng, minimal);
    if (!(d.covers && d.weight_ok == Tri::yes)) continue;
    ++accepted;
    Certificate c;
    c.g = g;
    c.p = p;
    c.cover = CoverFamily::explicit_sets(n, d.sets);
    c.loss = loss;
    c.bound = Real(1);
    auto rep = verify_certificate(c, {}, CoverageMode::exhaustive());
    t.expect(rep.valid, "accepted draw " + std::to_string(seed) + " does not verify");
  }
  const double frac = static_cast<double>(accepted) / 200;
  t.expect(frac >= 0.5, "acceptance fraction " + fmt(frac));

  double sum = 0, sum_sq = 0;
  const int samples = 1000;
  for (int s = 0; s < samples; ++s) {
    Rng rng(static_cast<std::uint64_t>(10000 + s));
    auto d = randomized_draw(g, p, rng, minimal);
    Interval w = Interval::of(0, bits);
    for (const auto& set : d.sets) w = w + x.pow(set.count());
    t.expect(overlap(w, d.weight), "draw weight disagrees with a direct sum");
    sum += w.mid_double();
    sum_sq += w.mid_double() * w.mid_double();
  }
  const double mean = sum / samples, se = std::sqrt((sum_sq / samples - mean * mean) / samples);
  const double Ld = loss.eval(bits).mid_double();
  const double cap = (n + 1) / (Ld * Ld) + 3 * se;
  t.expect(mean <= cap, "mean weight " + fmt(mean) + " above " + fmt(cap));
  return t.outcome("acceptance " + fmt(frac) + " (coverage alone has probability >= " + fmt(1 - std::exp(-1.0)) +
                   "), mean w(G,p/L) " + fmt(mean) + " <= " + fmt(cap));
}

Outcome volume_cover_grid() {
  Tally t;
  std::size_t cells = 0;
  for (unsigned m = 5; m <= 20; ++m)
    for (long mult : {1L, 2L, 10L})
      for (const Rational& p : {Rational(1, 10), Rational(1, 2)}) {
        const unsigned n = m + 2;
        SubsetMask v(n);
        for (unsigned x = 0; x < m; ++x) v.set(x);
        const Real L = Real(mult) * Real::e();
        // (e p / L)|V| = p |V| / mult exactly
        const Rational level = p * static_cast<long>(m) / mult;
        const unsigned t_expected = static_cast<unsigned>(ceil_of(level));
        const std::string cell = "|V|=" + std::to_string(m) + " L=" + std::to_string(mult) + "e p=" + to_string(p);
        t.expect(volume_level(v, Real(p), L) == t_expected, cell + ": level");
        const Interval w =
            Interval::of(Rational(binomial(m, t_expected)), bits) * (Real(p) / L).eval(bits).pow(t_expected);
        t.expect(certify_le(w, Real(1), 2048) == Tri::yes, cell + ": binomial bound");

        auto fam = volume_cover(v, Real(p), L);
        std::vector<SubsetMask> expected;
        for_each_combination(m, t_expected, [&](const std::vector<unsigned>& idx) {
          SubsetMask s(n);
          for (unsigned x : idx) s.set(x);
          expected.push_back(s);
          return true;
        });
        std::sort(expected.begin(), expected.end(), lex_less);
        auto got = fam.materialize();
        std::sort(got.begin(), got.end(), lex_less);
        t.expect(got == expected, cell + ": members differ from enumeration");
        Rng rng(m * 100 + static_cast<std::uint64_t>(mult));
        for (int trial = 0; trial < 200; ++trial) {
          SubsetMask s(n);
          for (unsigned x = 0; x < n; ++x)
            if (rng.below(2)) s.set(x);
          const bool direct = (s & v).count() >= t_expected;
          t.expect(fam.member(s) == tri_of(direct), cell + ": membership");
        }
        ++cells;
      }
  return t.outcome(std::to_string(cells) + " grid cells, t = ceil(e p |V| / L), binomial bound certified");
}

/// Largest multiple of 1/1024 with w(g, p) <= 1, from below.
Rational rational_unit_p(const WeightFunction& g) {
  Rational p(static_cast<long>(std::floor(unit_weight_p(g).eval(128).lower_double() * 1024)), 1024);
  auto w = [&](const Rational& q) {
    Rational acc = 0;
    for (const auto& e : g.entries()) {
      Rational term = e.weight;
      for (unsigned i = 0; i < e.set.count(); ++i) term *= q;
      acc += term;
    }
    return acc;
  };
  while (w(p) > 1) p -= Rational(1, 1024);
  return p;
}

Outcome power_trick() {
  Tally t;
  std::size_t exact = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const unsigned k = 1 + static_cast<unsigned>(seed % 3);
    const unsigned n = k == 1 ? 3 + static_cast<unsigned>(seed % 4) : k + 1;
    WeightLaw law;
    law.denominator = k == 3 ? 2 : 4;
    auto g = random_weight_function(n, k, 700 + seed, k == 1 ? 0 : 3, law);
    const Rational p = rational_unit_p(g);
    auto res = power_trick_extract(g, Real(p), 2, exact_oracle_builder(Real(4)));
    const std::string tag = "seed " + std::to_string(seed) + " k=" + std::to_string(k);
    t.expect(res.copies == (1u << k), tag + ": copies");
    const Rational cap(1, 1L << k);
    auto loss = res.certificate.loss.exact();
    if (loss) {
      const Rational x = p / *loss;
      Rational w = 0;
      for (const auto& s : res.certificate.cover.materialize()) {
        Rational term = 1;
        for (unsigned i = 0; i < s.count(); ++i) term *= x;
        w += term;
      }
      t.expect(w <= cap, tag + ": weight " + to_string(w) + " above 2^-k");
      ++exact;
    } else {
      t.expect(certify_le(verify_certificate(res.certificate).weight, Real(cap), 2048) == Tri::yes, tag + ": weight");
    }
    t.expect(verify_certificate(res.certificate, {}, CoverageMode::exhaustive()).valid, tag + ": certificate");
  }
  return t.outcome("20 instances, k in 1..3, c = 2; " + std::to_string(exact) + " weights compared exactly");
}

std::vector<WeightFunction> mixed_fixtures() {
  auto S = [](unsigned n, std::initializer_list<unsigned> xs) { return SubsetMask::from_elements(n, xs); };
  std::vector<WeightFunction> out;
  out.push_back(WeightFunction(GroundSet(3), {{S(3, {0}), Rational(1, 2)}, {S(3, {1, 2}), Rational(1, 2)}}));
  out.push_back(WeightFunction(GroundSet(6), {{S(6, {0}), Rational(1, 2)},
                                              {S(6, {1, 2}), Rational(3, 4)},
                                              {S(6, {3, 4, 5}), Rational(1)},
                                              {S(6, {0, 3}), Rational(1, 2)},
                                              {S(6, {2, 5}), Rational(1, 4)}}));
  out.push_back(WeightFunction(GroundSet(8), {{S(8, {0}), Rational(1)},
                                              {S(8, {1}), Rational(1, 2)},
                                              {S(8, {2, 3}), Rational(1, 2)},
                                              {S(8, {4, 5, 6}), Rational(1, 2)},
                                              {S(8, {5, 6, 7}), Rational(1, 4)}}));
  out.push_back(WeightFunction(GroundSet(5), {{S(5, {0, 1}), Rational(1, 2)},
                                              {S(5, {1, 2}), Rational(1, 2)},
                                              {S(5, {2, 3, 4}), Rational(1)},
                                              {S(5, {4}), Rational(1, 2)}}));
  out.push_back(WeightFunction(GroundSet(7), {{S(7, {0, 1, 2}), Rational(1, 2)},
                                              {S(7, {2, 3, 4}), Rational(1, 2)},
                                              {S(7, {4, 5, 6}), Rational(1, 2)},
                                              {S(7, {6}), Rational(1, 2)},
                                              {S(7, {1, 5}), Rational(1, 2)}}));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(900 + seed);
    const unsigned n = 5 + static_cast<unsigned>(seed % 4);
    std::vector<WeightEntry> es;
    for (unsigned k = 1; k <= 3; ++k) {
      std::vector<unsigned> xs(n);
      for (unsigned x = 0; x < n; ++x) xs[x] = x;
      rng.shuffle(xs);
      xs.resize(k);
      SubsetMask s = SubsetMask::from_elements(n, xs);
      bool dup = false;
      for (const auto& e : es) dup |= e.set == s;
      if (!dup) es.push_back({s, Rational(static_cast<long>(1 + rng.below(2)), 2)});
    }
    out.push_back(WeightFunction(GroundSet(n), es));
  }
  return out;
}

Outcome uniformization() {
  Tally t;
  std::size_t built = 0, members_checked = 0;
  for (const auto& g : mixed_fixtures()) {
    const std::string tag = "fixture " + std::to_string(built);
    ++built;
    if (g.total() < 1) {
      t.expect(false, tag + ": total weight below 1");
      continue;
    }
    const Real p = unit_weight_p(g);
    auto res = uniformize_cover(g, p, exact_oracle_builder(Real(4)));
    t.expect(same_real(res.certificate.loss, Real(4) * res.L), tag + ": loss is not 4L");
    auto rep = verify_certificate(res.certificate, {}, CoverageMode::exhaustive());
    t.expect(rep.valid && rep.mode_used.kind == CoverageKind::exhaustive, tag + ": certificate");
    t.expect(certainly_lt(rep.weight, Interval::of(1, bits)) == Tri::yes, tag + ": weight not below 1");

    for (const auto& s : all_subsets(g.n())) {
      if (sum_inside(g, s) < 1) continue;
      ++members_checked;
      bool some = false;
      for (unsigned k = 1; k <= 3 && !some; ++k) {
        Rational acc = 0;
        for (const auto& e : g.entries())
          if (e.set.count() == k && e.set.is_subset_of(s)) acc += e.weight;
        some = acc >= Rational(1, 1L << k);
      }
      t.expect(some, tag + ": pigeonhole fails at " + s.str());
    }
  }
  return t.outcome(std::to_string(built) + " mixed fixtures, weight < 1 at loss 4L, pigeonhole on " +
                   std::to_string(members_checked) + " members");
}

/// Brute-force <g>_{J,L} membership for g = 1/r on a linear k-graph, with a
/// relative margin; nullopt when the comparison is too close to call.
std::optional<bool> jl_member(const std::vector<SubsetMask>& edges, unsigned k, double r, double J, double L,
                              const SubsetMask& s) {
  std::vector<unsigned> deg(s.width(), 0);
  double inside = 0;
  for (const auto& e : edges) {
    if (e.is_subset_of(s)) inside += 1;
    e.for_each([&](unsigned x) { ++deg[x]; });
  }
  const double lhs = inside / r;
  if (lhs < J * (1 - 1e-12)) return false;
  double degsum = 0;
  s.for_each([&](unsigned x) { degsum += deg[x] / r; });
  const double total = static_cast<double>(edges.size()) / r;
  const double rhs = L / (4 * std::exp(1.0) * k) * std::pow(total, (1.0 - k) / k) * degsum;
  if (std::abs(lhs - rhs) <= 1e-9 * std::max(lhs, rhs)) return std::nullopt;
  return lhs > rhs;
}

/// Every structural requirement on a star witness, from scratch.
std::string witness_problem(const StarSystem& sys, const StarWitness& w, const SubsetMask& s, unsigned ell,
                            double L, double sum_g) {
  const unsigned k = sys.k();
  if (sys.levels().size() != ell) return "level count";
  for (unsigned i = 1; i <= ell; ++i) {
    const auto& lv = sys.levels()[i - 1];
    const long b = 2 * static_cast<long>(ell - i) - static_cast<long>(std::min(i - 1, ell - i));
    if (lv.edges != (1u << (i - 1)) || lv.b != (b >= 0 ? (1u << b) : 0u)) return "level parameters";
  }
  if (w.level >= ell) return "level index";
  const unsigned li = sys.levels()[w.level].edges;
  if (w.stars.size() != sys.levels()[w.level].b) return "star count";
  SubsetMask used(sys.n());
  for (const auto& st : w.stars) {
    if (st.edges.size() != li) return "star size";
    const double thr = L / (8 * std::exp(1.0) * k) * sys.degree(st.center) * std::pow(sum_g, (1.0 - k) / k);
    if (li < thr * (1 - 1e-12)) return "center below its degree threshold";
    SubsetMask verts(sys.n());
    for (std::size_t a = 0; a < st.edges.size(); ++a) {
      const SubsetMask& e = sys.edges()[st.edges[a]];
      if (!e.test(st.center) || !e.is_subset_of(s)) return "edge outside S or missing the center";
      for (std::size_t b = a + 1; b < st.edges.size(); ++b) {
        SubsetMask both = e & sys.edges()[st.edges[b]];
        if (both.count() != 1 || !both.test(st.center)) return "edges meet away from the center";
      }
      verts |= e;
    }
    if (verts.count() != (k - 1) * li + 1) return "star vertex count";
    if (verts.intersects(used)) return "stars not disjoint";
    used |= verts;
  }
  return {};
}

unsigned expected_ell(const Rational& J, const Rational& r, unsigned k) {
  const Rational x = J * r / static_cast<long>(k - 1);
  unsigned ell = 0;
  while (x > Rational(boost::multiprecision::pow(BigInt(2), 2 * ell + 5))) ++ell;
  return ell;
}

Outcome star_machinery() {
  Tally t;
  const Real big_L = Real(1024) * Real::e() * Real::e();
  std::size_t witnesses = 0, exact_bounds = 0, vacuous = 0, small_branch = 0;

  // Fano plane: J r <= 7 < 2^5 k, so the support branch applies
  {
    auto fano = fano_plane();
    for (const Rational& w : {Rational(1, 7), Rational(1, 2)}) {
      auto g = WeightFunction::constant(GroundSet(7), fano, w);
      auto res = linear_constant_cover(g, unit_weight_p(g), Rational(1), big_L);
      t.expect(res.small_branch, "Fano: support branch expected");
      ++small_branch;
      auto rep = verify_certificate(res.certificate, {}, CoverageMode::exhaustive());
      t.expect(rep.valid, "Fano: certificate");
      const Interval x = (unit_weight_p(g) / big_L).eval(bits);
      Interval exact_w = Interval::of(0, bits);
      for (const auto& m : res.certificate.cover.materialize()) exact_w = exact_w + x.pow(m.count());
      t.expect(certify_le(exact_w, pow(Real(1) / big_L, Real(Rational(3, 2))), 2048) == Tri::yes, "Fano: L^(-k/2)");
      ++exact_bounds;
      bool any = false;
      for (const auto& s : all_subsets(7)) {
        auto m = jl_member(fano, 3, static_cast<double>(1 / w), 1, big_L.eval(64).mid_double(), s);
        any |= m.value_or(true);
      }
      t.expect(!any && res.vacuous == Tri::yes, "Fano: vacuity");
      vacuous += !any;
      // at L = 4 the restricted up-set is not empty; its members contain a line
      for (const auto& s : all_subsets(7)) {
        auto m = jl_member(fano, 3, static_cast<double>(1 / w), 1, 4, s);
        if (!m || !*m) continue;
        bool has_line = false;
        for (const auto& e : fano) has_line |= e.is_subset_of(s);
        t.expect(has_line, "Fano: member without a line");
      }
    }
  }

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::string tag = "seed " + std::to_string(seed);
    // (a) large instances: restricted up-set members and greedy witnesses
    const unsigned n = 30 + 10 * static_cast<unsigned>(seed % 3);
    auto edges = random_linear_hypergraph(n, 3, 400, seed);
    t.expect(is_linear(edges), tag + ": not linear");
    const Rational r(static_cast<long>(edges.size() * 9 / 10));
    auto g = WeightFunction::constant(GroundSet(n), edges, 1 / r);
    const Rational J(1);
    const Real L(Rational(1, 8));
    const unsigned ell = expected_ell(J, r, 3);
    auto sys = make_star_system(g, star_parameters(3, J, r), L);
    Rng rng(seed);
    for (int trial = 0; trial < 40; ++trial) {
      SubsetMask s = SubsetMask::full(n);
      for (int drop = 0; drop < trial % 4; ++drop) s.reset(static_cast<unsigned>(rng.below(n)));
      auto m = jl_member(edges, 3, static_cast<double>(r), 1, 0.125, s);
      if (!m || !*m) continue;
      auto w = star_greedy_witness(g, s, J, L);
      if (!w) {
        t.expect(false, tag + ": no witness for a member");
        continue;
      }
      const std::string problem = witness_problem(*sys, *w, s, ell, 0.125, static_cast<double>(g.total()));
      t.expect(problem.empty(), tag + ": " + problem);
      ++witnesses;
    }

    // (b) instances inside the enumeration budget at L = 2^10 e^2
    auto small = random_linear_hypergraph(16, 3, 24, seed);
    auto heavy = WeightFunction::constant(GroundSet(16), small, Rational(100));
    const Rational bigJ(100000);
    auto res = linear_constant_cover(heavy, unit_weight_p(heavy), bigJ, big_L);
    t.expect(!res.small_branch, tag + ": star branch expected");
    const Interval x = (unit_weight_p(heavy) / big_L).eval(bits);
    Interval exact_w = Interval::of(0, bits);
    for (const auto& mem : res.certificate.cover.materialize()) exact_w = exact_w + x.pow(mem.count());
    const Real bound = pow(Real(1) / big_L, sqrt(Real(bigJ / 100)) / Real(128));
    t.expect(certify_le(exact_w, bound, 2048) == Tri::yes, tag + ": star weight above (1/L)^(sqrt(Jr)/2^7)");
    ++exact_bounds;
    // J r = 1000 needs 10^5 / 100 edges inside S; there are at most 40
    t.expect(res.vacuous == Tri::yes && small.size() < 1000, tag + ": vacuity");
    t.expect(verify_certificate(res.certificate).valid, tag + ": vacuous certificate");
    ++vacuous;

    auto light = WeightFunction::constant(GroundSet(16), small, Rational(1, static_cast<long>(small.size())));
    auto sb = linear_constant_cover(light, unit_weight_p(light), Rational(1), big_L);
    t.expect(sb.small_branch, tag + ": support branch expected");
    const Interval xl = (unit_weight_p(light) / big_L).eval(bits);
    Interval wl = Interval::of(0, bits);
    for (const auto& mem : sb.certificate.cover.materialize()) wl = wl + xl.pow(mem.count());
    t.expect(certify_le(wl, pow(Real(1) / big_L, Real(Rational(3, 2))), 2048) == Tri::yes, tag + ": L^(-k/2)");
    t.expect(verify_certificate(sb.certificate, {}, CoverageMode::exhaustive()).valid, tag + ": support certificate");
    ++small_branch;
    ++exact_bounds;
  }
  t.expect(witnesses >= 100, "only " + std::to_string(witnesses) + " witnesses");
  return t.outcome(std::to_string(witnesses) + " greedy witnesses, " + std::to_string(exact_bounds) +
                   " exact weight bounds, " + std::to_string(small_branch) + " support-branch runs, " +
                   std::to_string(vacuous) + " vacuous cases certified");
}

Outcome nearly_linear_pipeline() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  InstanceSpec spec;
  spec.kind = InstanceKind::k_ap;
  spec.n = 30;
  spec.k = 3;
  spec.seed = 1;
  auto g = weight_function_from_json(generate_instance(spec).at("weights"));
  const unsigned c = 2;
  t.expect(max_codegree(g.support()) <= c * c * c, "codegree above c^k");
  auto res = nearly_linear_cover(g, unit_weight_p(g), c);
  const Real C = Real(4) * Real(Rational(100000L * 4096L)) * Real::e() * Real::e();
  t.expect(same_real(res.certificate.loss, C * Real(static_cast<long>(c * c))), "loss is not C c^2");

  auto rep = verify_certificate(res.certificate, {}, CoverageMode::minimal());
  const bool mode_ok = rep.mode_used.kind == CoverageKind::minimal ||
                       (rep.mode_used.kind == CoverageKind::sampled && rep.mode_used.count == 10000);
  t.expect(mode_ok, "coverage mode " + to_string(rep.mode_used));
  t.expect(rep.valid, "pipeline certificate does not verify");

  const Real L = Real(10 * 1024) * Real::e() * Real::e();
  const Interval coef = (L / (Real(12) * Real::e()) * pow(Real(g.total()), Real(Rational(-2, 3)))).eval(bits);
  std::vector<Rational> deg(g.n(), 0);
  for (const auto& e : g.entries()) e.set.for_each([&](unsigned x) { deg[x] += e.weight; });
  std::size_t checked = 0;
  for_each_target_element(g, CoverTarget::upset(), rep.mode_used, {}, [&](const SubsetMask& s) {
    const Rational lhs = sum_inside(g, s);
    if (lhs < 1) return true;
    Rational d = 0;
    s.for_each([&](unsigned x) { d += deg[x]; });
    const Interval rhs = coef * Interval::of(d, bits);
    const bool in_jl = certainly_le(rhs, Interval::of(lhs, bits)) == Tri::yes;
    const bool in_vl = certainly_le(Interval::of(1, bits), rhs) == Tri::yes;
    t.expect(in_jl || in_vl, "V_L split fails at " + s.str());
    t.expect(vl_split_holds(g, L, s), "library V_L split disagrees at " + s.str());
    ++checked;
    return true;
  });
  const double secs = seconds_since(t0);
  t.expect(secs < 600, "runtime " + fmt(secs) + " s");
  return t.outcome("k = 3 progressions on 30 points, c = 2, " + std::to_string(res.classes) + " colour classes, mode " +
                   to_string(rep.mode_used) + ", V_L split on " + std::to_string(checked) + " sets, " + fmt(secs) + " s");
}

Outcome halving_optimality() {
  Tally t;
  std::string nodes;
  for (unsigned n : {8u, 10u, 12u})
    for (unsigned k : {1u, 2u}) {
      auto g = halving_example(n, k);
      auto f = upset_family(g);
      auto prog = CoverProgram::with_variables(f, g.support());
      // every candidate costs p^k, so weight below (n/2k) p^k means fewer than n/2k sets
      const Rational p(1, 2);
      const Rational cutoff = Rational(static_cast<long>(n), 2 * k) * pow(p, static_cast<long>(k));
      auto below = solve_integral_below(prog, p, cutoff);
      const std::string tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
      t.expect(!below.solution, tag + ": a cover with fewer than n/2k sets");
      nodes += (nodes.empty() ? "" : " ") + std::to_string(below.nodes);
    }
  return t.outcome("no cover inside supp(g) with fewer than n/(2k) sets for (n,k) in {8,10,12}x{1,2}; search nodes " +
                   nodes);
}

Outcome mutation_tests() {
  Tally t;
  const fs::path dir = fs::path(EXPTHRESH_FIXTURES) / "certificates";
  const fs::path scratch = fs::temp_directory_path() / ("expthresh_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(scratch);
  std::size_t fixtures = 0, mutants = 0;
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  auto verify = [](const fs::path& p) {
    std::ostringstream sink;
    return cli::run({"verify", p.string()}, sink);
  };
  for (const auto& path : paths) {
    ++fixtures;
    const std::string name = path.stem().string();
    t.expect(verify(path) == cli::ok, name + ": fixture does not verify");
    const Json cert = Json::parse(std::ifstream(path));
    const std::size_t members = testing::cover_size(cert);
    t.expect(members > 0, name + ": empty cover");
    for (std::size_t i = 0; i < members; ++i) {
      auto out = scratch / (name + "_drop" + std::to_string(i) + ".json");
      testing::write_file(out.string(), testing::drop_cover_member(cert, i));
      t.expect(verify(out) == cli::invalid_certificate, name + ": dropping member " + std::to_string(i) + " verifies");
      ++mutants;
    }
    auto out = scratch / (name + "_bound.json");
    testing::write_file(out.string(), testing::lower_claimed_bound(cert));
    t.expect(verify(out) == cli::invalid_certificate, name + ": lowered bound verifies");
    ++mutants;
  }
  fs::remove_all(scratch);
  t.expect(fixtures >= 5, "too few certificate fixtures");
  return t.outcome(std::to_string(fixtures) + " certificate fixtures, " + std::to_string(mutants) +
                   " mutants, each rejected with exit 3");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"threshold chain", threshold_chain},
      {"oracle equivalence", oracle_equivalence},
      {"LP duality", lp_duality},
      {"singleton construction", singleton_construction},
      {"randomized construction", randomized_construction},
      {"volume cover", volume_cover_grid},
      {"power trick", power_trick},
      {"uniformization", uniformization},
      {"star machinery", star_machinery},
      {"nearly-linear pipeline", nearly_linear_pipeline},
      {"halving optimality", halving_optimality},
      {"certificate mutations", mutation_tests},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << i + 1 << "  " << criteria[i].first << ": "
              << o.detail << " [" << fmt(seconds_since(t0)) << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
