#include "support.hpp"

#include "expthresh/constructions/basic.hpp"
#include "expthresh/constructions/linear.hpp"
#include "expthresh/constructions/reductions.hpp"
#include "expthresh/errors.hpp"
#include "expthresh/instances/instances.hpp"
#include "expthresh/upset.hpp"

#include <cmath>

using namespace testing;

namespace {

WeightFunction singletons(unsigned n, const std::vector<Rational>& w) {
  std::vector<WeightEntry> es;
  for (unsigned x = 0; x < n; ++x)
    if (w[x] != 0) es.push_back({set_of(n, {x}), w[x]});
  return WeightFunction(GroundSet(n), es);
}

bool valid_exhaustive(const Certificate& cert) {
  auto rep = verify_certificate(cert, {}, CoverageMode::exhaustive());
  return rep.valid && rep.mode_used.kind == CoverageKind::exhaustive;
}

Rational codegree_of(const std::vector<SubsetMask>& sets) { return Rational(static_cast<long>(max_codegree(sets))); }

/// Witness invariants checked from scratch: sizes, shared center, pairwise
/// intersections exactly at the center, disjoint stars, thresholds.
bool witness_ok(const StarSystem& sys, const StarWitness& w, const SubsetMask& s) {
  if (w.level >= sys.levels().size() || w.stars.size() != sys.levels()[w.level].b) return false;
  const unsigned li = sys.levels()[w.level].edges;
  SubsetMask used(sys.n());
  for (const auto& st : w.stars) {
    if (st.edges.size() != li || !sys.meets_threshold(st.center, li)) return false;
    SubsetMask verts(sys.n());
    for (std::size_t a = 0; a < st.edges.size(); ++a) {
      const SubsetMask& e = sys.edges()[st.edges[a]];
      if (!e.test(st.center) || !e.is_subset_of(s)) return false;
      for (std::size_t b = a + 1; b < st.edges.size(); ++b) {
        SubsetMask both = e & sys.edges()[st.edges[b]];
        if (both.count() != 1 || !both.test(st.center)) return false;
      }
      verts |= e;
    }
    if (verts.count() != (sys.k() - 1) * li + 1 || verts.intersects(used)) return false;
    used |= verts;
  }
  return true;
}

}  // namespace

TEST_CASE("singleton cover examples") {
  auto g = singletons(4, {Q("1/2"), Q("1/2"), Q("1/2"), Q("1/2")});
  auto cert = singleton_cover(g, Real(Q("1/2")));
  CHECK(cert.cover.level_size() == 2);
  CHECK(cert.cover.order() == std::vector<unsigned>{0, 1, 2, 3});
  CHECK(valid_exhaustive(cert));
  // j = 1 gives two singletons, j = 2 all six pairs of the top four
  auto members = cert.cover.materialize();
  CHECK(members.size() == 2 + 6 + 4 + 1);
  const Interval x = Interval::of(Q("1/3"), 128);
  Interval direct = Interval::of(0, 128);
  for (const auto& m : members) direct = direct + x.pow(m.count());
  CHECK(same_value(direct, singleton_weight_closed_form(4, 2, x)));
  CHECK(same_value(direct, cert.cover.weight(x).value));

  auto one = singleton_cover(singletons(1, {Q("1")}), Real(1));
  CHECK(one.cover.materialize() == std::vector<SubsetMask>{set_of(1, {0})});
  auto rep = verify_certificate(one);
  CHECK(rep.valid);
  CHECK(encloses(rep.weight, 1 / (4 * std::exp(1.0))));
  CHECK(one.loss.str().find('e') != std::string::npos);

  auto ties = singleton_cover(singletons(3, {Q("1/4"), Q("1/2"), Q("1/2")}), Real::poly_root({0, Q("5/4")}, 1));
  CHECK(ties.cover.order() == std::vector<unsigned>{1, 2, 0});

  CHECK_THROWS_AS(singleton_cover(g, Real(Q("1/3"))), Error);
}

TEST_CASE("singleton levels meet every member of <g>") {
  Rng rng(11);
  for (int round = 0; round < 40; ++round) {
    const unsigned n = 3 + static_cast<unsigned>(rng.below(7));
    std::vector<Rational> w(n);
    for (auto& v : w) v = Rational(static_cast<long>(rng.below(9)), 8);
    if (std::all_of(w.begin(), w.end(), [](const Rational& v) { return v == 0; })) w[0] = 1;
    auto g = singletons(n, w);
    if (g.total() < 1) continue;
    auto order = singleton_order(g);
    const unsigned a = static_cast<unsigned>(ceil_of(g.total()));
    for (auto word : members(n, [&](const SubsetMask& s) { return member_upset(g, s); })) {
      SubsetMask s = SubsetMask::from_word(n, word);
      bool some_level = false;
      for (unsigned j = 1; j <= n && !some_level; ++j) {
        unsigned top = std::min(j * a, n), hit = 0;
        for (unsigned t = 0; t < top; ++t) hit += s.test(order[t]);
        some_level = hit >= j;
      }
      CHECK(some_level);
    }
    auto cert = singleton_cover(g, unit_weight_p(g));
    CHECK(valid_exhaustive(cert));
  }
}

TEST_CASE("volume cover examples") {
  SubsetMask v = SubsetMask::full(10);
  const Real p(Q("1/2"));
  auto fam = volume_cover(v, p, Real(5) * Real::e());
  CHECK(fam.volume_t() == 1);
  auto w = fam.weight((p / (Real(5) * Real::e())).eval(128));
  CHECK(encloses(w.value, 1 / std::exp(1.0)));

  // (e p / L)|V| = 2 exactly
  CHECK(volume_level(SubsetMask::full(4), p, Real::e()) == 2);
  auto exact = volume_cover(SubsetMask::full(4), p, Real::e());
  CHECK(exact.materialize().size() == 6);

  CHECK_THROWS_WITH_AS(volume_level(v, Real(0), Real(1)), doctest::Contains("0"), Error);
  try {
    volume_level(v, Real(1), Real(1));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_family);
  }
  try {
    volume_level(v, Real(0), Real(1));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_threshold);
  }
}

TEST_CASE("volume weight stays within the binomial bound") {
  Rng rng(5);
  for (int round = 0; round < 30; ++round) {
    const unsigned m = 2 + static_cast<unsigned>(rng.below(12));
    const Rational p(static_cast<long>(1 + rng.below(8)), 8);
    const Rational L(static_cast<long>(3 + rng.below(20)));
    unsigned t = 0;
    try {
      t = volume_level(SubsetMask::full(m), Real(p), Real(L));
    } catch (const Error&) {
      continue;
    }
    CHECK(Rational(static_cast<long>(t)) * L >= p * static_cast<long>(m) * 2);  // t >= (e p / L) m > (2 p / L) m
    auto w = volume_cover(SubsetMask::full(m), Real(p), Real(L)).weight(Interval::of(p / L, 128)).value;
    CHECK(certify_le(w, Real(1), 512) == Tri::yes);
  }
}

TEST_CASE("constant density cover") {
  std::vector<SubsetMask> pairs;
  for (unsigned a = 0; a < 5; ++a)
    for (unsigned b = a + 1; b < 5; ++b) pairs.push_back(set_of(5, {a, b}));
  auto g = WeightFunction::constant(GroundSet(5), pairs, Q("1/10"));
  CHECK(density_level(2, Q("1/10")) == 5);
  auto cert = constant_density_cover(g, Real(1), Real::e() * Real::e());
  CHECK(cert.provenance.parameters["s"] == 5);
  CHECK(valid_exhaustive(cert));

  // k = 1, weight 1/m on m singletons: members hold all m of them
  auto single = WeightFunction::constant(GroundSet(4), {set_of(4, {0}), set_of(4, {1}), set_of(4, {2})}, Q("1/3"));
  CHECK(density_level(1, Q("1/3")) == 3);
  auto ms = members(4, [&](const SubsetMask& s) { return member_upset(single, s); });
  for (auto w : ms) CHECK((SubsetMask::from_word(4, w) & set_of(4, {0, 1, 2})).count() == 3);
  auto c1 = constant_density_cover(single, Real(1), Real(3) * Real::e(), SubsetMask::full(4) - set_of(4, {3}));
  CHECK(valid_exhaustive(c1));

  auto sparse = WeightFunction::constant(GroundSet(5), {pairs[0]}, Q("1"));
  try {
    constant_density_cover(sparse, Real(1), Real(10), SubsetMask::full(5));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition_violated);
  }
}

TEST_CASE("randomized cover") {
  std::vector<SubsetMask> matching;
  for (unsigned i = 0; i < 5; ++i) matching.push_back(set_of(10, {2 * i, 2 * i + 1}));
  auto g = WeightFunction::constant(GroundSet(10), matching, Q("1/5"));
  auto res = randomized_cover(g, Real(1), 3);
  CHECK(res.attempts >= 1);
  CHECK(res.certificate.cover.materialize() == matching);

  std::vector<SubsetMask> all;
  for (unsigned a = 0; a < 10; ++a)
    for (unsigned b = a + 1; b < 10; ++b) all.push_back(set_of(10, {a, b}));
  auto dense = WeightFunction::constant(GroundSet(10), all, Q("1/45"));
  const auto minimal = minimal_elements_of_upset(dense);
  const Real p = unit_weight_p(dense);
  int accepted = 0;
  double sum = 0, sum_sq = 0;
  const int seeds = 200;
  for (int seed = 0; seed < seeds; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    auto d = randomized_draw(dense, p, rng, minimal);
    accepted += d.covers && d.weight_ok == Tri::yes;
    const double w = d.weight.upper_double();
    sum += w;
    sum_sq += w * w;
  }
  CHECK(accepted >= seeds / 2);
  const double mean = sum / seeds, se = std::sqrt((sum_sq / seeds - mean * mean) / seeds);
  const double L = 4 * std::sqrt(10.0);
  CHECK(mean <= 11 / (L * L) + 3 * se);

  auto run = randomized_cover(dense, p, 7);
  auto again = randomized_cover(dense, p, 7);
  CHECK(run.attempts == again.attempts);
  CHECK(run.certificate.cover.materialize() == again.certificate.cover.materialize());
  CHECK(verify_certificate(run.certificate, {}, CoverageMode::exhaustive()).valid);

  try {
    randomized_cover(dense, p, 7, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::retries_exhausted);
  }
}

TEST_CASE("blow-up") {
  auto g = WeightFunction(GroundSet(2), {{set_of(2, {0, 1}), Q("1/2")}});
  auto b = blow_up(g, 2);
  CHECK(b.n() == 4);
  CHECK(b.entries().size() == 2);
  CHECK(b.weight_of(set_of(4, {0, 1})) == Q("1/2"));
  CHECK(b.weight_of(set_of(4, {2, 3})) == Q("1/2"));
  CHECK(blow_up(g, 1).entries().size() == 1);

  Rng rng(2);
  for (int round = 0; round < 20; ++round) {
    auto h = random_weight_function(6, 2, rng.next(), 5);
    const unsigned m = 1 + static_cast<unsigned>(rng.below(4)), c = 1 + static_cast<unsigned>(rng.below(3));
    const Rational p(static_cast<long>(1 + rng.below(7)), 8);
    auto lhs = weight_of_function(blow_up(h, m), Interval::of(p / c, 128));
    auto rhs = Interval::of(Rational(static_cast<long>(m), static_cast<long>(c * c)), 128) *
               weight_of_function(h, Interval::of(p, 128));
    CHECK(same_value(lhs, rhs));
    CHECK(blow_up(h, m).total() == h.total() * m);
  }
  Budgets tight;
  tight.width_cap = 10;
  CHECK_THROWS_AS(blow_up(g, 6, tight), Error);
}

TEST_CASE("power trick") {
  // k = 1, two copies of a single point
  auto g = WeightFunction(GroundSet(1), {{set_of(1, {0}), Q("1")}});
  auto res = power_trick_extract(g, Real(1), 2, exact_oracle_builder());
  CHECK(res.copies == 2);
  CHECK(res.certificate.cover.materialize() == std::vector<SubsetMask>{set_of(1, {0})});
  CHECK(certify_le(res.copy_weights[res.copy], Real(Q("1/2")), 512) == Tri::yes);
  CHECK(verify_certificate(res.certificate).valid);

  // c = 1 keeps the inner family
  auto pair = WeightFunction(GroundSet(3), {{set_of(3, {0, 1}), Q("1/2")}, {set_of(3, {1, 2}), Q("1/2")}});
  auto same = power_trick_extract(pair, Real(1), 1, exact_oracle_builder());
  CHECK(same.copies == 1);
  CHECK(same.certificate.cover.materialize() == same.inner.cover.materialize());

  // sum over copies <= 1, so the lightest is at most 1/m
  auto four = power_trick_extract(pair, Real(1), 2, exact_oracle_builder());
  CHECK(four.copies == 4);
  Interval total = Interval::of(0, 128);
  for (const auto& w : four.copy_weights) total = total + w;
  CHECK(certify_le(total, Real(1), 512) == Tri::yes);
  CHECK(certify_le(four.copy_weights[four.copy], Real(Q("1/4")), 512) == Tri::yes);
  CHECK(valid_exhaustive(four.certificate));

  CoverBuilder broken = [](const WeightFunction& h, const Real& ph) {
    Certificate c;
    c.g = h;
    c.p = ph;
    c.cover = CoverFamily::explicit_sets(h.n(), {});
    return c;
  };
  try {
    power_trick_extract(pair, Real(1), 2, broken);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::inner_certificate_invalid);
  }
}

TEST_CASE("uniformize") {
  auto g = WeightFunction(GroundSet(3), {{set_of(3, {0}), Q("1/2")}, {set_of(3, {1, 2}), Q("1/2")}});
  auto res = uniformize_cover(g, Real(1), exact_oracle_builder());
  CHECK(res.sizes == std::vector<unsigned>{1, 2});
  CHECK(res.classes[0].inner.g.n() == 6);
  CHECK(valid_exhaustive(res.certificate));
  auto rep = verify_certificate(res.certificate);
  CHECK(certify_le(rep.weight, Real(1), 512) == Tri::yes);
  CHECK(rep.weight.upper_double() < 1);
  for (auto w : members(3, [&](const SubsetMask& s) { return member_upset(g, s); }))
    CHECK(cardinality_pigeonhole(g, SubsetMask::from_word(3, w)));

  auto uniform = WeightFunction(GroundSet(3), {{set_of(3, {0, 1}), Q("1/2")}, {set_of(3, {1, 2}), Q("1/2")}});
  auto one = uniformize_cover(uniform, Real(1), exact_oracle_builder());
  CHECK(one.sizes == std::vector<unsigned>{2});
  CHECK(valid_exhaustive(one.certificate));

  CHECK(0.5 + 0.25 + 0.125 < 1.0);
}

TEST_CASE("uniformize on random weight functions") {
  Rng rng(21);
  int built = 0;
  for (int round = 0; round < 12; ++round) {
    auto g = random_weights(rng, 4, 1, 2, 4);
    if (g.total() < 1) continue;
    const Real p = unit_weight_p(g);
    auto res = uniformize_cover(g, p, exact_oracle_builder());
    CHECK(valid_exhaustive(res.certificate));
    for (const auto& s : minimal_elements_of_upset(g)) CHECK(cardinality_pigeonhole(g, s));
    ++built;
  }
  CHECK(built >= 6);
}

TEST_CASE("dyadic classes") {
  auto g = WeightFunction(GroundSet(4), {{set_of(4, {0, 1}), Q("3/10")}, {set_of(4, {2, 3}), Q("1/4")}});
  auto cls = dyadic_decompose(g);
  REQUIRE(cls.size() == 2);
  CHECK(cls[0].index == 1);
  CHECK(cls[0].g_i.weight_of(set_of(4, {0, 1})) == 1);
  CHECK(cls[1].index == 2);
  CHECK(cls[1].g_i.weight_of(set_of(4, {2, 3})) == Q("1/4"));
  CHECK(cls[0].ell == Q("1") / Q("11/20"));
  CHECK(cls[0].J == 1);
  CHECK(cls[1].r == cls[1].ell * 4 / 10);
  for (const auto& c : cls) CHECK(scaled_class(c).constant_value() == 1 / c.r);

  Rng rng(8);
  for (int round = 0; round < 30; ++round) {
    auto h = random_weight_function(7, 3, rng.next(), 10, WeightLaw{64});
    auto cs = dyadic_decompose(h);
    Rational ell_sum = 0;
    for (const auto& c : cs) ell_sum += c.ell;
    CHECK(ell_sum <= 4);
    for (const auto& e : h.entries()) {
      Rational sum = 0;
      for (const auto& c : cs) sum += c.g_i.weight_of(e.set);
      CHECK(e.weight <= sum);
      CHECK(sum <= 4 * e.weight);
    }
  }
}

TEST_CASE("star parameters") {
  auto p = star_parameters(2, Q("100"), Q("1"));
  CHECK(p.ell == 1);
  CHECK(p.L == std::vector<unsigned>{1});
  CHECK(p.b == std::vector<unsigned>{1});
  CHECK(star_parameters(2, Q("33"), Q("2")).ell == 1);
  CHECK(star_parameters(34, Q("1089"), Q("1")).ell == 1);  // J r / (k-1) = 33

  auto p3 = star_parameters(3, Q("1000"), Q("1"));  // 500 in (2^7, 2^9]
  CHECK(p3.ell == 2);
  CHECK(p3.L == std::vector<unsigned>{1, 2});
  CHECK(p3.b == std::vector<unsigned>{4, 1});

  // the intervals (2^(2l+3), 2^(2l+5)] tile (2^5, oo); k = 2 admits J r > 2^6
  for (long v = 65; v < 20000; v += 7) {
    auto q = star_parameters(2, Rational(v), Rational(1));
    CHECK(Rational(v) > Rational(BigInt(1) << (2 * q.ell + 3)));
    CHECK(Rational(v) <= Rational(BigInt(1) << (2 * q.ell + 5)));
    for (unsigned i = 1; i <= q.ell; ++i) {
      CHECK(q.L[i - 1] == 1u << (i - 1));
      CHECK(q.b[i - 1] >= 1);
    }
  }
  try {
    star_parameters(3, Q("96"), Q("1"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::small_jr_branch);
  }
}

TEST_CASE("greedy star witness") {
  // one edge at a center meeting its threshold
  auto one = WeightFunction::constant(GroundSet(3), {set_of(3, {0, 1, 2})}, Q("1"));
  StarParameters p1{3, 1, {1}, {1}};
  auto sys = make_star_system(one, p1, Real(1));
  auto w = sys->greedy_witness(SubsetMask::full(3));
  REQUIRE(w);
  CHECK(w->stars.size() == 1);
  CHECK(w->stars[0].edges == std::vector<unsigned>{0});
  CHECK(witness_ok(*sys, *w, SubsetMask::full(3)));

  // Fano plane with g = 1/2 and forced levels: every center has degree 3
  auto fano = WeightFunction::constant(GroundSet(7), fano_plane(), Q("1/2"));
  StarParameters pf{3, 2, {1, 2}, {1, 1}};
  auto fs = make_star_system(fano, pf, Real(1));
  auto fw = fs->greedy_witness(SubsetMask::full(7));
  REQUIRE(fw);
  CHECK(fs->check_witness(*fw, SubsetMask::full(7)).empty());
  CHECK(witness_ok(*fs, *fw, SubsetMask::full(7)));
  for (const auto& st : fw->stars) CHECK(fs->incident(st.center).size() == 3);

  // outside <g>: no star at all
  CHECK(!fs->greedy_witness(set_of(7, {0, 1})));
  CHECK(!fs->greedy_witness(set_of(7, {0, 3, 6})));
}

TEST_CASE("greedy witness for restricted up-set members") {
  // members need more than 2^5 k edges inside S, so the instances are large
  // and S ranges over the full set and random large subsets
  int confirmed = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const unsigned n = seed == 3 ? 50 : 30;
    auto edges = random_linear_hypergraph(n, 3, 400, seed);
    REQUIRE(is_linear(edges));
    const Rational r(static_cast<long>(edges.size() * 9 / 10));
    REQUIRE(r > 96);
    auto g = WeightFunction::constant(GroundSet(n), edges, 1 / r);
    const Rational J(1);
    const Real L(Q("1/8"));
    auto sys = make_star_system(g, star_parameters(3, J, r), L);
    Rng rng(seed);
    for (int trial = 0; trial < 40; ++trial) {
      SubsetMask s = SubsetMask::full(n);
      for (int drop = 0; drop < trial % 4; ++drop) s.reset(static_cast<unsigned>(rng.below(n)));
      if (!member_upset_JL(g, J, L, s)) continue;
      auto w = star_greedy_witness(g, s, J, L);
      REQUIRE(w);
      CHECK(witness_ok(*sys, *w, s));
      CHECK(sys->check_witness(*w, s).empty());
      ++confirmed;
    }
  }
  CHECK(confirmed >= 20);
}

TEST_CASE("linear constant cover, support branch") {
  auto fano = WeightFunction::constant(GroundSet(7), fano_plane(), Q("1/2"));
  const Real p = unit_weight_p(fano);
  const Real L = Real(1024) * Real::e() * Real::e();
  auto res = linear_constant_cover(fano, p, Rational(1), L);
  CHECK(res.small_branch);
  CHECK(res.certificate.cover.materialize() == fano.support());
  auto rep = verify_certificate(res.certificate);
  CHECK(rep.valid);
  // |supp| (p/L)^3 = r / L^3 with r = 2
  CHECK(same_value(rep.weight, (Real(2) / pow(L, 3)).eval(128)));
  CHECK(certify_le(rep.weight, pow(Real(1) / L, Real(Q("3/2"))), 512) == Tri::yes);
  CHECK(res.vacuous == Tri::yes);

  CHECK_THROWS_AS(linear_constant_cover(WeightFunction::constant(GroundSet(4), {set_of(4, {0, 1, 2}), set_of(4, {0, 1, 3})}, Q("1/2")),
                                        Real(1), Rational(1), L),
                  Error);
}

TEST_CASE("linear constant cover, star branch") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto edges = random_linear_hypergraph(16, 3, 24, seed);
    auto g = WeightFunction::constant(GroundSet(16), edges, Q("100"));
    const Real p = unit_weight_p(g);
    const Real L = Real(1024) * Real::e() * Real::e();
    const Rational J(100000);
    auto res = linear_constant_cover(g, p, J, L);
    REQUIRE(!res.small_branch);
    REQUIRE(res.params);
    CHECK(res.params->ell == 2);
    auto rep = verify_certificate(res.certificate);
    CHECK(rep.valid);
    CHECK(res.vacuous == Tri::yes);
    // exact enumerated weight <= generic upper bound <= stated bound
    const Interval x = (p / L).eval(256);
    const auto& sys = res.certificate.cover.star_system();
    Interval exact = Interval::of(0, 256);
    for (const auto& m : res.certificate.cover.materialize()) exact = exact + x.pow(m.count());
    auto upper = sys.weight_upper_bound(x);
    CHECK(certainly_le(exact, upper) != Tri::no);
    CHECK(certify_le(upper, res.certificate.bound, 512) == Tri::yes);
  }
}

TEST_CASE("weight classes") {
  // one class: all weights in (1/4, 1]
  auto edges = random_linear_hypergraph(9, 3, 6, 4);
  auto one = random_weights_on(9, edges, 3, WeightLaw{2});
  for (const auto& e : one.entries()) REQUIRE(e.weight > Q("1/4"));
  auto cls = dyadic_decompose(one);
  REQUIRE(cls.size() == 1);
  CHECK(cls[0].ell >= 1);
  CHECK(cls[0].ell <= 4);
  CHECK(cls[0].J == std::max(Rational(1), Rational(1 / cls[0].ell)));

  // two classes: pigeonhole on every member of <g>_{1,L} for a small L
  std::vector<WeightEntry> es;
  for (std::size_t i = 0; i < edges.size(); ++i) es.push_back({edges[i], i % 2 ? Q("1/8") : Q("3/4")});
  WeightFunction two(GroundSet(9), es);
  auto cs = dyadic_decompose(two);
  REQUIRE(cs.size() == 2);
  for (const Rational& Lq : {Q("1/10"), Q("1"), Q("5")}) {
    const Real L(Lq);
    int checked = 0;
    for (auto w : members(9, [&](const SubsetMask& s) { return member_upset_JL(two, Rational(1), L, s); })) {
      CHECK(weight_class_pigeonhole(two, cs, L, SubsetMask::from_word(9, w)));
      ++checked;
    }
    if (Lq == Q("1/10")) CHECK(checked > 0);
  }

  // end to end with the linear builder at the default pipeline L
  const Real p = unit_weight_p(two);
  const Real L = Real(10 * 1024) * Real::e() * Real::e();
  auto res = weight_class_cover(two, p, L, Rational(200), linear_class_builder(), {}, true);
  CHECK(res.per_class.size() == 2);
  CHECK(valid_exhaustive(res.certificate));
  CHECK(std::acos(-1.0) * std::acos(-1.0) / 60 <= 1.0);
}

TEST_CASE("linear decomposition") {
  auto fano = fano_plane();
  auto single = linear_decompose(fano, 3, 1);
  CHECK(single.size() == 1);

  auto aps = k_ap_hypergraph(9, 3);
  CHECK(max_codegree(aps) <= 4);
  auto classes = linear_decompose(aps, 3, 2);
  CHECK(classes.size() <= 64);
  std::size_t total = 0;
  std::vector<SubsetMask> seen;
  for (const auto& c : classes) {
    CHECK(is_linear(c));
    CHECK(max_codegree(c) <= 1);
    total += c.size();
    for (const auto& e : c) {
      CHECK(std::find(seen.begin(), seen.end(), e) == seen.end());
      seen.push_back(e);
    }
  }
  CHECK(total == aps.size());
  std::sort(seen.begin(), seen.end(), lex_less);
  CHECK(seen == aps);

  std::vector<SubsetMask> clash = {set_of(4, {0, 1, 2}), set_of(4, {0, 1, 3})};
  auto two = linear_decompose(clash, 3, 2);
  CHECK(two.size() == 2);
  try {
    linear_decompose(clash, 3, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition_violated);
  }
  CHECK(codegree_of(clash) == 2);
}

TEST_CASE("nearly linear pipeline, linear case") {
  auto fano = random_weights_on(7, fano_plane(), 9);
  const Real p = unit_weight_p(fano);
  auto res = nearly_linear_cover(fano, p, 1);
  CHECK(res.classes == 1);
  REQUIRE(res.singleton_part);
  REQUIRE(res.weight_classes);
  CHECK(valid_exhaustive(res.certificate));
  CHECK(verify_certificate(*res.singleton_part).valid);
  CHECK(certify_le(res.certificate.loss, Real(40000) * linear_pipeline_L(), 128, 512) == Tri::yes);
  CHECK(certify_le(Real(40000) * linear_pipeline_L(), res.certificate.loss, 128, 512) == Tri::yes);
  CHECK(certify_le(res.certificate.loss, linear_pipeline_loss(), 128, 512) == Tri::yes);

  const Real L = linear_pipeline_L();
  for (auto w : members(7, [&](const SubsetMask& s) { return member_upset(fano, s); }))
    CHECK(vl_split_holds(fano, L, SubsetMask::from_word(7, w)));

  auto edges = random_linear_hypergraph(12, 3, 12, 2);
  auto g = random_weights_on(12, edges, 2);
  auto r2 = nearly_linear_cover(g, unit_weight_p(g), 1);
  CHECK(valid_exhaustive(r2.certificate));
  for (auto w : members(12, [&](const SubsetMask& s) { return member_upset(g, s); }))
    CHECK(vl_split_holds(g, L, SubsetMask::from_word(12, w)));
}

TEST_CASE("nearly linear pipeline, progressions") {
  auto aps = k_ap_hypergraph(10, 3);
  auto g = random_weights_on(10, aps, 4);
  const Real p = unit_weight_p(g);
  auto res = nearly_linear_cover(g, p, 2);
  CHECK(res.classes >= 2);
  CHECK(res.parts.size() == res.classes);
  for (const auto& part : res.parts) CHECK(part.copies == 64);
  auto rep = verify_certificate(res.certificate);
  CHECK(rep.valid);
  CHECK(certify_le(res.certificate.loss, Real(16) * linear_pipeline_loss(), 128, 512) == Tri::yes);
  CHECK(certify_le(Real(16) * linear_pipeline_loss(), res.certificate.loss, 128, 512) == Tri::yes);
  CHECK(valid_exhaustive(res.certificate));

  // pairs in more than c^k sets
  auto thick = WeightFunction::constant(GroundSet(5),
                                        {set_of(5, {0, 1, 2}), set_of(5, {0, 1, 3}), set_of(5, {0, 1, 4})}, Q("1/2"));
  try {
    nearly_linear_cover(thick, unit_weight_p(thick), 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition_violated);
  }
}
