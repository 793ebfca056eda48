#include "expthresh/constructions/linear.hpp"

#include "expthresh/constructions/basic.hpp"
#include "expthresh/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace expthresh {

namespace {

Rational pow2(long e) { return e >= 0 ? Rational(BigInt(1) << e) : Rational(BigInt(1), BigInt(1) << -e); }

Rational dyadic_ceil(const Rational& v, int bits) {
  BigInt scale = BigInt(1) << bits;
  return Rational(BigInt(ceil_of(v * Rational(scale))), scale);
}

void require_unit_range(const WeightFunction& g) {
  for (const auto& e : g.entries())
    require(e.weight <= 1, ErrorCode::invalid_argument, "weights must lie in (0,1]");
}

void require_linear(const WeightFunction& g) {
  require(g.max_codegree() <= 1, ErrorCode::precondition_violated, "support is not linear");
}

const char* tri_name(Tri t) { return t == Tri::yes ? "yes" : t == Tri::no ? "no" : "unknown"; }

Certificate blank(const WeightFunction& g, const Real& p) {
  Certificate cert;
  cert.g = g;
  cert.p = p;
  return cert;
}

}  // namespace

std::vector<DyadicClass> dyadic_decompose(const WeightFunction& g) {
  require(!g.empty() && g.uniform_k(), ErrorCode::invalid_argument, "dyadic classes need a nonempty uniform g");
  require_unit_range(g);
  std::map<unsigned, std::vector<WeightEntry>> by_class;
  for (const auto& e : g.entries()) {
    unsigned i = 1;
    while (e.weight <= pow2(-2L * i)) ++i;
    const Rational top = pow2(-2L * (i - 1));
    require(e.weight <= top && top <= 4 * e.weight, ErrorCode::invalid_argument, "dyadic sandwich failed");
    by_class[i].push_back({e.set, top});
  }
  std::vector<DyadicClass> out;
  Rational ell_sum = 0;
  for (auto& [i, entries] : by_class) {
    DyadicClass c;
    c.index = i;
    c.g_i = WeightFunction(g.ground(), std::move(entries));
    c.ell = c.g_i.total() / g.total();
    Rational alt = 1 / (c.ell * pow2(i - 1));
    c.J = alt > 1 ? alt : Rational(1);
    c.r = c.ell * pow2(2L * (i - 1)) / 10;
    ell_sum += c.ell;
    out.push_back(std::move(c));
  }
  require(ell_sum <= 4, ErrorCode::invalid_argument, "class proportions sum above 4");
  return out;
}

WeightFunction scaled_class(const DyadicClass& c) { return c.g_i.scaled(Rational(10) / c.ell); }

std::vector<StarLevel> StarParameters::levels() const {
  std::vector<StarLevel> out;
  for (std::size_t i = 0; i < L.size(); ++i) out.push_back({b[i], L[i]});
  return out;
}

StarParameters star_parameters(unsigned k, const Rational& J, const Rational& r) {
  require(k >= 2, ErrorCode::invalid_argument, "star parameters need k >= 2");
  require(J >= 1 && r > 0, ErrorCode::invalid_argument, "star parameters need J >= 1 and r > 0");
  const Rational jr = J * r;
  if (jr <= Rational(32L * k)) fail(ErrorCode::small_jr_branch, "J r <= 2^5 k: the support itself is the cover");
  const Rational x = jr / Rational(static_cast<long>(k) - 1);
  StarParameters out;
  out.k = k;
  out.ell = 1;
  while (x > pow2(2L * out.ell + 5)) ++out.ell;
  require(x > pow2(2L * out.ell + 3), ErrorCode::invalid_argument, "no level count for J r");
  if (2 * out.ell > 31) fail(ErrorCode::budget_exceeded, "too many star levels");
  for (unsigned i = 1; i <= out.ell; ++i) {
    out.L.push_back(1u << (i - 1));
    out.b.push_back(1u << (2 * (out.ell - i) - std::min(i - 1, out.ell - i)));
  }
  return out;
}

std::shared_ptr<const StarSystem> make_star_system(const WeightFunction& g, const StarParameters& params, const Real& L,
                                                   const Budgets& budgets) {
  return std::make_shared<const StarSystem>(g.n(), params.k, g.support(), params.levels(), L, g.total(),
                                            budgets.precision, budgets.max_precision);
}

namespace {

struct ConstantLinear {
  unsigned k;
  Rational r;
};

ConstantLinear check_constant_linear(const WeightFunction& g) {
  require(!g.empty() && g.uniform_k(), ErrorCode::invalid_argument, "needs a nonempty uniform weight function");
  auto c = g.constant_value();
  require(c.has_value(), ErrorCode::invalid_argument, "weight function is not constant on its support");
  require_linear(g);
  return {*g.uniform_k(), 1 / *c};
}

}  // namespace

std::optional<StarWitness> star_greedy_witness(const WeightFunction& g, const SubsetMask& s, const Rational& J,
                                               const Real& L, const Budgets& budgets) {
  ConstantLinear cl = check_constant_linear(g);
  StarParameters params = star_parameters(cl.k, J, cl.r);
  return make_star_system(g, params, L, budgets)->greedy_witness(s);
}

LinearCoverResult linear_constant_cover(const WeightFunction& g, const Real& p, const Rational& J, const Real& L,
                                        const Budgets& budgets) {
  ConstantLinear cl = check_constant_linear(g);
  require(J >= 1, ErrorCode::invalid_argument, "J must be at least 1");
  require_unit_weight(g, p, budgets);

  LinearCoverResult out;
  Certificate& cert = out.certificate;
  cert = blank(g, p);
  cert.loss = L;
  cert.target = CoverTarget::upset_jl(J, L);
  cert.coverage = g.n() <= budgets.enum_bits ? CoverageMode::exhaustive() : CoverageMode::sampled(10000);
  const Tri guaranteed = certify_le(Real(1024) * Real::e() * Real::e(), L, budgets.precision, budgets.max_precision);
  cert.provenance.parameters = {{"J", to_string(J)}, {"r", to_string(cl.r)}, {"k", cl.k},
                                {"guaranteed", guaranteed == Tri::yes}};

  if (cl.k == 1) {
    // the degree term alone exceeds sum g(T) over T in S
    cert.cover = CoverFamily::explicit_sets(g.n(), {});
    cert.bound = Real(0);
    cert.provenance.construction = "linear_constant_cover";
    cert.provenance.guarantee = "k = 1: the restricted up-set is empty";
    out.small_branch = true;
    out.vacuous = Tri::yes;
    return out;
  }

  if (J * cl.r <= Rational(32L * cl.k)) {
    out.small_branch = true;
    cert.cover = CoverFamily::explicit_sets(g.n(), g.support());
    cert.bound = pow(Real(1) / L, Real(Rational(cl.k, 2)));
    cert.provenance.construction = "linear_constant_cover";
    cert.provenance.guarantee = "J r <= 2^5 k: the support covers the restricted up-set, weight r/L^k <= L^(-k/2)";
    cert.provenance.parameters["branch"] = "support";
  } else {
    StarParameters params = star_parameters(cl.k, J, cl.r);
    cert.cover = CoverFamily::stars(make_star_system(g, params, L, budgets));
    cert.bound = pow(Real(1) / L, sqrt(Real(J * cl.r)) / Real(128));
    cert.provenance.construction = "linear_constant_cover";
    cert.provenance.guarantee =
        "unions of b_i vertex-disjoint stars with L_i edges cover the restricted up-set, weight (1/L)^(sqrt(J r)/2^7)";
    cert.provenance.parameters["branch"] = "stars";
    cert.provenance.parameters["ell"] = params.ell;
    cert.provenance.parameters["L_i"] = params.L;
    cert.provenance.parameters["b_i"] = params.b;
    out.params = std::move(params);
  }

  if (g.n() <= budgets.enum_bits) {
    RestrictedMembership jl(g, J, L, budgets.precision, budgets.max_precision);
    out.vacuous = Tri::yes;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << g.n()) && out.vacuous != Tri::no; ++w) {
      Tri t = jl.test(SubsetMask::from_word(g.n(), w));
      if (t == Tri::yes) out.vacuous = Tri::no;
      if (t == Tri::unknown) out.vacuous = Tri::unknown;
    }
  }
  cert.provenance.parameters["vacuous"] = tri_name(out.vacuous);
  return out;
}

ClassBuilder linear_class_builder(Budgets budgets) {
  return [budgets](const WeightFunction& gt, const Real& p, const Rational& J, const Real& L) {
    return linear_constant_cover(gt, p, J, L, budgets).certificate;
  };
}

WeightClassResult weight_class_cover(const WeightFunction& g, const Real& p, const Real& L, const Rational& c,
                                     const ClassBuilder& per_class, const Budgets& budgets, bool verify_inner) {
  require(c >= 1, ErrorCode::invalid_argument, "class weight constant must be at least 1");
  WeightClassResult out;
  out.classes = dyadic_decompose(g);
  require_unit_weight(g, p, budgets);
  const unsigned k = *g.uniform_k();
  const Real p_prime = p / root(Real(10), k);
  const Real inner_L = L / Real(10);

  std::vector<CoverFamily> parts;
  for (const auto& cls : out.classes) {
    Certificate ci = per_class(scaled_class(cls), p_prime, cls.J, inner_L);
    require(ci.cover.n() == g.n(), ErrorCode::inner_certificate_invalid, "class cover uses a different ground set");
    if (verify_inner) {
      VerificationReport rep = verify_certificate(ci, budgets);
      if (!rep.valid)
        fail(ErrorCode::inner_certificate_invalid, "class " + std::to_string(cls.index) + " certificate failed verification");
    }
    const Rational cap = c / Rational(static_cast<long>(cls.index) * cls.index);
    WeightCheck w = check_cover_weight(ci.cover, p_prime, L, Real(cap), budgets);
    if (w.within_bound != Tri::yes)
      fail(ErrorCode::inner_certificate_invalid, "class " + std::to_string(cls.index) + " cover weighs more than c/i^2");
    parts.push_back(ci.cover);
    out.per_class.push_back(std::move(ci));
  }

  Certificate& cert = out.certificate;
  cert = blank(g, p);
  cert.cover = CoverFamily::union_of(g.n(), std::move(parts));
  cert.loss = Real(100) * Real(c) * L;
  cert.bound = Real(1);
  cert.target = CoverTarget::upset_jl(Rational(1), L);
  cert.coverage = g.n() <= budgets.enum_bits ? CoverageMode::exhaustive() : CoverageMode::sampled(10000);
  cert.provenance.construction = "weight_class_cover";
  cert.provenance.guarantee = "union of covers of the rescaled dyadic weight classes, each at most c/i^2";
  std::vector<unsigned> idx;
  for (const auto& cls : out.classes) idx.push_back(cls.index);
  cert.provenance.parameters = {{"classes", idx}, {"c", to_string(c)}};
  return out;
}

bool weight_class_pigeonhole(const WeightFunction& g, const std::vector<DyadicClass>& classes, const Real& L,
                             const SubsetMask& s, const Budgets& budgets) {
  (void)g;
  const Real inner_L = L / Real(10);
  return std::any_of(classes.begin(), classes.end(), [&](const DyadicClass& c) {
    return member_upset_JL(scaled_class(c), c.J, inner_L, s, budgets);
  });
}

unsigned max_codegree(const std::vector<SubsetMask>& sets) {
  std::map<std::pair<unsigned, unsigned>, unsigned> pairs;
  unsigned best = 0;
  for (const auto& s : sets) {
    auto xs = s.elements();
    for (std::size_t a = 0; a < xs.size(); ++a)
      for (std::size_t b = a + 1; b < xs.size(); ++b) best = std::max(best, ++pairs[{xs[a], xs[b]}]);
  }
  return best;
}

std::vector<std::vector<SubsetMask>> linear_decompose(const std::vector<SubsetMask>& sets, unsigned k, unsigned c) {
  require(c >= 1, ErrorCode::invalid_argument, "c must be at least 1");
  BigInt ck = 1, m = 1;
  for (unsigned i = 0; i < k; ++i) {
    ck *= c;
    m *= 2 * c;
  }
  for (const auto& s : sets) require(s.count() == k, ErrorCode::invalid_argument, "sets must all have size k");
  if (BigInt(max_codegree(sets)) > ck)
    fail(ErrorCode::precondition_violated, "some pair lies in more than c^k sets");

  std::vector<SubsetMask> order = sets;
  std::sort(order.begin(), order.end(), lex_less);
  std::vector<unsigned> colour(order.size());
  std::vector<std::vector<SubsetMask>> classes;
  for (std::size_t a = 0; a < order.size(); ++a) {
    std::set<unsigned> used;
    for (std::size_t b = 0; b < a; ++b)
      if (order[a].intersection_count(order[b]) >= 2) used.insert(colour[b]);
    unsigned col = 0;
    while (used.count(col)) ++col;
    colour[a] = col;
    if (col == classes.size()) classes.emplace_back();
    classes[col].push_back(order[a]);
  }
  require(BigInt(classes.size()) <= m, ErrorCode::precondition_violated, "more than (2c)^k colour classes");
  return classes;
}

Real linear_pipeline_L() { return Real(10 * 1024) * Real::e() * Real::e(); }

Real linear_pipeline_loss() { return Real(Rational(100000L * 4096L)) * Real::e() * Real::e(); }

bool vl_split_holds(const WeightFunction& g, const Real& L, const SubsetMask& s, const Budgets& budgets) {
  if (!member_upset(g, s)) return true;
  RestrictedMembership jl(g, Rational(1), L, budgets.precision, budgets.max_precision);
  if (jl.test(s) == Tri::yes) return true;
  Rational deg = 0;
  s.for_each([&](unsigned x) { deg += g.degrees()[x]; });
  return certify_le(Real(1), jl.coefficient() * Real(deg), budgets.precision, budgets.max_precision) == Tri::yes;
}

namespace {

NearlyLinearResult linear_pipeline(const WeightFunction& g, const Real& p, const Budgets& budgets) {
  require_linear(g);
  const unsigned k = *g.uniform_k();
  const Real L = linear_pipeline_L();
  const int bits = budgets.precision;
  NearlyLinearResult out;

  // V_L: singletons weighted by an upper dyadic rounding of the degree term
  const Interval coef =
      (L / (Real(4) * Real::e() * Real(static_cast<long>(k))) *
       pow(Real(g.total()), Real(Rational(1 - static_cast<long>(k), static_cast<long>(k)))))
          .eval(bits);
  std::vector<WeightEntry> fs;
  Rational f_sum = 0;
  for (unsigned x = 0; x < g.n(); ++x) {
    if (g.degrees()[x] == 0) continue;
    Rational fx = dyadic_ceil((coef * Interval::of(g.degrees()[x], bits)).upper_rational(), 40);
    if (fx > 1) fx = 1;
    f_sum += fx;
    fs.push_back({SubsetMask::from_elements(g.n(), {x}), fx});
  }
  WeightFunction f(g.ground(), std::move(fs));
  const unsigned a = static_cast<unsigned>(ceil_of(f_sum));
  Certificate sp = blank(f, p);
  sp.cover = CoverFamily::singleton_levels(g.n(), singleton_order(f), a);
  sp.loss = L;
  sp.bound = Real(1);
  sp.provenance.construction = "singleton_levels";
  sp.provenance.guarantee = "covers every S whose degree term reaches 1";
  sp.provenance.parameters = {{"a", a}};

  WeightClassResult wc = weight_class_cover(g, p, L, Rational(200), linear_class_builder(budgets), budgets, false);

  Certificate& cert = out.certificate;
  cert = blank(g, p);
  cert.cover = CoverFamily::union_of(g.n(), {sp.cover, wc.certificate.cover});
  cert.loss = Real(40000) * L;
  cert.bound = Real(1);
  cert.provenance.construction = "nearly_linear_cover";
  cert.provenance.guarantee = "<g> lies in <g>_{1,L} and V_L; singleton levels cover V_L, weight classes the rest";
  cert.provenance.parameters = {{"c", 1}, {"a", a}, {"classes", wc.classes.size()}};
  out.singleton_part = std::move(sp);
  out.weight_classes = std::move(wc);
  return out;
}

}  // namespace

NearlyLinearResult nearly_linear_cover(const WeightFunction& g, const Real& p, unsigned c, const Budgets& budgets,
                                       bool verify_inner) {
  require(!g.empty() && g.uniform_k(), ErrorCode::invalid_argument, "nearly linear cover needs a nonempty uniform g");
  require(c >= 1, ErrorCode::invalid_argument, "c must be at least 1");
  require_unit_range(g);
  require_unit_weight(g, p, budgets);
  const unsigned k = *g.uniform_k();
  if (c == 1) return linear_pipeline(g, p, budgets);

  auto classes = linear_decompose(g.support(), k, c);
  unsigned long m = 1;
  for (unsigned i = 0; i < k; ++i) m *= 2 * c;

  CoverBuilder inner = [budgets](const WeightFunction& h, const Real& ph) {
    return linear_pipeline(h, ph, budgets).certificate;
  };
  NearlyLinearResult out;
  out.classes = static_cast<unsigned>(classes.size());
  std::vector<CoverFamily> parts;
  const Real p_half = p / Real(static_cast<long>(2 * c));
  for (const auto& cls : classes) {
    std::unordered_set<SubsetMask, SubsetMaskHash> in(cls.begin(), cls.end());
    std::vector<WeightEntry> es;
    for (const auto& e : g.entries())
      if (in.count(e.set)) es.push_back({e.set, e.weight * Rational(static_cast<long>(m))});
    WeightFunction mg(g.ground(), std::move(es));
    PowerTrickResult r = power_trick_extract(mg, p_half, 2 * c, inner, budgets, verify_inner);
    parts.push_back(r.certificate.cover);
    out.parts.push_back(std::move(r));
  }

  Certificate& cert = out.certificate;
  cert = blank(g, p);
  cert.cover = CoverFamily::union_of(g.n(), std::move(parts));
  cert.loss = Real(static_cast<long>(4 * c * c)) * linear_pipeline_loss();
  cert.bound = Real(1);
  cert.coverage = CoverageMode::minimal();
  cert.provenance.construction = "nearly_linear_cover";
  cert.provenance.guarantee = "linear colour classes, each covered through the power trick with 2c, weight (2c)^-k each";
  cert.provenance.parameters = {{"c", c}, {"classes", out.classes}, {"m", m}};
  return out;
}

}  // namespace expthresh
