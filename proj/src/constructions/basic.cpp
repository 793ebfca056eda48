#include "expthresh/constructions/basic.hpp"

#include "expthresh/errors.hpp"
#include "expthresh/upset.hpp"

#include <algorithm>
#include <numeric>

namespace expthresh {

void require_unit_weight(const WeightFunction& g, const Real& p, const Budgets& budgets) {
  for (int bits = budgets.precision;; bits *= 2) {
    if (weight_of_function(g, p.eval(bits)).contains(Rational(1))) return;
    if (bits * 2 > budgets.max_precision) break;
  }
  fail(ErrorCode::precondition_violated, "w(g,p) is certainly not 1");
}

std::vector<unsigned> singleton_order(const WeightFunction& g) {
  std::vector<Rational> w(g.n(), Rational(0));
  for (const auto& e : g.entries()) w[e.set.lowest()] = e.weight;
  std::vector<unsigned> order(g.n());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](unsigned a, unsigned b) { return w[a] > w[b]; });
  return order;
}

Certificate singleton_cover(const WeightFunction& g, const Real& p, const Budgets& budgets) {
  require(!g.empty() && g.uniform_k() == 1u, ErrorCode::invalid_argument, "singleton cover needs weights on singletons only");
  require_unit_weight(g, p, budgets);
  BigInt a = ceil_of(g.total());
  require(a <= g.n(), ErrorCode::precondition_violated, "sum of weights exceeds the ground set size");
  unsigned level = static_cast<unsigned>(a);

  Certificate cert;
  cert.g = g;
  cert.p = p;
  cert.cover = CoverFamily::singleton_levels(g.n(), singleton_order(g), level);
  cert.loss = Real(4) * Real::e();
  cert.bound = Real(1);
  cert.provenance.construction = "singleton_cover";
  cert.provenance.guarantee = "weights on singletons: the top-ranked levels cover <g> at loss 4e";
  cert.provenance.parameters = {{"a", level}};
  return cert;
}

Interval singleton_weight_closed_form(unsigned n, unsigned a, const Interval& x) {
  Interval acc = Interval::of(0, x.bits());
  for (unsigned j = 1; j <= n; ++j) {
    unsigned top = std::min<unsigned long>(static_cast<unsigned long>(j) * a, n);
    if (top < j) break;
    acc = acc + Interval::of(Rational(binomial(top, j)), x.bits()) * x.pow(j);
  }
  return acc;
}

unsigned volume_level(const SubsetMask& v, const Real& p, const Real& L, const Budgets& budgets) {
  require(!v.empty(), ErrorCode::invalid_argument, "V must be nonempty");
  Real x = Real::e() * p / L * Real(static_cast<long>(v.count()));
  BigInt t = certified_ceil(x, budgets.precision, budgets.max_precision);
  if (t <= 0) fail(ErrorCode::degenerate_threshold, "volume level ceil(e p |V| / L) is 0");
  if (t > v.count()) fail(ErrorCode::empty_family, "volume level exceeds |V|");
  return static_cast<unsigned>(t);
}

CoverFamily volume_cover(const SubsetMask& v, const Real& p, const Real& L, const Budgets& budgets) {
  return CoverFamily::volume(v, volume_level(v, p, L, budgets));
}

Certificate volume_certificate(const WeightFunction& g, const SubsetMask& v, const Real& p, const Real& L,
                               const Budgets& budgets) {
  Certificate cert;
  cert.g = g;
  cert.p = p;
  cert.cover = volume_cover(v, p, L, budgets);
  cert.loss = L;
  cert.bound = Real(1);
  cert.provenance.construction = "volume_cover";
  cert.provenance.guarantee = "every member of <g> meets V in at least (e p / L)|V| elements";
  cert.provenance.parameters = {{"V", v.elements()}, {"t", cert.cover.volume_t()}};
  return cert;
}

unsigned density_level(unsigned k, const Rational& c) {
  require(c > 0, ErrorCode::invalid_argument, "density constant must be positive");
  for (unsigned s = k;; ++s)
    if (Rational(1) <= c * Rational(binomial(s, k))) return s;
}

Certificate constant_density_cover(const WeightFunction& g, const Real& p, const Real& L, std::optional<SubsetMask> v,
                                   const Budgets& budgets) {
  require(!g.empty() && g.uniform_k(), ErrorCode::invalid_argument, "constant density cover needs a uniform weight function");
  auto c = g.constant_value();
  require(c.has_value(), ErrorCode::invalid_argument, "weight function is not constant on its support");
  const unsigned k = *g.uniform_k();
  SubsetMask vv = v.value_or(SubsetMask(g.n()));
  if (!v)
    for (const auto& e : g.entries()) vv |= e.set;
  for (const auto& e : g.entries())
    require(e.set.is_subset_of(vv), ErrorCode::invalid_argument, "support must lie inside V");
  require_unit_weight(g, p, budgets);

  Real needed = pow(Real::e() * Real::e() / L, static_cast<long>(k)) * Real(Rational(binomial(vv.count(), k)));
  if (certify_le(needed, Real(static_cast<long>(g.size())), budgets.precision, budgets.max_precision) != Tri::yes)
    fail(ErrorCode::precondition_violated, "support density below (e^2/L)^k binom(|V|,k)");
  unsigned s = density_level(k, *c);
  unsigned t = volume_level(vv, p, L, budgets);
  require(t <= s, ErrorCode::precondition_violated, "volume level above the density level");

  Certificate cert = volume_certificate(g, vv, p, L, budgets);
  cert.provenance.construction = "constant_density_cover";
  cert.provenance.guarantee = "constant weights of high density: members of <g> meet V in at least s elements";
  cert.provenance.parameters["s"] = s;
  return cert;
}

Real randomized_loss(unsigned n, unsigned k) { return Real(4) * root(Real(static_cast<long>(n)), k); }

RandomizedDraw randomized_draw(const WeightFunction& g, const Real& p, Rng& rng, const std::vector<SubsetMask>& minimal,
                               const Budgets& budgets) {
  RandomizedDraw d;
  const Rational scale(static_cast<long>(g.n()) + 1);
  for (const auto& e : g.entries())
    if (rng.bernoulli(std::min(Rational(1), Rational(scale * e.weight)))) d.sets.push_back(e.set);
  d.covers = std::all_of(minimal.begin(), minimal.end(), [&](const SubsetMask& m) {
    return std::any_of(d.sets.begin(), d.sets.end(), [&](const SubsetMask& t) { return t.is_subset_of(m); });
  });
  CoverFamily fam = CoverFamily::explicit_sets(g.n(), d.sets);
  WeightCheck w = check_cover_weight(fam, p, randomized_loss(g.n(), *g.uniform_k()), Real(1), budgets);
  d.weight = w.weight.value;
  d.weight_ok = w.within_bound;
  return d;
}

RandomizedResult randomized_cover(const WeightFunction& g, const Real& p, std::uint64_t seed, std::size_t max_retries,
                                  const Budgets& budgets) {
  require(!g.empty() && g.uniform_k(), ErrorCode::invalid_argument, "randomized cover needs a uniform weight function");
  require_unit_weight(g, p, budgets);
  const auto minimal = minimal_elements_of_upset(g, budgets);
  Rng rng(seed);
  RandomizedResult out;
  while (out.attempts < max_retries) {
    ++out.attempts;
    RandomizedDraw d = randomized_draw(g, p, rng, minimal, budgets);
    if (!d.covers) ++out.coverage_failures;
    if (d.weight_ok != Tri::yes) ++out.weight_failures;
    if (!d.covers || d.weight_ok != Tri::yes) continue;
    Certificate& cert = out.certificate;
    cert.g = g;
    cert.p = p;
    cert.cover = CoverFamily::explicit_sets(g.n(), std::move(d.sets));
    cert.loss = randomized_loss(g.n(), *g.uniform_k());
    cert.bound = Real(1);
    cert.provenance.construction = "randomized_cover";
    cert.provenance.guarantee = "support sets kept with probability min{(n+1) g(T), 1}; loss 4 n^(1/k)";
    cert.provenance.parameters = {{"seed", seed}, {"attempts", out.attempts}};
    return out;
  }
  fail(ErrorCode::retries_exhausted, "no accepted draw in " + std::to_string(max_retries) + " attempts (" +
                                         std::to_string(out.coverage_failures) + " coverage failures, " +
                                         std::to_string(out.weight_failures) + " weight failures)");
}

}  // namespace expthresh
