#include "expthresh/constructions/reductions.hpp"

#include "expthresh/constructions/basic.hpp"
#include "expthresh/errors.hpp"
#include "expthresh/oracles/cover_program.hpp"
#include "expthresh/upset.hpp"

#include <map>

namespace expthresh {

namespace {

Rational dyadic_below(const Rational& v, int bits) {
  BigInt scale = BigInt(1) << bits;
  return Rational(BigInt(floor_of(v * Rational(scale))) - 1, scale);
}

Rational dyadic_above(const Rational& v, int bits) {
  BigInt scale = BigInt(1) << bits;
  return Rational(BigInt(ceil_of(v * Rational(scale))) + 1, scale);
}

Certificate empty_cover_certificate(const WeightFunction& g, const Real& p, Real loss, Real bound) {
  Certificate cert;
  cert.g = g;
  cert.p = p;
  cert.cover = CoverFamily::explicit_sets(g.n(), {});
  cert.loss = std::move(loss);
  cert.bound = std::move(bound);
  cert.provenance.construction = "empty";
  cert.provenance.guarantee = "<g> is empty";
  return cert;
}

}  // namespace

CoverBuilder exact_oracle_builder(std::optional<Real> L, Budgets budgets) {
  return [L, budgets](const WeightFunction& g, const Real& p) {
    if (g.total() < 1) return empty_cover_certificate(g, p, L.value_or(Real(1)), Real(1));
    MonotoneFamily f = upset_family(g, budgets);
    CoverProgram prog = CoverProgram::for_family(f, budgets);
    const int bits = budgets.precision;

    Certificate cert;
    cert.g = g;
    cert.p = p;
    cert.bound = Real(1);
    cert.provenance.construction = "exact_oracle";
    cert.provenance.guarantee = "minimum-weight integral cover of <g>";
    Rational x;
    if (L) {
      x = (p.eval(bits) / L->eval(bits)).upper_rational();
      if (x > 1) x = 1;
      cert.loss = *L;
    } else {
      ThresholdResult q = expectation_threshold_q(f, Rational(1), budgets);
      if (q.value.exact() == Rational(1)) {
        x = 1;
      } else {
        x = dyadic_below(q.value.eval(bits).lower_rational(), 40);
        require(x > 0, ErrorCode::precondition_violated, "cover threshold too close to 0");
      }
      Rational ratio = dyadic_above(p.eval(bits).upper_rational() / x, 30);
      cert.loss = Real(ratio < 1 ? Rational(1) : ratio);
    }
    CoverSolution sol = solve_integral(prog, x, budgets);
    if (*sol.exact_objective > 1)
      fail(ErrorCode::precondition_violated, "the optimal cover weighs more than 1 at p/L");
    cert.cover = CoverFamily::explicit_sets(g.n(), sol.support(prog));
    cert.provenance.parameters = {{"solved_at", to_string(x)}, {"optimum", to_string(*sol.exact_objective)}};
    return cert;
  };
}

WeightFunction blow_up(const WeightFunction& g, unsigned m, const Budgets& budgets) {
  require(m >= 1, ErrorCode::invalid_argument, "blow-up needs at least one copy");
  const unsigned long width = static_cast<unsigned long>(g.n()) * m;
  if (width > budgets.width_cap)
    fail(ErrorCode::width_cap_exceeded, "blow-up to " + std::to_string(width) + " elements exceeds the width cap");
  std::vector<WeightEntry> es;
  es.reserve(g.size() * m);
  for (unsigned i = 0; i < m; ++i)
    for (const auto& e : g.entries()) es.push_back({e.set.shifted(i * g.n(), static_cast<unsigned>(width)), e.weight});
  return WeightFunction(GroundSet(static_cast<unsigned>(width)), std::move(es));
}

PowerTrickResult power_trick_extract(const WeightFunction& g, const Real& p, unsigned c, const CoverBuilder& inner,
                                     const Budgets& budgets, bool verify_inner) {
  require(!g.empty() && g.uniform_k(), ErrorCode::invalid_argument, "power trick needs a uniform weight function");
  require(c >= 1, ErrorCode::invalid_argument, "power trick needs c >= 1");
  const unsigned k = *g.uniform_k();
  unsigned long m = 1;
  for (unsigned i = 0; i < k; ++i) {
    m *= c;
    if (m * g.n() > budgets.width_cap) fail(ErrorCode::width_cap_exceeded, "c^k copies exceed the width cap");
  }
  PowerTrickResult out;
  out.copies = static_cast<unsigned>(m);
  const Real bound(Rational(1, static_cast<long>(m)));

  WeightFunction h = blow_up(g, out.copies, budgets).scaled_clamped(Rational(1));
  if (h.total() < 1) {
    out.certificate = empty_cover_certificate(g, p, Real(static_cast<long>(c)), bound);
    out.inner = empty_cover_certificate(h, Real(1), Real(1), Real(1));
    return out;
  }
  Real p_hat = unit_weight_p(h);
  if (certify_le(p / Real(static_cast<long>(c)), p_hat, budgets.precision, budgets.max_precision) != Tri::yes)
    fail(ErrorCode::precondition_violated, "w(g^(m), p/c) exceeds 1");
  out.inner = inner(h, p_hat);
  require(out.inner.cover.n() == h.n(), ErrorCode::inner_certificate_invalid, "inner cover uses a different ground set");
  if (verify_inner) {
    VerificationReport rep = verify_certificate(out.inner, budgets);
    if (!rep.valid)
      fail(ErrorCode::inner_certificate_invalid,
           "inner certificate failed verification (" + std::to_string(rep.failure_count) + " coverage failures)");
  }

  const Real loss = Real(static_cast<long>(c)) * out.inner.loss;
  const Interval x = (p / loss).eval(budgets.precision);
  CoverFamily best;
  for (unsigned i = 0; i < out.copies; ++i) {
    CoverFamily proj = out.copies == 1 ? out.inner.cover : CoverFamily::copy_projection(out.inner.cover, i, g.n());
    out.copy_weights.push_back(proj.weight(x, budgets).value);
    if (i == 0 || out.copy_weights[i].upper_rational() < out.copy_weights[out.copy].upper_rational()) {
      out.copy = i;
      best = proj;
    }
  }

  Certificate& cert = out.certificate;
  cert.g = g;
  cert.p = p;
  cert.cover = best;
  cert.loss = loss;
  cert.bound = bound;
  cert.coverage = out.inner.coverage;
  cert.provenance.construction = "power_trick";
  cert.provenance.guarantee = "lightest copy of a cover of the c^k-fold blow-up weighs at most c^-k";
  cert.provenance.parameters = {{"c", c}, {"copies", out.copies}, {"copy", out.copy},
                                {"inner", out.inner.provenance.construction}};
  return out;
}

UniformizeResult uniformize_cover(const WeightFunction& g, const Real& p, const CoverBuilder& uniform_inner,
                                  const Budgets& budgets, bool verify_inner) {
  require(!g.empty(), ErrorCode::invalid_argument, "uniformize needs a nonempty weight function");
  require_unit_weight(g, p, budgets);
  std::map<unsigned, bool> sizes;
  for (const auto& e : g.entries()) sizes[e.set.count()] = true;

  UniformizeResult out;
  std::vector<CoverFamily> parts;
  for (const auto& [k, unused] : sizes) {
    (void)unused;
    WeightFunction hk = g.restricted_to_cardinality(k).scaled_clamped(Rational(BigInt(1) << k));
    if (hk.total() < 1) continue;
    PowerTrickResult r = power_trick_extract(hk, p / Real(2), 2, uniform_inner, budgets, verify_inner);
    parts.push_back(r.certificate.cover);
    if (out.classes.empty()) {
      out.L = r.inner.loss;
    } else {
      Tri le = certify_le(out.L, r.inner.loss, budgets.precision, budgets.max_precision);
      if (le == Tri::unknown) fail(ErrorCode::indeterminate_at_precision, "cannot order the inner losses");
      if (le == Tri::yes) out.L = r.inner.loss;
    }
    out.sizes.push_back(k);
    out.classes.push_back(std::move(r));
  }

  Certificate& cert = out.certificate;
  cert.g = g;
  cert.p = p;
  cert.cover = CoverFamily::union_of(g.n(), std::move(parts));
  cert.loss = Real(4) * out.L;
  cert.bound = Real(1);
  cert.provenance.construction = "uniformize";
  cert.provenance.guarantee = "per-cardinality power-trick covers weigh at most 2^-k each at loss 4L";
  cert.provenance.parameters = {{"sizes", out.sizes}};
  return out;
}

bool cardinality_pigeonhole(const WeightFunction& g, const SubsetMask& s) {
  std::map<unsigned, Rational> per;
  g.for_each_within(s, [&](const WeightEntry& e) { per[e.set.count()] += e.weight; });
  for (const auto& [k, sum] : per)
    if (sum * Rational(BigInt(1) << k) >= 1) return true;
  return false;
}

}  // namespace expthresh
