#pragma once

#include "expthresh/budgets.hpp"
#include "expthresh/certificate.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace expthresh {

/// Builds a certificate for (g, p) covering <g>, given w(g,p) = 1. The loss is
/// the builder's choice and is read back from the certificate.
using CoverBuilder = std::function<Certificate(const WeightFunction& g, const Real& p)>;

/// Minimum-weight cover of <g> from the integral oracle. With a fixed L the
/// cover is optimal at p/L and must weigh at most 1 there (PreconditionViolated
/// otherwise). Without one, L is the smallest dyadic value (2^-30 steps) making
/// the optimum at p/L strictly below 1, and at least 1.
CoverBuilder exact_oracle_builder(std::optional<Real> L = std::nullopt, Budgets budgets = {});

/// g^(m) on m disjoint copies: copy i occupies [i*n, (i+1)*n). WidthCapExceeded
/// above budgets.width_cap elements.
WeightFunction blow_up(const WeightFunction& g, unsigned m, const Budgets& budgets = {});

struct PowerTrickResult {
  Certificate certificate;
  Certificate inner;  // for min{1, g^(m)} at its unit-weight probability
  unsigned copies = 1;
  unsigned copy = 0;
  std::vector<Interval> copy_weights;  // w(G_i, p / (c L)) per copy
};

/// k-uniform g with w(g^(m), p/c) <= 1, m = c^k: covers the clamped blow-up
/// with `inner` and keeps the lightest copy, so w(G, p/(cL)) <= c^-k at loss cL.
/// InnerCertificateInvalid when `verify_inner` is set and the inner
/// certificate does not verify.
PowerTrickResult power_trick_extract(const WeightFunction& g, const Real& p, unsigned c, const CoverBuilder& inner,
                                     const Budgets& budgets = {}, bool verify_inner = true);

struct UniformizeResult {
  Certificate certificate;
  std::vector<unsigned> sizes;             // cardinalities with a nonempty class
  std::vector<PowerTrickResult> classes;   // one per entry of `sizes`
  Real L = Real(1);                        // largest inner loss
};

/// Splits g by cardinality, h_k = min{2^k g_k, 1}, runs the power trick with
/// c = 2 at p/2 on every class with <h_k> nonempty and unites the results:
/// w(G, p/(4L)) < 1 where L is the largest inner loss.
UniformizeResult uniformize_cover(const WeightFunction& g, const Real& p, const CoverBuilder& uniform_inner,
                                  const Budgets& budgets = {}, bool verify_inner = true);

/// Some k has sum of g(T) over k-sets T inside S at least 2^-k.
bool cardinality_pigeonhole(const WeightFunction& g, const SubsetMask& s);

}  // namespace expthresh
