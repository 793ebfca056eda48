#pragma once

#include "expthresh/budgets.hpp"
#include "expthresh/certificate.hpp"
#include "expthresh/random.hpp"

#include <optional>
#include <vector>

namespace expthresh {

/// Certified w(g,p) = 1 check shared by the constructions: PreconditionViolated
/// when the weight certainly differs from 1.
void require_unit_weight(const WeightFunction& g, const Real& p, const Budgets& budgets = {});

/// Elements by decreasing g({x}), ties by index; unweighted elements last.
std::vector<unsigned> singleton_order(const WeightFunction& g);

/// g on singletons with w(g,p) = 1: the j-subsets of the top min(j*a, n)
/// elements for every j, a = ceil(sum g). Loss 4e, bound 1.
Certificate singleton_cover(const WeightFunction& g, const Real& p, const Budgets& budgets = {});

/// sum_j binom(min(j*a, n), j) x^j, the weight of the singleton family.
Interval singleton_weight_closed_form(unsigned n, unsigned a, const Interval& x);

/// t = ceil((e p / L) |V|). DegenerateThreshold when t = 0, EmptyFamily when t > |V|.
unsigned volume_level(const SubsetMask& v, const Real& p, const Real& L, const Budgets& budgets = {});
/// All t-subsets of V.
CoverFamily volume_cover(const SubsetMask& v, const Real& p, const Real& L, const Budgets& budgets = {});
/// The volume family as a certificate for <g>; valid when every member of <g>
/// meets V in at least (e p / L)|V| elements.
Certificate volume_certificate(const WeightFunction& g, const SubsetMask& v, const Real& p, const Real& L,
                               const Budgets& budgets = {});

/// Least s >= k with binom(s,k)^-1 <= c.
unsigned density_level(unsigned k, const Rational& c);

/// g constant on a support inside binom(V,k) with |supp| >= (e^2/L)^k binom(|V|,k):
/// every member of <g> meets V in at least s >= (e p / L)|V| elements, so the
/// volume family works. V defaults to the union of the support.
Certificate constant_density_cover(const WeightFunction& g, const Real& p, const Real& L,
                                   std::optional<SubsetMask> v = std::nullopt, const Budgets& budgets = {});

/// One draw of G from supp(g), T kept with probability min{(n+1) g(T), 1}.
struct RandomizedDraw {
  std::vector<SubsetMask> sets;
  bool covers = false;      // every minimal element of <g> contains a drawn set
  Tri weight_ok = Tri::no;  // w(G, p / 4n^(1/k)) <= 1
  Interval weight;
};

RandomizedDraw randomized_draw(const WeightFunction& g, const Real& p, Rng& rng,
                               const std::vector<SubsetMask>& minimal, const Budgets& budgets = {});

struct RandomizedResult {
  Certificate certificate;
  std::size_t attempts = 0;
  std::size_t coverage_failures = 0;
  std::size_t weight_failures = 0;
};

/// Draws until one G covers <g> within weight; loss 4 n^(1/k).
/// RetriesExhausted after max_retries draws.
RandomizedResult randomized_cover(const WeightFunction& g, const Real& p, std::uint64_t seed,
                                  std::size_t max_retries = 100, const Budgets& budgets = {});

/// 4 n^(1/k).
Real randomized_loss(unsigned n, unsigned k);

}  // namespace expthresh
