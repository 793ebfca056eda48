#pragma once

#include "expthresh/budgets.hpp"
#include "expthresh/certificate.hpp"
#include "expthresh/constructions/reductions.hpp"
#include "expthresh/star_system.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace expthresh {

/// Sets with 4^-(i-1) >= g > 4^-i, weighted 4^-(i-1).
struct DyadicClass {
  unsigned index = 1;
  WeightFunction g_i;
  Rational ell;  // sum g_i / sum g
  Rational J;    // max{1, ell^-1 / 2^(i-1)}
  Rational r;    // ell 4^(i-1) / 10
};

/// Classes with ell_i != 0 in increasing i. Needs a uniform g with weights in (0,1].
std::vector<DyadicClass> dyadic_decompose(const WeightFunction& g);

/// 10 ell_i^-1 g_i, constant 1/r_i on the class.
WeightFunction scaled_class(const DyadicClass& c);

struct StarParameters {
  unsigned k = 2;
  unsigned ell = 1;
  std::vector<unsigned> L;  // L_i = 2^(i-1)
  std::vector<unsigned> b;  // b_i = 2^(2(ell-i) - min{i-1, ell-i})

  std::vector<StarLevel> levels() const;
};

/// ell with 2^(2 ell + 3) < J r / (k-1) <= 2^(2 ell + 5). SmallJrBranch when
/// J r <= 2^5 k.
StarParameters star_parameters(unsigned k, const Rational& J, const Rational& r);

/// The star system of a g constant 1/r on a linear k-uniform support.
std::shared_ptr<const StarSystem> make_star_system(const WeightFunction& g, const StarParameters& params, const Real& L,
                                                   const Budgets& budgets = {});

/// Greedy star extraction inside S and witness assembly for the parameters of (J, r).
std::optional<StarWitness> star_greedy_witness(const WeightFunction& g, const SubsetMask& s, const Rational& J,
                                               const Real& L, const Budgets& budgets = {});

struct LinearCoverResult {
  Certificate certificate;
  bool small_branch = false;
  Tri vacuous = Tri::unknown;  // the restricted up-set is empty (decided when n is enumerable)
  std::optional<StarParameters> params;
};

/// g constant 1/r on a linear k-uniform support (k >= 2), w(g,p) = 1: covers
/// <g>_{J,L}. With J r <= 2^5 k the support itself (bound L^(-k/2)),
/// otherwise the star family (bound L^(-sqrt(J r)/2^7)). The bounds are
/// guaranteed for L >= 2^10 e^2.
LinearCoverResult linear_constant_cover(const WeightFunction& g, const Real& p, const Rational& J, const Real& L,
                                        const Budgets& budgets = {});

/// Builds a cover of <gt>_{J, L'} for one scaled class at p'.
using ClassBuilder =
    std::function<Certificate(const WeightFunction& gt, const Real& p, const Rational& J, const Real& L)>;

ClassBuilder linear_class_builder(Budgets budgets = {});

struct WeightClassResult {
  Certificate certificate;
  std::vector<DyadicClass> classes;
  std::vector<Certificate> per_class;
};

/// Covers <g>_{1,L} by uniting covers of <10 ell_i^-1 g_i>_{J_i, L/10} at
/// p' = p / 10^(1/k). Each class must weigh at most c/i^2 at p'/L; the union
/// weighs at most 1 at p / (100 c L).
WeightClassResult weight_class_cover(const WeightFunction& g, const Real& p, const Real& L, const Rational& c,
                                     const ClassBuilder& per_class, const Budgets& budgets = {},
                                     bool verify_inner = false);

/// Some class i has S in <10 ell_i^-1 g_i>_{J_i, L/10}.
bool weight_class_pigeonhole(const WeightFunction& g, const std::vector<DyadicClass>& classes, const Real& L,
                             const SubsetMask& s, const Budgets& budgets = {});

/// Largest number of sets through a pair.
unsigned max_codegree(const std::vector<SubsetMask>& sets);

/// Greedy colouring (sets in lexicographic order, smallest free colour) of the
/// graph joining sets that share two or more elements; every class is linear.
/// PreconditionViolated when some pair lies in more than c^k sets.
std::vector<std::vector<SubsetMask>> linear_decompose(const std::vector<SubsetMask>& sets, unsigned k, unsigned c);

/// 10 * 2^10 * e^2.
Real linear_pipeline_L();
/// 10^5 * 2^12 * e^2, the loss of the linear case.
Real linear_pipeline_loss();

/// S in <g>_{1,L} or in V_L = {S : (L/4ek)(sum g)^(-1+1/k) sum_{x in S} deg_g(x) >= 1}.
bool vl_split_holds(const WeightFunction& g, const Real& L, const SubsetMask& s, const Budgets& budgets = {});

struct NearlyLinearResult {
  Certificate certificate;
  unsigned classes = 1;                  // colour classes used
  std::vector<PowerTrickResult> parts;   // c > 1
  std::optional<WeightClassResult> weight_classes;  // c = 1
  std::optional<Certificate> singleton_part;        // c = 1
};

/// k-uniform g with weights in (0,1], pairs in at most c^k sets, w(g,p) = 1:
/// covers <g> at loss 4 c^2 * 10^5 * 2^12 * e^2 (10^5 * 2^12 * e^2 when c = 1).
NearlyLinearResult nearly_linear_cover(const WeightFunction& g, const Real& p, unsigned c, const Budgets& budgets = {},
                                       bool verify_inner = true);

}  // namespace expthresh
