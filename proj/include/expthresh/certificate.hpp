#pragma once

#include "expthresh/budgets.hpp"
#include "expthresh/cover_family.hpp"
#include "expthresh/real.hpp"
#include "expthresh/weight_function.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace expthresh {

enum class CoverageKind { exhaustive, minimal, sampled };

struct CoverageMode {
  CoverageKind kind = CoverageKind::exhaustive;
  std::size_t count = 10000;  // sampled only
  std::uint64_t seed = 0;     // sampled only

  static CoverageMode exhaustive() { return {}; }
  static CoverageMode minimal() { return {CoverageKind::minimal}; }
  static CoverageMode sampled(std::size_t count, std::uint64_t seed = 0) { return {CoverageKind::sampled, count, seed}; }
};

/// "exhaustive", "minimal" or "sampled:<count>".
std::string to_string(const CoverageMode& m);
CoverageMode parse_coverage_mode(std::string_view text, std::uint64_t seed = 0);

/// The set system a certificate must cover: <g> itself, or the restricted
/// up-set <g>_{J,L} of sets carrying weight at least
/// max{J, (L/4ek) (sum g)^(-1+1/k) sum_{x in S} deg_g(x)}.
struct CoverTarget {
  bool restricted = false;
  Rational J = 1;
  Real L = Real(1);

  static CoverTarget upset() { return {}; }
  static CoverTarget upset_jl(Rational J, Real L) { return {true, std::move(J), std::move(L)}; }
};

/// Membership in <g>_{J,L} for a k-uniform g with exact left side and
/// certified right side.
class RestrictedMembership {
 public:
  RestrictedMembership(const WeightFunction& g, Rational J, Real L, int precision = 128, int max_precision = 2048);

  /// unknown only when the comparison stays undecided at max precision.
  Tri test(const SubsetMask& s) const;
  /// As test(), but IndeterminateAtPrecision instead of unknown.
  bool member(const SubsetMask& s) const;
  /// (L/4ek) (sum g)^(-1+1/k).
  const Real& coefficient() const { return coef_; }

 private:
  std::shared_ptr<const WeightFunction> g_;
  Rational J_;
  Real coef_;
  Interval coef_enclosure_;
  int precision_;
  int max_precision_;
};

/// S in <g>_{J,L}.
bool member_upset_JL(const WeightFunction& g, const Rational& J, const Real& L, const SubsetMask& s,
                     const Budgets& budgets = {});

/// Visits the elements of the target selected by `requested`, degrading
/// exhaustive -> minimal -> sampled(10^4) when budgets do not allow the
/// requested mode. Minimal mode is only used for <g> itself (the restricted
/// up-set is not monotone). `visit` returns false to stop early; `inconclusive`
/// (optional) counts sets whose target membership stayed undecided and were
/// visited anyway. Returns the mode actually used.
CoverageMode for_each_target_element(const WeightFunction& g, const CoverTarget& target, CoverageMode requested,
                                     const Budgets& budgets, const std::function<bool(const SubsetMask&)>& visit,
                                     std::size_t* inconclusive = nullptr);

struct Provenance {
  std::string construction;
  std::string guarantee;
  nlohmann::json parameters = nlohmann::json::object();
};

/// (g, p, G, loss, bound): valid when the target of g lies in <G> and
/// w(G, p/loss) <= bound.
struct Certificate {
  WeightFunction g;
  Real p;
  CoverFamily cover;
  Real loss = Real(1);
  Real bound = Real(1);
  CoverTarget target;
  CoverageMode coverage;
  Provenance provenance;
};

struct VerificationReport {
  CoverageMode mode_used;
  std::size_t checked = 0;
  std::size_t inconclusive = 0;
  std::size_t failure_count = 0;
  std::vector<SubsetMask> failures;  // first few failing sets
  bool coverage_ok = false;
  Interval weight;
  bool weight_upper_only = false;
  bool weight_ok = false;
  int precision_used = 0;
  bool valid = false;
  std::vector<std::string> notes;
};

/// Re-checks both halves of a certificate. Undecided comparisons and
/// inconclusive witness searches count as failures. `mode` overrides the
/// certificate's own coverage mode.
VerificationReport verify_certificate(const Certificate& cert, const Budgets& budgets = {},
                                      std::optional<CoverageMode> mode = std::nullopt);

/// Certified upper end of w(cover, p/loss), escalating the precision until the
/// comparison against `bound` is decided or max precision is reached.
struct WeightCheck {
  CoverWeight weight;
  Tri within_bound = Tri::unknown;
  int precision = 0;
};
WeightCheck check_cover_weight(const CoverFamily& cover, const Real& p, const Real& loss, const Real& bound,
                               const Budgets& budgets = {});

}  // namespace expthresh
