#include "expthresh/certificate.hpp"

#include "expthresh/errors.hpp"
#include "expthresh/random.hpp"
#include "expthresh/upset.hpp"

#include <charconv>

namespace expthresh {

std::string to_string(const CoverageMode& m) {
  switch (m.kind) {
    case CoverageKind::exhaustive:
      return "exhaustive";
    case CoverageKind::minimal:
      return "minimal";
    case CoverageKind::sampled:
      return "sampled:" + std::to_string(m.count);
  }
  return {};
}

CoverageMode parse_coverage_mode(std::string_view text, std::uint64_t seed) {
  if (text == "exhaustive") return CoverageMode::exhaustive();
  if (text == "minimal" || text == "minimal-elements") return CoverageMode::minimal();
  if (text.starts_with("sampled")) {
    std::size_t count = 10000;
    if (text.size() > 7) {
      require(text[7] == ':', ErrorCode::parse_error, "expected sampled:<count>");
      auto rest = text.substr(8);
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), count);
      require(ec == std::errc() && ptr == rest.data() + rest.size() && count > 0, ErrorCode::parse_error,
              "bad sample count in '" + std::string(text) + "'");
    }
    return CoverageMode::sampled(count, seed);
  }
  fail(ErrorCode::parse_error, "unknown coverage mode '" + std::string(text) + "'");
}

RestrictedMembership::RestrictedMembership(const WeightFunction& g, Rational J, Real L, int precision, int max_precision)
    : g_(std::make_shared<WeightFunction>(g)), J_(std::move(J)), precision_(precision), max_precision_(max_precision) {
  require(!g.empty() && g.uniform_k().has_value(), ErrorCode::invalid_argument,
          "the restricted up-set needs a nonempty uniform weight function");
  const long k = *g.uniform_k();
  coef_ = L / (Real(4) * Real::e() * Real(k)) * pow(Real(g.total()), Real(Rational(1 - k, k)));
  coef_enclosure_ = coef_.eval(precision_);
}

Tri RestrictedMembership::test(const SubsetMask& s) const {
  Rational lhs = g_->sum_within(s);
  if (lhs < J_ || lhs == 0) return Tri::no;
  Rational deg = 0;
  s.for_each([&](unsigned x) { deg += g_->degrees()[x]; });
  Interval rhs = coef_enclosure_ * Interval::of(deg, precision_);
  Tri t = certainly_le(rhs, Interval::of(lhs, precision_));
  if (t != Tri::unknown) return t;
  return certify_le(coef_ * Real(deg), Real(lhs), precision_ * 2, max_precision_);
}

bool RestrictedMembership::member(const SubsetMask& s) const {
  Tri t = test(s);
  if (t == Tri::unknown) fail(ErrorCode::indeterminate_at_precision, "restricted up-set membership undecided for " + s.str());
  return t == Tri::yes;
}

bool member_upset_JL(const WeightFunction& g, const Rational& J, const Real& L, const SubsetMask& s, const Budgets& budgets) {
  return RestrictedMembership(g, J, L, budgets.precision, budgets.max_precision).member(s);
}

namespace {

void sample_chains(const WeightFunction& g, std::size_t count, std::uint64_t seed,
                   const std::function<Tri(const SubsetMask&)>& test, const std::function<bool(const SubsetMask&)>& visit,
                   std::size_t* inconclusive) {
  const unsigned n = g.n();
  if (g.empty()) return;
  Rng rng(seed);
  std::vector<unsigned> perm(n);
  for (unsigned i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t round = 0; round < count; ++round) {
    rng.shuffle(perm);
    SubsetMask s(n);
    for (unsigned x : perm) {
      s.set(x);
      Tri t = test(s);
      if (t == Tri::no) continue;
      if (t == Tri::unknown && inconclusive) ++*inconclusive;
      if (!visit(s)) return;
      break;
    }
  }
}

}  // namespace

CoverageMode for_each_target_element(const WeightFunction& g, const CoverTarget& target, CoverageMode requested,
                                     const Budgets& budgets, const std::function<bool(const SubsetMask&)>& visit,
                                     std::size_t* inconclusive) {
  const unsigned n = g.n();
  std::optional<RestrictedMembership> jl;
  if (target.restricted && !g.empty()) jl.emplace(g, target.J, target.L, budgets.precision, budgets.max_precision);
  auto test = [&](const SubsetMask& s) -> Tri {
    if (target.restricted) return g.empty() ? Tri::no : jl->test(s);
    return tri_of(member_upset(g, s));
  };

  CoverageMode mode = requested;
  if (mode.kind == CoverageKind::exhaustive && (n > budgets.enum_bits || n > 40))
    mode = target.restricted ? CoverageMode::sampled(10000, requested.seed) : CoverageMode::minimal();
  if (mode.kind == CoverageKind::minimal && target.restricted) mode = CoverageMode::sampled(10000, requested.seed);

  if (mode.kind == CoverageKind::exhaustive) {
    if (!target.restricted) {
      UpsetTable table = upset_table(g, budgets);
      for (std::uint64_t w = 0; w < table.size(); ++w)
        if (table[w] && !visit(SubsetMask::from_word(n, w))) break;
    } else {
      for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
        SubsetMask s = SubsetMask::from_word(n, w);
        Tri t = test(s);
        if (t == Tri::no) continue;
        if (t == Tri::unknown && inconclusive) ++*inconclusive;
        if (!visit(s)) break;
      }
    }
    return mode;
  }
  if (mode.kind == CoverageKind::minimal) {
    std::vector<SubsetMask> minimal;
    try {
      minimal = minimal_elements_of_upset(g, budgets);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::budget_exceeded) throw;
      mode = CoverageMode::sampled(10000, requested.seed);
    }
    if (mode.kind == CoverageKind::minimal) {
      for (const auto& s : minimal)
        if (!visit(s)) break;
      return mode;
    }
  }
  sample_chains(g, mode.count, mode.seed, test, visit, inconclusive);
  return mode;
}

WeightCheck check_cover_weight(const CoverFamily& cover, const Real& p, const Real& loss, const Real& bound,
                               const Budgets& budgets) {
  WeightCheck out;
  for (int bits = budgets.precision;; bits *= 2) {
    Interval q = p.eval(bits) / loss.eval(bits);
    out.weight = cover.weight(q, budgets);
    out.precision = bits;
    out.within_bound = certify_le(out.weight.value, bound, budgets.max_precision);
    if (out.within_bound != Tri::unknown || bits * 2 > budgets.max_precision) break;
  }
  return out;
}

VerificationReport verify_certificate(const Certificate& cert, const Budgets& budgets, std::optional<CoverageMode> mode) {
  VerificationReport r;
  require(cert.cover.n() == cert.g.n(), ErrorCode::invalid_argument, "certificate cover and weights use different ground sets");
  if (cert.target.restricted && !cert.g.empty() && !cert.g.uniform_k())
    fail(ErrorCode::invalid_argument, "restricted up-set target needs a uniform weight function");

  std::size_t target_unknown = 0;
  r.mode_used = for_each_target_element(
      cert.g, cert.target, mode.value_or(cert.coverage), budgets,
      [&](const SubsetMask& s) {
        ++r.checked;
        Tri t = cert.cover.member(s, budgets);
        if (t == Tri::yes) return true;
        if (t == Tri::unknown) ++r.inconclusive;
        ++r.failure_count;
        if (r.failures.size() < 16) r.failures.push_back(s);
        return true;
      },
      &target_unknown);
  if (target_unknown)
    r.notes.push_back(std::to_string(target_unknown) + " sets with undecided target membership were checked conservatively");
  if (r.inconclusive) r.notes.push_back(std::to_string(r.inconclusive) + " cover membership searches were inconclusive");
  if (r.mode_used.kind != mode.value_or(cert.coverage).kind)
    r.notes.push_back("coverage mode degraded to " + to_string(r.mode_used));
  r.coverage_ok = r.failure_count == 0;

  WeightCheck w = check_cover_weight(cert.cover, cert.p, cert.loss, cert.bound, budgets);
  r.weight = w.weight.value;
  r.weight_upper_only = w.weight.upper_only;
  r.precision_used = w.precision;
  r.weight_ok = w.within_bound == Tri::yes;
  if (w.within_bound == Tri::unknown) r.notes.push_back("weight comparison undecided at maximum precision");
  r.valid = r.coverage_ok && r.weight_ok;
  return r;
}

}  // namespace expthresh
