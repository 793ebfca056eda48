#include "expthresh/monotone_family.hpp"

#include "expthresh/errors.hpp"
#include "expthresh/upset.hpp"

#include <algorithm>

namespace expthresh {

namespace {

bool size_then_lex(const SubsetMask& a, const SubsetMask& b) {
  unsigned ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  return lex_less(a, b);
}

}  // namespace

std::vector<SubsetMask> minimal_sets(std::vector<SubsetMask> sets) {
  std::sort(sets.begin(), sets.end(), size_then_lex);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<SubsetMask> out;
  for (const auto& s : sets) {
    bool dominated = false;
    for (const auto& m : out)
      if (m.is_subset_of(s)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(s);
  }
  return out;
}

MonotoneFamily::MonotoneFamily(GroundSet ground, std::vector<SubsetMask> minimal)
    : ground_(std::move(ground)), minimal_(std::move(minimal)) {
  require(!minimal_.empty(), ErrorCode::invalid_argument, "monotone family needs at least one minimal element");
  for (const auto& m : minimal_) {
    require(m.width() == ground_.n, ErrorCode::invalid_argument, "minimal element over a different ground set");
    require(!m.empty(), ErrorCode::invalid_argument, "the empty set as minimal element makes the family trivial");
  }
  std::sort(minimal_.begin(), minimal_.end(), size_then_lex);
  for (std::size_t i = 0; i < minimal_.size(); ++i)
    for (std::size_t j = 0; j < minimal_.size(); ++j)
      if (i != j && minimal_[i].is_subset_of(minimal_[j]))
        fail(ErrorCode::invalid_argument,
             "minimal elements are not an antichain: " + minimal_[i].str() + " within " + minimal_[j].str());
}

MonotoneFamily MonotoneFamily::generated_by(GroundSet ground, std::vector<SubsetMask> generators) {
  return MonotoneFamily(std::move(ground), minimal_sets(std::move(generators)));
}

bool MonotoneFamily::contains(const SubsetMask& s) const {
  for (const auto& m : minimal_)
    if (m.is_subset_of(s)) return true;
  return false;
}

std::vector<BigInt> member_counts_by_size(const MonotoneFamily& f, const Budgets& budgets) {
  const unsigned n = f.n();
  std::vector<BigInt> counts(n + 1, BigInt(0));
  if (n <= budgets.enum_bits) {
    UpsetTable t = upset_table(f, budgets);
    std::vector<std::uint64_t> c(n + 1, 0);
    for (std::uint64_t s = 0; s < t.size(); ++s)
      if (t[s]) ++c[static_cast<unsigned>(std::popcount(s))];
    for (unsigned j = 0; j <= n; ++j) counts[j] = c[j];
    return counts;
  }
  // inclusion-exclusion over the minimal elements
  const auto& ms = f.minimal();
  if (ms.size() > 20) fail(ErrorCode::budget_exceeded, "family too large for exact containment probability");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ms.size()); ++mask) {
    SubsetMask u(n);
    for (unsigned i = 0; i < ms.size(); ++i)
      if (mask >> i & 1) u |= ms[i];
    unsigned sz = u.count();
    int sign = std::popcount(mask) % 2 ? 1 : -1;
    for (unsigned j = sz; j <= n; ++j) counts[j] += sign * binomial(n - sz, j - sz);
  }
  return counts;
}

std::vector<Rational> containment_polynomial(const MonotoneFamily& f, const Budgets& budgets) {
  const unsigned n = f.n();
  auto a = member_counts_by_size(f, budgets);
  std::vector<Rational> c(n + 1, Rational(0));
  // sum_j a_j p^j (1-p)^(n-j)
  for (unsigned j = 0; j <= n; ++j) {
    if (a[j] == 0) continue;
    for (unsigned i = 0; i + j <= n; ++i) {
      BigInt term = a[j] * binomial(n - j, i);
      if (i % 2) term = -term;
      c[i + j] += Rational(term);
    }
  }
  return c;
}

Rational containment_probability(const MonotoneFamily& f, const Rational& p, const Budgets& budgets) {
  require(p >= 0 && p <= 1, ErrorCode::invalid_argument, "p must lie in [0,1]");
  auto a = member_counts_by_size(f, budgets);
  const unsigned n = f.n();
  Rational acc = 0, q = 1 - p;
  for (unsigned j = 0; j <= n; ++j)
    if (a[j] != 0) acc += Rational(a[j]) * pow(p, j) * pow(q, n - j);
  return acc;
}

Real threshold_pc(const MonotoneFamily& f, const Budgets& budgets) {
  return Real::poly_root(containment_polynomial(f, budgets), Rational(1, 2));
}

}  // namespace expthresh
