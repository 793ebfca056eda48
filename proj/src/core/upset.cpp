#include "expthresh/upset.hpp"

#include "expthresh/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace expthresh {

namespace {

void check_enum(unsigned n, const Budgets& budgets) {
  if (n > budgets.enum_bits || n > 40)
    fail(ErrorCode::budget_exceeded,
         "exhaustive scan over 2^" + std::to_string(n) + " sets exceeds the budget of 2^" + std::to_string(budgets.enum_bits));
}

std::uint64_t word_of(const SubsetMask& s) { return s.to_word(); }

template <class T>
UpsetTable sum_table(const WeightFunction& g, const BigInt& scale) {
  const unsigned n = g.n();
  std::vector<T> t(std::size_t{1} << n, 0);
  for (const auto& e : g.entries()) {
    BigInt w = BigInt(boost::multiprecision::numerator(e.weight)) * (scale / boost::multiprecision::denominator(e.weight));
    if constexpr (sizeof(T) == 8)
      t[word_of(e.set)] += w.convert_to<std::int64_t>();
    else {
      BigInt hi = w >> 64, lo = w & BigInt(~std::uint64_t{0});
      t[word_of(e.set)] += (static_cast<T>(hi.convert_to<std::uint64_t>()) << 64) + lo.convert_to<std::uint64_t>();
    }
  }
  for (unsigned i = 0; i < n; ++i) {
    std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t s = 0; s < t.size(); ++s)
      if (s & bit) t[s] += t[s ^ bit];
  }
  T one;
  if constexpr (sizeof(T) == 8)
    one = scale.convert_to<std::int64_t>();
  else {
    BigInt hi = scale >> 64, lo = scale & BigInt(~std::uint64_t{0});
    one = (static_cast<T>(hi.convert_to<std::uint64_t>()) << 64) + lo.convert_to<std::uint64_t>();
  }
  UpsetTable out(t.size());
  for (std::size_t s = 0; s < t.size(); ++s) out[s] = t[s] >= one;
  return out;
}

}  // namespace

UpsetTable upset_table(const MonotoneFamily& f, const Budgets& budgets) {
  const unsigned n = f.n();
  check_enum(n, budgets);
  UpsetTable t(std::size_t{1} << n, 0);
  for (const auto& m : f.minimal()) t[word_of(m)] = 1;
  for (unsigned i = 0; i < n; ++i) {
    std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t s = 0; s < t.size(); ++s)
      if (s & bit) t[s] |= t[s ^ bit];
  }
  return t;
}

UpsetTable upset_table(const WeightFunction& g, const Budgets& budgets) {
  const unsigned n = g.n();
  check_enum(n, budgets);
  BigInt scale = 1;
  for (const auto& e : g.entries()) scale = boost::multiprecision::lcm(scale, BigInt(boost::multiprecision::denominator(e.weight)));
  BigInt top = BigInt(boost::multiprecision::numerator(g.total())) * (scale / boost::multiprecision::denominator(g.total()));
  top = std::max(top, scale);
  if (top < (BigInt(1) << 62)) return sum_table<std::int64_t>(g, scale);
  if (top < (BigInt(1) << 126)) return sum_table<__int128>(g, scale);
  return predicate_table(n, [&](const SubsetMask& s) { return member_upset(g, s); }, budgets);
}

UpsetTable predicate_table(unsigned n, const std::function<bool(const SubsetMask&)>& member, const Budgets& budgets) {
  check_enum(n, budgets);
  UpsetTable t(std::size_t{1} << n, 0);
  for (std::uint64_t s = 0; s < t.size(); ++s) t[s] = member(SubsetMask::from_word(n, s));
  return t;
}

std::vector<SubsetMask> minimal_elements(const UpsetTable& table, unsigned n) {
  std::vector<SubsetMask> out;
  for (std::uint64_t s = 0; s < table.size(); ++s) {
    if (!table[s]) continue;
    bool minimal = true;
    for (std::uint64_t r = s; r && minimal; r &= r - 1)
      if (table[s ^ (r & (~r + 1))]) minimal = false;
    if (minimal) out.push_back(SubsetMask::from_word(n, s));
  }
  return minimal_sets(std::move(out));
}

std::vector<SubsetMask> minimal_elements(const std::function<bool(const SubsetMask&)>& member, unsigned n,
                                         const Budgets& budgets) {
  return minimal_elements(predicate_table(n, member, budgets), n);
}

std::vector<SubsetMask> minimal_elements_of_upset(const WeightFunction& g, const Budgets& budgets) {
  const unsigned n = g.n();
  if (n <= budgets.enum_bits) return minimal_elements(upset_table(g, budgets), n);

  const auto& es = g.entries();
  std::unordered_set<SubsetMask, SubsetMaskHash> seen;
  std::vector<SubsetMask> found;
  std::vector<SubsetMask> stack{SubsetMask(n)};
  seen.insert(stack.back());
  while (!stack.empty()) {
    SubsetMask s = std::move(stack.back());
    stack.pop_back();
    for (const auto& e : es) {
      if (e.set.is_subset_of(s)) continue;
      SubsetMask u = s | e.set;
      if (!seen.insert(u).second) continue;
      if (seen.size() > budgets.minimal_search_nodes)
        fail(ErrorCode::budget_exceeded, "minimal-element search exceeded " + std::to_string(budgets.minimal_search_nodes) + " states");
      if (!member_upset(g, u)) {
        stack.push_back(std::move(u));
        continue;
      }
      bool minimal = true;
      u.for_each([&](unsigned x) {
        if (!minimal) return;
        SubsetMask v = u;
        v.reset(x);
        if (member_upset(g, v)) minimal = false;
      });
      if (minimal) found.push_back(std::move(u));
    }
  }
  return minimal_sets(std::move(found));
}

MonotoneFamily upset_family(const WeightFunction& g, const Budgets& budgets) {
  auto ms = minimal_elements_of_upset(g, budgets);
  if (ms.empty()) fail(ErrorCode::empty_family, "<g> is empty");
  return MonotoneFamily(g.ground(), std::move(ms));
}

}  // namespace expthresh
