#include "expthresh/cover_family.hpp"

#include "expthresh/combinations.hpp"
#include "expthresh/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace expthresh {

struct CoverFamily::Impl {
  Kind kind = Kind::explicit_sets;
  unsigned n = 0;
  // explicit
  std::vector<SubsetMask> sets;
  std::vector<std::vector<unsigned>> by_lowest;
  // singleton levels
  std::vector<unsigned> order;
  std::vector<unsigned> rank;
  unsigned a = 1;
  // volume
  SubsetMask v;
  unsigned t = 0;
  // stars
  std::shared_ptr<const StarSystem> system;
  // union / projection
  std::vector<CoverFamily> parts;
  unsigned copy = 0;
};

namespace {

void sort_members(std::vector<SubsetMask>& v) {
  std::sort(v.begin(), v.end(), [](const SubsetMask& a, const SubsetMask& b) {
    unsigned ca = a.count(), cb = b.count();
    return ca != cb ? ca < cb : lex_less(a, b);
  });
}

Interval weight_from_sizes(const std::vector<BigInt>& counts, const Interval& p) {
  Interval acc = Interval::of(0, p.bits());
  for (std::size_t j = 1; j < counts.size(); ++j)
    if (counts[j] != 0) acc = acc + Interval::of(Rational(counts[j]), p.bits()) * p.pow(static_cast<long>(j));
  return acc;
}

Interval weight_of_sets(const std::vector<SubsetMask>& sets, const Interval& p) {
  std::vector<BigInt> counts;
  for (const auto& s : sets) {
    unsigned c = s.count();
    if (counts.size() <= c) counts.resize(c + 1, BigInt(0));
    ++counts[c];
  }
  return weight_from_sizes(counts, p);
}

CoverWeight upper_only(const Interval& upper) {
  Interval z = Interval::of(0, upper.bits());
  return {z.hull(upper), true};
}

// Number of elements of order[0..m) that fall into the window.
unsigned prefix_in_window(const std::vector<unsigned>& order, unsigned m, unsigned offset, unsigned size) {
  unsigned c = 0;
  for (unsigned i = 0; i < m; ++i) c += order[i] >= offset && order[i] < offset + size;
  return c;
}

}  // namespace

CoverFamily::CoverFamily() : impl_(std::make_shared<Impl>()) {}

CoverFamily CoverFamily::explicit_sets(unsigned n, std::vector<SubsetMask> sets) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::explicit_sets;
  impl->n = n;
  for (const auto& s : sets) {
    require(s.width() == n, ErrorCode::invalid_argument, "cover member over a different ground set");
    require(!s.empty(), ErrorCode::invalid_argument, "the empty set cannot be a cover member");
  }
  sort_members(sets);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  impl->by_lowest.assign(n, {});
  for (unsigned i = 0; i < sets.size(); ++i) impl->by_lowest[sets[i].lowest()].push_back(i);
  impl->sets = std::move(sets);
  return CoverFamily(std::move(impl));
}

CoverFamily CoverFamily::singleton_levels(unsigned n, std::vector<unsigned> order, unsigned a) {
  require(a >= 1, ErrorCode::invalid_argument, "level size must be positive");
  require(order.size() == n, ErrorCode::invalid_argument, "singleton order must list every element once");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::singleton_levels;
  impl->n = n;
  impl->rank.assign(n, n);
  for (unsigned i = 0; i < n; ++i) {
    require(order[i] < n && impl->rank[order[i]] == n, ErrorCode::invalid_argument,
            "singleton order must list every element once");
    impl->rank[order[i]] = i;
  }
  impl->order = std::move(order);
  impl->a = a;
  return CoverFamily(std::move(impl));
}

CoverFamily CoverFamily::volume(SubsetMask v, unsigned t) {
  require(t >= 1, ErrorCode::degenerate_threshold, "volume family with t = 0 would contain the empty set");
  require(t <= v.count(), ErrorCode::empty_family, "t exceeds |V|");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::volume;
  impl->n = v.width();
  impl->v = std::move(v);
  impl->t = t;
  return CoverFamily(std::move(impl));
}

CoverFamily CoverFamily::stars(std::shared_ptr<const StarSystem> system) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::stars;
  impl->n = system->n();
  impl->system = std::move(system);
  return CoverFamily(std::move(impl));
}

CoverFamily CoverFamily::union_of(unsigned n, std::vector<CoverFamily> parts) {
  for (const auto& p : parts) require(p.n() == n, ErrorCode::invalid_argument, "union parts over different ground sets");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::union_of;
  impl->n = n;
  impl->parts = std::move(parts);
  return CoverFamily(std::move(impl));
}

CoverFamily CoverFamily::copy_projection(CoverFamily inner, unsigned copy, unsigned size) {
  require(size >= 1 && (static_cast<unsigned long>(copy) + 1) * size <= inner.n(), ErrorCode::invalid_argument,
          "copy window outside the blown-up ground set");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::copy_projection;
  impl->n = size;
  impl->copy = copy;
  impl->parts.push_back(std::move(inner));
  return CoverFamily(std::move(impl));
}

CoverFamily::Kind CoverFamily::kind() const { return impl_->kind; }
unsigned CoverFamily::n() const { return impl_->n; }
const std::vector<SubsetMask>& CoverFamily::sets() const { return impl_->sets; }
const std::vector<unsigned>& CoverFamily::order() const { return impl_->order; }
unsigned CoverFamily::level_size() const { return impl_->a; }
const SubsetMask& CoverFamily::volume_set() const { return impl_->v; }
unsigned CoverFamily::volume_t() const { return impl_->t; }
const StarSystem& CoverFamily::star_system() const { return *impl_->system; }
std::shared_ptr<const StarSystem> CoverFamily::star_system_ptr() const { return impl_->system; }
const std::vector<CoverFamily>& CoverFamily::parts() const { return impl_->parts; }
const CoverFamily& CoverFamily::inner() const { return impl_->parts.front(); }
unsigned CoverFamily::copy_index() const { return impl_->copy; }

Tri CoverFamily::member(const SubsetMask& s, const Budgets& budgets) const {
  const Impl& m = *impl_;
  require(s.width() == m.n, ErrorCode::invalid_argument, "subset over a different ground set");
  switch (m.kind) {
    case Kind::explicit_sets: {
      bool hit = false;
      s.for_each([&](unsigned x) {
        if (hit) return;
        for (unsigned idx : m.by_lowest[x])
          if (m.sets[idx].is_subset_of(s)) {
            hit = true;
            return;
          }
      });
      return tri_of(hit);
    }
    case Kind::singleton_levels: {
      std::vector<unsigned> ranks;
      s.for_each([&](unsigned x) { ranks.push_back(m.rank[x]); });
      std::sort(ranks.begin(), ranks.end());
      for (std::size_t j = 1; j <= ranks.size(); ++j)
        if (ranks[j - 1] < static_cast<unsigned long>(j) * m.a) return Tri::yes;
      return Tri::no;
    }
    case Kind::volume:
      return tri_of(s.intersection_count(m.v) >= m.t);
    case Kind::stars:
      return m.system->find_witness(s, budgets.witness_nodes);
    case Kind::union_of: {
      Tri out = Tri::no;
      for (const auto& p : m.parts) {
        Tri t = p.member(s, budgets);
        if (t == Tri::yes) return t;
        if (t == Tri::unknown) out = t;
      }
      return out;
    }
    case Kind::copy_projection:
      return inner().member(s.shifted(m.copy * m.n, inner().n()), budgets);
  }
  return Tri::unknown;
}

BigInt CoverFamily::size_bound() const { return size_bound(0, impl_->n); }

BigInt CoverFamily::size_bound(unsigned offset, unsigned size) const {
  const Impl& m = *impl_;
  switch (m.kind) {
    case Kind::explicit_sets: {
      BigInt c = 0;
      for (const auto& s : m.sets) c += s.within(offset, size);
      return c;
    }
    case Kind::singleton_levels: {
      BigInt c = 0;
      for (unsigned long j = 1; j <= m.n; ++j) {
        unsigned top = static_cast<unsigned>(std::min<unsigned long>(j * m.a, m.n));
        c += binomial(prefix_in_window(m.order, top, offset, size), j);
      }
      return c;
    }
    case Kind::volume:
      return binomial(m.v.window(offset, size).count(), m.t);
    case Kind::stars:
      return m.system->count_bound(offset, size);
    case Kind::union_of: {
      BigInt c = 0;
      for (const auto& p : m.parts) c += p.size_bound(offset, size);
      return c;
    }
    case Kind::copy_projection:
      return inner().size_bound(m.copy * m.n + offset, size);
  }
  return 0;
}

std::vector<SubsetMask> CoverFamily::materialize(const Budgets& budgets) const { return materialize(0, impl_->n, budgets); }

std::vector<SubsetMask> CoverFamily::materialize(unsigned offset, unsigned size, const Budgets& budgets) const {
  const Impl& m = *impl_;
  const std::size_t budget = budgets.materialize_members;
  if (m.kind != Kind::stars && size_bound(offset, size) > budget && m.kind != Kind::union_of)
    fail(ErrorCode::materialization_too_large, describe() + " has more members than the enumeration budget");
  std::vector<SubsetMask> out;
  switch (m.kind) {
    case Kind::explicit_sets:
      for (const auto& s : m.sets)
        if (s.within(offset, size)) out.push_back(s.window(offset, size));
      break;
    case Kind::singleton_levels:
      for (unsigned long j = 1; j <= m.n; ++j) {
        unsigned top = static_cast<unsigned>(std::min<unsigned long>(j * m.a, m.n));
        std::vector<unsigned> pool;
        for (unsigned i = 0; i < top; ++i)
          if (m.order[i] >= offset && m.order[i] < offset + size) pool.push_back(m.order[i] - offset);
        if (pool.size() < j) break;
        for_each_combination(static_cast<unsigned>(pool.size()), static_cast<unsigned>(j), [&](const std::vector<unsigned>& idx) {
          SubsetMask s(size);
          for (unsigned i : idx) s.set(pool[i]);
          out.push_back(std::move(s));
          return true;
        });
      }
      break;
    case Kind::volume: {
      auto pool = m.v.window(offset, size).elements();
      for_each_combination(static_cast<unsigned>(pool.size()), m.t, [&](const std::vector<unsigned>& idx) {
        SubsetMask s(size);
        for (unsigned i : idx) s.set(pool[i]);
        out.push_back(std::move(s));
        return true;
      });
      break;
    }
    case Kind::stars:
      return m.system->materialize(budget, offset, size);
    case Kind::union_of: {
      std::unordered_set<SubsetMask, SubsetMaskHash> seen;
      for (const auto& p : m.parts)
        for (auto& s : p.materialize(offset, size, budgets)) {
          seen.insert(std::move(s));
          if (seen.size() > budget) fail(ErrorCode::materialization_too_large, "union exceeds the enumeration budget");
        }
      out.assign(seen.begin(), seen.end());
      break;
    }
    case Kind::copy_projection:
      return inner().materialize(m.copy * m.n + offset, size, budgets);
  }
  sort_members(out);
  return out;
}

CoverWeight CoverFamily::weight(const Interval& p, const Budgets& budgets) const {
  return restricted_weight(p, 0, impl_->n, budgets);
}

CoverWeight CoverFamily::restricted_weight(const Interval& p, unsigned offset, unsigned size, const Budgets& budgets) const {
  const Impl& m = *impl_;
  switch (m.kind) {
    case Kind::explicit_sets: {
      if (offset == 0 && size == m.n) return {weight_of_sets(m.sets, p), false};
      return {weight_of_sets(materialize(offset, size, budgets), p), false};
    }
    case Kind::singleton_levels: {
      // levels have distinct sizes, so the union is disjoint
      std::vector<BigInt> counts(m.n + 1, BigInt(0));
      for (unsigned long j = 1; j <= m.n; ++j) {
        unsigned top = static_cast<unsigned>(std::min<unsigned long>(j * m.a, m.n));
        counts[j] = binomial(prefix_in_window(m.order, top, offset, size), j);
      }
      return {weight_from_sizes(counts, p), false};
    }
    case Kind::volume: {
      std::vector<BigInt> counts(m.t + 1, BigInt(0));
      counts[m.t] = binomial(m.v.window(offset, size).count(), m.t);
      return {weight_from_sizes(counts, p), false};
    }
    case Kind::stars: {
      if (m.system->count_bound(offset, size) <= budgets.materialize_members)
        return {weight_of_sets(m.system->materialize(budgets.materialize_members, offset, size), p), false};
      return upper_only(m.system->weight_upper_bound(p, offset, size));
    }
    case Kind::union_of: {
      if (m.parts.size() == 1) return m.parts.front().restricted_weight(p, offset, size, budgets);
      if (size_bound(offset, size) <= budgets.materialize_members) {
        try {
          return {weight_of_sets(materialize(offset, size, budgets), p), false};
        } catch (const Error& e) {
          if (e.code() != ErrorCode::materialization_too_large) throw;
        }
      }
      Interval acc = Interval::of(0, p.bits());
      for (const auto& part : m.parts) {
        CoverWeight w = part.restricted_weight(p, offset, size, budgets);
        acc = acc + w.value;
      }
      return upper_only(acc);
    }
    case Kind::copy_projection:
      return inner().restricted_weight(p, m.copy * m.n + offset, size, budgets);
  }
  return {Interval::of(0, p.bits()), false};
}

std::string CoverFamily::describe() const {
  const Impl& m = *impl_;
  switch (m.kind) {
    case Kind::explicit_sets:
      return "explicit family of " + std::to_string(m.sets.size()) + " sets";
    case Kind::singleton_levels:
      return "singleton levels (n=" + std::to_string(m.n) + ", a=" + std::to_string(m.a) + ")";
    case Kind::volume:
      return "all " + std::to_string(m.t) + "-subsets of a " + std::to_string(m.v.count()) + "-set";
    case Kind::stars:
      return "star system with " + std::to_string(m.system->levels().size()) + " levels over " +
             std::to_string(m.system->edges().size()) + " edges";
    case Kind::union_of:
      return "union of " + std::to_string(m.parts.size()) + " families";
    case Kind::copy_projection:
      return "copy " + std::to_string(m.copy) + " of " + inner().describe();
  }
  return {};
}

}  // namespace expthresh
