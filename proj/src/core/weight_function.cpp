#include "expthresh/weight_function.hpp"

#include "expthresh/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace expthresh {

GroundSet::GroundSet(unsigned n_, std::vector<std::string> labels_) : n(n_), labels(std::move(labels_)) {
  require(n >= 1, ErrorCode::invalid_argument, "ground set must be nonempty");
  require(labels.empty() || labels.size() == n, ErrorCode::invalid_argument, "label count must equal n");
}

WeightFunction::WeightFunction(GroundSet ground, std::vector<WeightEntry> entries) : ground_(std::move(ground)) {
  const unsigned n = ground_.n;
  entries_.reserve(entries.size());
  for (auto& e : entries) {
    require(e.set.width() == n, ErrorCode::invalid_argument, "weight entry over a different ground set");
    require(!e.set.empty(), ErrorCode::invalid_argument, "the empty set cannot carry weight");
    require(e.weight >= 0, ErrorCode::invalid_argument, "weights must be nonnegative");
    if (e.weight == 0) continue;
    entries_.push_back(std::move(e));
  }
  std::sort(entries_.begin(), entries_.end(), [](const WeightEntry& a, const WeightEntry& b) { return lex_less(a.set, b.set); });
  for (std::size_t i = 1; i < entries_.size(); ++i)
    require(!(entries_[i].set == entries_[i - 1].set), ErrorCode::invalid_argument,
            "duplicate weight entry for " + entries_[i].set.str());

  degrees_.assign(n, Rational(0));
  edge_degrees_.assign(n, 0);
  by_lowest_.assign(n, {});
  total_ = 0;
  for (unsigned idx = 0; idx < entries_.size(); ++idx) {
    const auto& e = entries_[idx];
    total_ += e.weight;
    by_lowest_[e.set.lowest()].push_back(idx);
    e.set.for_each([&](unsigned x) {
      degrees_[x] += e.weight;
      ++edge_degrees_[x];
    });
    unsigned c = e.set.count();
    if (idx == 0)
      uniform_k_ = c;
    else if (uniform_k_ && *uniform_k_ != c)
      uniform_k_.reset();
  }
}

WeightFunction WeightFunction::indicator(GroundSet ground, const std::vector<SubsetMask>& sets) {
  return constant(std::move(ground), sets, Rational(1));
}

WeightFunction WeightFunction::constant(GroundSet ground, const std::vector<SubsetMask>& sets, const Rational& c) {
  std::vector<WeightEntry> es;
  es.reserve(sets.size());
  for (const auto& s : sets) es.push_back({s, c});
  return WeightFunction(std::move(ground), std::move(es));
}

std::vector<SubsetMask> WeightFunction::support() const {
  std::vector<SubsetMask> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.set);
  return out;
}

Rational WeightFunction::max_weight() const {
  Rational m = 0;
  for (const auto& e : entries_) m = std::max(m, e.weight);
  return m;
}

std::optional<Rational> WeightFunction::constant_value() const {
  if (entries_.empty()) return std::nullopt;
  for (const auto& e : entries_)
    if (e.weight != entries_.front().weight) return std::nullopt;
  return entries_.front().weight;
}

Rational WeightFunction::weight_of(const SubsetMask& t) const {
  if (t.empty() || t.width() != n()) return 0;
  for (unsigned idx : by_lowest_[t.lowest()])
    if (entries_[idx].set == t) return entries_[idx].weight;
  return 0;
}

Rational WeightFunction::sum_within(const SubsetMask& s) const {
  Rational acc = 0;
  for_each_within(s, [&](const WeightEntry& e) { acc += e.weight; });
  return acc;
}

std::vector<Rational> WeightFunction::cardinality_polynomial() const {
  std::vector<Rational> c(1, Rational(0));
  for (const auto& e : entries_) {
    unsigned k = e.set.count();
    if (c.size() <= k) c.resize(k + 1, Rational(0));
    c[k] += e.weight;
  }
  return c;
}

unsigned WeightFunction::max_codegree() const {
  std::unordered_map<std::uint64_t, unsigned> pairs;
  unsigned best = 0;
  for (const auto& e : entries_) {
    auto xs = e.set.elements();
    for (std::size_t a = 0; a < xs.size(); ++a)
      for (std::size_t b = a + 1; b < xs.size(); ++b) {
        unsigned& c = pairs[(std::uint64_t{xs[a]} << 32) | xs[b]];
        best = std::max(best, ++c);
      }
  }
  return best;
}

WeightFunction WeightFunction::restricted_to_cardinality(unsigned k) const {
  std::vector<WeightEntry> es;
  for (const auto& e : entries_)
    if (e.set.count() == k) es.push_back(e);
  return WeightFunction(ground_, std::move(es));
}

WeightFunction WeightFunction::scaled(const Rational& c) const {
  std::vector<WeightEntry> es = entries_;
  for (auto& e : es) e.weight *= c;
  return WeightFunction(ground_, std::move(es));
}

WeightFunction WeightFunction::scaled_clamped(const Rational& c) const {
  std::vector<WeightEntry> es = entries_;
  for (auto& e : es) e.weight = std::min(Rational(e.weight * c), Rational(1));
  return WeightFunction(ground_, std::move(es));
}

Interval weight_of_function(const WeightFunction& g, const Interval& p) {
  auto c = g.cardinality_polynomial();
  Interval acc = Interval::of(0, p.bits());
  for (std::size_t j = 1; j < c.size(); ++j)
    if (c[j] != 0) acc = acc + Interval::of(c[j], p.bits()) * p.pow(static_cast<long>(j));
  return acc;
}

bool member_upset(const WeightFunction& g, const SubsetMask& s) {
  Rational acc = 0;
  bool hit = false;
  g.for_each_within(s, [&](const WeightEntry& e) {
    if (hit) return;
    acc += e.weight;
    hit = acc >= 1;
  });
  return hit;
}

Real unit_weight_p(const WeightFunction& g) {
  if (g.total() == 0) fail(ErrorCode::no_root, "w(g,1) = 0 < 1");
  if (auto k = g.uniform_k()) {
    if (g.total() < 1) fail(ErrorCode::no_root, "w(g,1) = " + to_string(g.total()) + " < 1");
    return pow(Real(g.total()), Real(Rational(-1, static_cast<long>(*k))));
  }
  auto c = g.cardinality_polynomial();
  if (g.total() < 1) fail(ErrorCode::no_root, "w(g,1) = " + to_string(g.total()) + " < 1");
  return Real::poly_root(std::move(c), Rational(1));
}

}  // namespace expthresh
