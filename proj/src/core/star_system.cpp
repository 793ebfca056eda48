#include "expthresh/star_system.hpp"

#include "expthresh/combinations.hpp"
#include "expthresh/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace expthresh {

StarSystem::StarSystem(unsigned n, unsigned k, std::vector<SubsetMask> edges, std::vector<StarLevel> levels, Real L,
                       Rational sum_g, int precision, int max_precision)
    : n_(n),
      k_(k),
      edges_(std::move(edges)),
      levels_(std::move(levels)),
      L_(std::move(L)),
      sum_g_(std::move(sum_g)),
      precision_(precision),
      max_precision_(max_precision) {
  require(k_ >= 2, ErrorCode::invalid_argument, "star systems need k >= 2");
  require(sum_g_ > 0, ErrorCode::invalid_argument, "star system needs a positive total weight");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    require(levels_[i].b >= 1 && levels_[i].edges >= 1, ErrorCode::invalid_argument, "star levels must be positive");
    if (i) require(levels_[i].edges > levels_[i - 1].edges, ErrorCode::invalid_argument, "star level sizes must increase");
  }
  incident_.assign(n_, {});
  for (unsigned e = 0; e < edges_.size(); ++e) {
    require(edges_[e].width() == n_ && edges_[e].count() == k_, ErrorCode::invalid_argument, "star system edges must be k-sets");
    edges_[e].for_each([&](unsigned x) { incident_[x].push_back(e); });
  }
  // linearity: two edges through a common vertex share nothing else
  for (unsigned x = 0; x < n_; ++x)
    for (std::size_t a = 0; a < incident_[x].size(); ++a)
      for (std::size_t b = a + 1; b < incident_[x].size(); ++b)
        require(edges_[incident_[x][a]].intersection_count(edges_[incident_[x][b]]) == 1, ErrorCode::precondition_violated,
                "star system support is not linear");

  coef_ = L_ / (Real(8) * Real::e() * Real(static_cast<long>(k_))) *
          pow(Real(sum_g_), Real(Rational(1 - static_cast<long>(k_), static_cast<long>(k_))));
  Interval c = coef_.eval(precision_);
  threshold_enclosure_.reserve(n_);
  first_level_.assign(n_, levels_.size());
  for (unsigned x = 0; x < n_; ++x) {
    threshold_enclosure_.push_back(c * Interval::of(static_cast<long>(degree(x)), precision_));
    for (std::size_t i = 0; i < levels_.size(); ++i)
      if (meets_threshold(x, levels_[i].edges)) {
        first_level_[x] = i;
        break;
      }
  }
}

Real StarSystem::threshold(unsigned x) const { return coef_ * Real(static_cast<long>(degree(x))); }

bool StarSystem::meets_threshold(unsigned x, unsigned d) const {
  Interval dv = Interval::of(static_cast<long>(d), precision_);
  Tri t = certainly_le(threshold_enclosure_[x], dv);
  if (t == Tri::unknown) t = certify_le(threshold(x), Real(static_cast<long>(d)), precision_ * 2, max_precision_);
  return t == Tri::yes;
}

std::optional<StarWitness> StarSystem::greedy_witness(const SubsetMask& s) const {
  SubsetMask rest = s;
  std::vector<Star> greedy;
  while (true) {
    unsigned best_x = n_, best_d = 0;
    std::vector<unsigned> best_edges;
    rest.for_each([&](unsigned x) {
      std::vector<unsigned> inside;
      for (unsigned e : incident_[x])
        if (edges_[e].is_subset_of(rest)) inside.push_back(e);
      unsigned d = static_cast<unsigned>(inside.size());
      if (d > best_d && meets_threshold(x, d)) {
        best_x = x;
        best_d = d;
        best_edges = std::move(inside);
      }
    });
    if (best_x == n_) break;
    for (unsigned e : best_edges) rest -= edges_[e];
    greedy.push_back({best_x, std::move(best_edges)});
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const unsigned li = levels_[i].edges;
    StarWitness w;
    w.level = i;
    for (const auto& st : greedy) {
      if (st.edges.size() < li || !qualifies(st.center, i)) continue;
      Star trimmed{st.center, std::vector<unsigned>(st.edges.begin(), st.edges.begin() + li)};
      w.stars.push_back(std::move(trimmed));
      if (w.stars.size() == levels_[i].b) return w;
    }
  }
  return std::nullopt;
}

Tri StarSystem::find_witness(const SubsetMask& s, std::size_t node_budget, StarWitness* out) const {
  if (auto w = greedy_witness(s)) {
    if (out) *out = std::move(*w);
    return Tri::yes;
  }
  std::size_t nodes = 0;
  bool exhausted = false;
  for (std::size_t i = 0; i < levels_.size() && !exhausted; ++i) {
    const unsigned li = levels_[i].edges, bi = levels_[i].b;
    std::vector<unsigned> cands;
    s.for_each([&](unsigned x) {
      if (!qualifies(x, i)) return;
      unsigned d = 0;
      for (unsigned e : incident_[x]) d += edges_[e].is_subset_of(s);
      if (d >= li) cands.push_back(x);
    });
    if (cands.size() < bi) continue;
    std::vector<Star> chosen;
    // depth-first over centers in increasing order
    auto search = [&](auto&& self, std::size_t from, const SubsetMask& used) -> bool {
      if (chosen.size() == bi) return true;
      if (cands.size() - from < bi - chosen.size()) return false;
      for (std::size_t ci = from; ci < cands.size(); ++ci) {
        unsigned x = cands[ci];
        if (used.test(x)) continue;
        std::vector<unsigned> avail;
        for (unsigned e : incident_[x])
          if (edges_[e].is_subset_of(s) && !edges_[e].intersects(used)) avail.push_back(e);
        if (avail.size() < li) continue;
        bool found = false;
        bool cont = for_each_combination(static_cast<unsigned>(avail.size()), li, [&](const std::vector<unsigned>& idx) {
          if (++nodes > node_budget) {
            exhausted = true;
            return false;
          }
          SubsetMask verts = used;
          Star st{x, {}};
          for (unsigned j : idx) {
            verts |= edges_[avail[j]];
            st.edges.push_back(avail[j]);
          }
          chosen.push_back(std::move(st));
          if (self(self, ci + 1, verts)) {
            found = true;
            return false;
          }
          chosen.pop_back();
          return !exhausted;
        });
        if (found) return true;
        if (!cont && exhausted) return false;
      }
      return false;
    };
    if (search(search, 0, SubsetMask(n_))) {
      if (out) {
        out->level = i;
        out->stars = chosen;
        out->from_greedy = false;
      }
      return Tri::yes;
    }
  }
  return exhausted ? Tri::unknown : Tri::no;
}

SubsetMask StarSystem::witness_vertices(const StarWitness& w) const {
  SubsetMask v(n_);
  for (const auto& st : w.stars)
    for (unsigned e : st.edges) v |= edges_[e];
  return v;
}

std::string StarSystem::check_witness(const StarWitness& w, const SubsetMask& s) const {
  if (w.level >= levels_.size()) return "level out of range";
  const auto& lv = levels_[w.level];
  if (w.stars.size() != lv.b) return "wrong number of stars";
  SubsetMask seen(n_);
  for (const auto& st : w.stars) {
    if (st.edges.size() != lv.edges) return "star at " + std::to_string(st.center) + " has the wrong size";
    if (!qualifies(st.center, w.level)) return "center " + std::to_string(st.center) + " is above the degree threshold";
    SubsetMask verts(n_);
    for (std::size_t a = 0; a < st.edges.size(); ++a) {
      const auto& ea = edges_[st.edges[a]];
      if (!ea.test(st.center)) return "edge misses its center";
      for (std::size_t b = a + 1; b < st.edges.size(); ++b) {
        SubsetMask both = ea & edges_[st.edges[b]];
        if (both.count() != 1 || !both.test(st.center)) return "edges do not meet exactly in the center";
      }
      verts |= ea;
    }
    if (verts.intersects(seen)) return "stars are not vertex-disjoint";
    seen |= verts;
  }
  if (!seen.is_subset_of(s)) return "witness leaves S";
  return {};
}

std::vector<SubsetMask> StarSystem::materialize(std::size_t budget, unsigned offset, unsigned size) const {
  std::unordered_set<SubsetMask, SubsetMaskHash> out;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const unsigned li = levels_[i].edges, bi = levels_[i].b;
    std::vector<SubsetMask> stars;
    for (unsigned x = offset; x < offset + size && x < n_; ++x) {
      if (!qualifies(x, i)) continue;
      std::vector<unsigned> inside;
      for (unsigned e : incident_[x])
        if (edges_[e].within(offset, size)) inside.push_back(e);
      for_each_combination(static_cast<unsigned>(inside.size()), li, [&](const std::vector<unsigned>& idx) {
        SubsetMask v(n_);
        for (unsigned j : idx) v |= edges_[inside[j]];
        stars.push_back(std::move(v));
        if (stars.size() > budget) fail(ErrorCode::materialization_too_large, "star family exceeds the enumeration budget");
        return true;
      });
    }
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t from, const SubsetMask& acc) -> void {
      if (pick.size() == bi) {
        out.insert(acc.window(offset, size));
        if (out.size() > budget) fail(ErrorCode::materialization_too_large, "star family exceeds the enumeration budget");
        return;
      }
      for (std::size_t j = from; j < stars.size(); ++j) {
        if (stars[j].intersects(acc)) continue;
        pick.push_back(j);
        self(self, j + 1, acc | stars[j]);
        pick.pop_back();
      }
    };
    rec(rec, 0, SubsetMask(n_));
  }
  std::vector<SubsetMask> v(out.begin(), out.end());
  std::sort(v.begin(), v.end(), [](const SubsetMask& a, const SubsetMask& b) {
    return a.count() != b.count() ? a.count() < b.count() : lex_less(a, b);
  });
  return v;
}

std::vector<BigInt> StarSystem::level_counts(unsigned offset, unsigned size) const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const unsigned li = levels_[i].edges, bi = levels_[i].b;
    std::vector<BigInt> e(bi + 1, BigInt(0));
    e[0] = 1;
    for (unsigned x = offset; x < offset + size && x < n_; ++x) {
      if (!qualifies(x, i)) continue;
      unsigned d = 0;
      for (unsigned ed : incident_[x]) d += edges_[ed].within(offset, size);
      BigInt w = binomial(d, li);
      if (w == 0) continue;
      for (unsigned j = bi; j >= 1; --j) e[j] += e[j - 1] * w;
    }
    out.push_back(e[bi]);
  }
  return out;
}

BigInt StarSystem::count_bound(unsigned offset, unsigned size) const {
  BigInt total = 0;
  for (const auto& c : level_counts(offset, size)) total += c;
  return total;
}

Interval StarSystem::weight_upper_bound(const Interval& p, unsigned offset, unsigned size) const {
  const int bits = p.bits();
  Interval total = Interval::of(0, bits);
  auto counts = level_counts(offset, size);
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (counts[i] == 0) continue;
    long exponent = static_cast<long>(levels_[i].b) * (static_cast<long>(k_ - 1) * levels_[i].edges + 1);
    total = total + Interval::of(Rational(counts[i]), bits) * p.pow(exponent);
  }
  return total;
}

}  // namespace expthresh
