#include "expthresh/instances/instances.hpp"

#include "expthresh/combinations.hpp"
#include "expthresh/errors.hpp"
#include "expthresh/json_io.hpp"
#include "expthresh/random.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace expthresh {

namespace {

SubsetMask random_k_set(Rng& rng, unsigned n, unsigned k) {
  std::vector<unsigned> all(n);
  std::iota(all.begin(), all.end(), 0u);
  for (unsigned i = 0; i < k; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
  return SubsetMask::from_elements(n, std::vector<unsigned>(all.begin(), all.begin() + k));
}

std::vector<SubsetMask> all_k_sets(unsigned n, unsigned k) {
  std::vector<SubsetMask> out;
  for_each_combination(n, k, [&](const std::vector<unsigned>& idx) {
    out.push_back(SubsetMask::from_elements(n, idx));
    return true;
  });
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

}  // namespace

std::vector<SubsetMask> k_ap_hypergraph(unsigned n, unsigned k) {
  require(k >= 2 && n >= k, ErrorCode::invalid_argument, "progressions need n >= k >= 2");
  std::vector<SubsetMask> out;
  for (unsigned a = 0; a < n; ++a)
    for (unsigned d = 1; a + (k - 1) * d < n; ++d) {
      SubsetMask s(n);
      for (unsigned j = 0; j < k; ++j) s.set(a + j * d);
      out.push_back(s);
    }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<SubsetMask> random_linear_hypergraph(unsigned n, unsigned k, unsigned target_edges, std::uint64_t seed) {
  require(k >= 2 && n >= k, ErrorCode::invalid_argument, "linear hypergraphs need n >= k >= 2");
  Rng rng(seed);
  std::vector<SubsetMask> out;
  for (unsigned long draw = 0; draw < 50ul * target_edges && out.size() < target_edges; ++draw) {
    SubsetMask s = random_k_set(rng, n, k);
    if (std::all_of(out.begin(), out.end(), [&](const SubsetMask& e) { return e.intersection_count(s) <= 1; }))
      out.push_back(s);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<SubsetMask> fano_plane() {
  const unsigned lines[7][3] = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  std::vector<SubsetMask> out;
  for (const auto& l : lines) out.push_back(SubsetMask::from_elements(7, {l[0], l[1], l[2]}));
  return out;
}

bool is_linear(const std::vector<SubsetMask>& sets) {
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = a + 1; b < sets.size(); ++b)
      if (sets[a].intersection_count(sets[b]) >= 2) return false;
  return true;
}

WeightFunction halving_example(unsigned n, unsigned k) {
  require(n % 2 == 0 && n >= 2 * k && k >= 1, ErrorCode::invalid_argument, "halving example needs even n >= 2k");
  return WeightFunction::constant(GroundSet(n), all_k_sets(n, k), Rational(BigInt(1), binomial(n / 2, k)));
}

MonotoneFamily random_monotone_family(unsigned n, std::uint64_t seed, unsigned sets) {
  require(n >= 1, ErrorCode::invalid_argument, "family needs n >= 1");
  Rng rng(seed);
  if (sets == 0) sets = 1 + static_cast<unsigned>(rng.below(2 * n));
  const unsigned kmax = std::max(1u, n / 2);
  std::vector<SubsetMask> gens;
  for (unsigned i = 0; i < sets; ++i) gens.push_back(random_k_set(rng, n, 1 + static_cast<unsigned>(rng.below(kmax))));
  return MonotoneFamily::generated_by(GroundSet(n), std::move(gens));
}

WeightFunction random_weights_on(unsigned n, const std::vector<SubsetMask>& support, std::uint64_t seed, WeightLaw law) {
  require(law.denominator >= 1, ErrorCode::invalid_argument, "weight grid needs a positive denominator");
  Rng rng(seed);
  std::vector<WeightEntry> es;
  for (const auto& s : support)
    es.push_back({s, Rational(static_cast<long>(1 + rng.below(law.denominator)), static_cast<long>(law.denominator))});
  return WeightFunction(GroundSet(n), std::move(es));
}

WeightFunction random_weight_function(unsigned n, unsigned k, std::uint64_t seed, unsigned edges, WeightLaw law) {
  require(k >= 1 && n >= k, ErrorCode::invalid_argument, "weights need n >= k >= 1");
  std::vector<SubsetMask> support;
  Rng rng(seed ^ 0x5bd1e995u);
  if (edges == 0 || BigInt(edges) >= binomial(n, k)) {
    support = all_k_sets(n, k);
  } else {
    std::vector<SubsetMask> picked;
    while (picked.size() < edges) {
      SubsetMask s = random_k_set(rng, n, k);
      if (std::find(picked.begin(), picked.end(), s) == picked.end()) picked.push_back(s);
    }
    std::sort(picked.begin(), picked.end(), lex_less);
    support = std::move(picked);
  }
  return random_weights_on(n, support, seed, law);
}

WeightFunction clique_indicator(unsigned v, unsigned s) {
  require(v >= s && s >= 2, ErrorCode::invalid_argument, "cliques need v >= s >= 2");
  const unsigned n = v * (v - 1) / 2;
  std::vector<std::vector<unsigned>> edge_id(v, std::vector<unsigned>(v));
  for (unsigned a = 0, id = 0; a < v; ++a)
    for (unsigned b = a + 1; b < v; ++b, ++id) edge_id[a][b] = edge_id[b][a] = id;
  std::vector<SubsetMask> sets;
  for_each_combination(v, s, [&](const std::vector<unsigned>& vs) {
    SubsetMask m(n);
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b) m.set(edge_id[vs[a]][vs[b]]);
    sets.push_back(m);
    return true;
  });
  std::sort(sets.begin(), sets.end(), lex_less);
  return WeightFunction::indicator(GroundSet(n), sets);
}

namespace {

const std::map<InstanceKind, std::string>& kind_names() {
  static const std::map<InstanceKind, std::string> names = {
      {InstanceKind::k_ap, "k_ap"},
      {InstanceKind::random_linear, "random_linear"},
      {InstanceKind::halving, "halving"},
      {InstanceKind::random_monotone, "random_monotone"},
      {InstanceKind::random_weights, "random_weights"},
      {InstanceKind::fano, "fano"},
      {InstanceKind::clique, "clique"}};
  return names;
}

}  // namespace

std::string to_string(InstanceKind kind) { return kind_names().at(kind); }

InstanceKind parse_instance_kind(const std::string& name) {
  for (const auto& [k, s] : kind_names())
    if (s == name) return k;
  fail(ErrorCode::parse_error, "unknown instance kind '" + name + "'");
}

void InstanceSpec::validate() const {
  require(law.denominator >= 1, ErrorCode::invalid_argument, "weight grid needs a positive denominator");
  switch (kind) {
    case InstanceKind::k_ap:
    case InstanceKind::random_linear:
      require(k >= 2 && n >= k, ErrorCode::invalid_argument, "needs n >= k >= 2");
      break;
    case InstanceKind::halving:
      require(k >= 1 && n % 2 == 0 && n >= 2 * k, ErrorCode::invalid_argument, "needs even n >= 2k");
      break;
    case InstanceKind::random_monotone:
      require(n >= 1, ErrorCode::invalid_argument, "needs n >= 1");
      break;
    case InstanceKind::random_weights:
      require(k >= 1 && n >= k, ErrorCode::invalid_argument, "needs n >= k >= 1");
      break;
    case InstanceKind::fano:
      break;
    case InstanceKind::clique:
      require(k >= 2 && n >= k, ErrorCode::invalid_argument, "needs vertices n >= clique size k >= 2");
      break;
  }
  require(n <= 4096, ErrorCode::budget_exceeded, "ground set too large");
}

InstanceSpec InstanceSpec::from_json(const nlohmann::json& j) {
  InstanceSpec s;
  try {
    s.kind = parse_instance_kind(j.at("kind").get<std::string>());
    s.n = j.value("n", s.n);
    s.k = j.value("k", s.k);
    s.edges = j.value("edges", s.edges);
    s.seed = j.value("seed", s.seed);
    s.law.denominator = j.value("denominator", s.law.denominator);
    s.weighted = j.value("weighted", s.weighted);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("instance spec: ") + e.what());
  }
  s.validate();
  return s;
}

nlohmann::json InstanceSpec::to_json() const {
  return {{"kind", to_string(kind)}, {"n", n},       {"k", k}, {"edges", edges}, {"seed", seed},
          {"denominator", law.denominator}, {"weighted", weighted}};
}

nlohmann::json generate_instance(const InstanceSpec& spec) {
  spec.validate();
  nlohmann::json out = {{"kind", to_string(spec.kind)}, {"spec", spec.to_json()}};
  auto on_support = [&](unsigned n, const std::vector<SubsetMask>& support) {
    return spec.weighted ? random_weights_on(n, support, spec.seed, spec.law)
                         : WeightFunction::indicator(GroundSet(n), support);
  };
  switch (spec.kind) {
    case InstanceKind::k_ap:
      out["weights"] = expthresh::to_json(on_support(spec.n, k_ap_hypergraph(spec.n, spec.k)));
      break;
    case InstanceKind::random_linear:
      out["weights"] = expthresh::to_json(
          on_support(spec.n, random_linear_hypergraph(spec.n, spec.k, spec.edges ? spec.edges : spec.n, spec.seed)));
      break;
    case InstanceKind::fano:
      out["weights"] = expthresh::to_json(on_support(7, fano_plane()));
      break;
    case InstanceKind::halving:
      out["weights"] = expthresh::to_json(halving_example(spec.n, spec.k));
      break;
    case InstanceKind::random_weights:
      out["weights"] = expthresh::to_json(random_weight_function(spec.n, spec.k, spec.seed, spec.edges, spec.law));
      break;
    case InstanceKind::clique:
      out["weights"] = expthresh::to_json(clique_indicator(spec.n, spec.k));
      break;
    case InstanceKind::random_monotone:
      out["family"] = expthresh::to_json(random_monotone_family(spec.n, spec.seed, spec.edges));
      break;
  }
  return out;
}

}  // namespace expthresh
