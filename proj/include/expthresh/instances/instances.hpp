#pragma once

#include "expthresh/monotone_family.hpp"
#include "expthresh/weight_function.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace expthresh {

/// Every k-term progression {a, a+d, ..., a+(k-1)d} inside {0, ..., n-1}, d > 0,
/// in lexicographic order.
std::vector<SubsetMask> k_ap_hypergraph(unsigned n, unsigned k);

/// Greedy partial Steiner system: random k-sets are kept when they share at
/// most one element with every kept set. At most target_edges sets, fewer if
/// 50 * target_edges draws are not enough.
std::vector<SubsetMask> random_linear_hypergraph(unsigned n, unsigned k, unsigned target_edges, std::uint64_t seed);

/// Lines of the Fano plane on {0, ..., 6}.
std::vector<SubsetMask> fano_plane();

/// Largest number of sets through a pair is at most 1.
bool is_linear(const std::vector<SubsetMask>& sets);

/// binom(n/2, k)^-1 on every k-subset of an n-set; <g> = {S : |S| >= n/2}.
WeightFunction halving_example(unsigned n, unsigned k);

/// Random sets of size 1..max(1, n/2), pruned to an antichain.
MonotoneFamily random_monotone_family(unsigned n, std::uint64_t seed, unsigned sets = 0);

/// Weights on the grid {1/d, ..., d/d}, d = denominator.
struct WeightLaw {
  unsigned denominator = 16;
};

/// Uniform k-set weights drawn from `law` on `edges` distinct random k-sets
/// (all k-sets when edges is 0 or exceeds their number).
WeightFunction random_weight_function(unsigned n, unsigned k, std::uint64_t seed, unsigned edges = 0,
                                      WeightLaw law = {});
/// The same law on a given support.
WeightFunction random_weights_on(unsigned n, const std::vector<SubsetMask>& support, std::uint64_t seed,
                                 WeightLaw law = {});

/// Indicator of the s-cliques of K_v, on the binom(v,2) edges.
WeightFunction clique_indicator(unsigned v, unsigned s);

enum class InstanceKind { k_ap, random_linear, halving, random_monotone, random_weights, fano, clique };

struct InstanceSpec {
  InstanceKind kind = InstanceKind::random_weights;
  unsigned n = 8;
  unsigned k = 2;
  unsigned edges = 0;   // random_linear target, random_weights support size
  std::uint64_t seed = 0;
  WeightLaw law;
  bool weighted = true;  // k_ap, random_linear, fano: random weights (else weight 1)

  void validate() const;
  static InstanceSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

std::string to_string(InstanceKind kind);
InstanceKind parse_instance_kind(const std::string& name);

/// {"kind": .., "spec": {..}, "weights": ..} or {"kind": .., "spec": {..}, "family": ..}.
nlohmann::json generate_instance(const InstanceSpec& spec);

}  // namespace expthresh
