#pragma once

#include <cstddef>

namespace expthresh {

/// Resource limits shared by every module. Exhaustive 2^n scans are allowed
/// for n <= enum_bits; everything larger degrades to minimal-element or sampled
/// modes.
struct Budgets {
  unsigned enum_bits = 22;
  unsigned width_cap = 4096;
  std::size_t lp_variables = std::size_t{1} << 18;
  std::size_t bnb_nodes = 200000;
  std::size_t minimal_search_nodes = 2000000;
  std::size_t witness_nodes = 200000;
  std::size_t materialize_members = 1000000;
  int precision = 128;
  int max_precision = 2048;
};

}  // namespace expthresh
