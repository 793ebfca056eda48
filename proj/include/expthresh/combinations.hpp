#pragma once

#include <vector>

namespace expthresh {

/// Calls f(idx) for every r-subset idx of {0..m-1} in lexicographic order.
/// Stops as soon as f returns false; returns false in that case.
template <class F>
bool for_each_combination(unsigned m, unsigned r, F&& f) {
  if (r > m) return true;
  std::vector<unsigned> idx(r);
  for (unsigned i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    if (!f(static_cast<const std::vector<unsigned>&>(idx))) return false;
    int i = static_cast<int>(r) - 1;
    while (i >= 0 && idx[i] == m - r + static_cast<unsigned>(i)) --i;
    if (i < 0) return true;
    ++idx[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace expthresh
