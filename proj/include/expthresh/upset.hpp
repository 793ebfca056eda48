#pragma once

#include "expthresh/budgets.hpp"
#include "expthresh/monotone_family.hpp"
#include "expthresh/weight_function.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace expthresh {

/// Membership bytes indexed by the bit pattern of S (n <= budgets.enum_bits).
using UpsetTable = std::vector<std::uint8_t>;

UpsetTable upset_table(const MonotoneFamily& f, const Budgets& budgets = {});
/// Table of <g>, via a subset-sum transform of the weights.
UpsetTable upset_table(const WeightFunction& g, const Budgets& budgets = {});
UpsetTable predicate_table(unsigned n, const std::function<bool(const SubsetMask&)>& member,
                           const Budgets& budgets = {});

/// Inclusion-minimal members of a table, sorted by size then lexicographically.
std::vector<SubsetMask> minimal_elements(const UpsetTable& table, unsigned n);

/// Minimal elements of any monotone predicate by exhaustive scan.
/// BudgetExceeded when n > budgets.enum_bits.
std::vector<SubsetMask> minimal_elements(const std::function<bool(const SubsetMask&)>& member, unsigned n,
                                         const Budgets& budgets = {});

/// Minimal elements of <g>. Uses the exhaustive table when n is small and
/// otherwise searches unions of support sets (every minimal member is one).
/// BudgetExceeded when the search visits more than budgets.minimal_search_nodes states.
std::vector<SubsetMask> minimal_elements_of_upset(const WeightFunction& g, const Budgets& budgets = {});

/// <g> as a monotone family.
MonotoneFamily upset_family(const WeightFunction& g, const Budgets& budgets = {});

}  // namespace expthresh
