#pragma once

#include "subposets/embed.hpp"

namespace subposets {

struct ExtremalResult {
    BigInt value;
    SetFamily witness;
    std::string method;  // brute | branch-and-bound | matching | flow | dp
};

/// Exact maximum size of a P-free subfamily of 2^[n]; branch-and-bound with the
/// chain Lubell quota where the pattern is a chain. n <= 5 for general patterns.
ExtremalResult la_exact(int n, const Poset& pattern);

/// Exact number of P-free families in 2^[n] (including the empty family).
/// n <= 4 general; n = 5 for the chain:2 pattern via down-set layer transfer.
BigInt count_pfree(int n, const Poset& pattern);

/// Maximum antichain of an explicit family via minimum chain cover
/// (Hopcroft–Karp matching on the strict-containment bipartite graph).
ExtremalResult max_antichain(const SetFamily& family);

/// Largest subfamily with no chain of t members: maximum (t-1)-antichain union
/// via a min-cost-flow profit formulation; witness certified by Mirsky levels.
ExtremalResult max_ct_free(const SetFamily& family, int t);

/// Mirsky levels: level(F) = length of the longest chain in the family ending at F.
std::vector<int> mirsky_levels(const SetFamily& family);

/// Partition into at most k antichains when the family height allows it.
std::optional<std::vector<SetFamily>> mirsky_partition(const SetFamily& family, int k);

/// Exact maximum P-free subfamily of an explicit family (search; small families).
ExtremalResult max_pfree_subfamily(const SetFamily& family, const Poset& pattern,
                                   std::size_t member_cap = 25);

/// Test-grade oracle: brute-force maximum antichain over all subsets (<= 20 members).
std::size_t brute_max_antichain(const SetFamily& family);

}  // namespace subposets
