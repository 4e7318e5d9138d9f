#pragma once

#include <map>

#include "subposets/family.hpp"

namespace subposets {

struct LatticeStats {
    int n;
    BigInt m;            // binomial(n, floor(n/2))
    BigInt chain_count;  // n!, the number of maximal chains of 2^[n]
};

LatticeStats lattice_stats(int n);

/// Lubell mass: sum over members of 1/binomial(n, |F|), as an exact rational.
Rational lubell_mass(const SetFamily& family);

/// Number of family members G with base ⊆ G and |G| = |base| + j.
long long upper_shadow_count(const SetFamily& family, SetWord base, int j);
/// Mirror: members G with G ⊆ base and |G| = |base| - j.
long long lower_shadow_count(const SetFamily& family, SetWord base, int j);

/// {G \ base : G in family, base ⊆ G}, relabeled onto a ground set of size n - |base|.
/// Always contains the empty set (from G = base).
SetFamily up_set_quotient(const SetFamily& family, SetWord base);

/// Classification of the n! maximal chains by the smallest family member they meet.
struct MinPartition {
    std::map<SetWord, BigInt> chains_with_min;  // F -> #chains whose smallest family member is F
    BigInt empty_count;                         // chains meeting no member
};

/// Exact counts, computed combinatorially (subset DP per member), n <= 12.
MinPartition min_partition(const SetFamily& family);

}  // namespace subposets
