#include "subposets/lattice.hpp"

namespace subposets {

LatticeStats lattice_stats(int n) {
    if (n < 0) throw DomainError("negative ground set");
    return LatticeStats{n, binomial(n, n / 2), factorial(n)};
}

Rational lubell_mass(const SetFamily& family) {
    Rational total = 0;
    int n = family.n();
    for (SetWord m : family.members()) total += Rational(1, binomial(n, set_size(m)));
    return total;
}

long long upper_shadow_count(const SetFamily& family, SetWord base, int j) {
    if (j < 1) throw DomainError("shadow distance must be >= 1");
    if (!family.contains(base)) throw DomainError("shadow base is not a family member");
    int target = set_size(base) + j;
    long long count = 0;
    for (SetWord m : family.members())
        if (set_size(m) == target && subset_of(base, m)) ++count;
    return count;
}

long long lower_shadow_count(const SetFamily& family, SetWord base, int j) {
    if (j < 1) throw DomainError("shadow distance must be >= 1");
    if (!family.contains(base)) throw DomainError("shadow base is not a family member");
    int target = set_size(base) - j;
    if (target < 0) return 0;
    long long count = 0;
    for (SetWord m : family.members())
        if (set_size(m) == target && subset_of(m, base)) ++count;
    return count;
}

SetFamily up_set_quotient(const SetFamily& family, SetWord base) {
    if (!family.contains(base)) throw DomainError("quotient base is not a family member");
    int n = family.n();
    // compress the bits of [n] \ base down to a ground set of size n - |base|
    std::vector<int> shift(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i)
        if (!(base & (SetWord(1) << i))) shift[i] = next++;
    std::vector<SetWord> quot;
    for (SetWord g : family.members()) {
        if (!subset_of(base, g)) continue;
        SetWord rest = g & ~base, out = 0;
        for (int i = 0; i < n; ++i)
            if (rest & (SetWord(1) << i)) out |= SetWord(1) << shift[i];
        quot.push_back(out);
    }
    return SetFamily(GroundSet(next), std::move(quot));
}

namespace {

// Maximal chains of the interval [∅, top] avoiding `blocked` at every proper stage.
// DP over subsets of top; 2^|top| states.
BigInt chains_avoiding(SetWord top, const SetFamily& family) {
    int k = set_size(top);
    if (k == 0) return 1;
    std::vector<int> bits;
    for (int i = 0; i < 62; ++i)
        if (top & (SetWord(1) << i)) bits.push_back(i);
    std::vector<BigInt> ways(std::size_t(1) << k, 0);
    ways[0] = family.contains(0) ? 0 : 1;
    for (SetWord sub = 1; sub < (SetWord(1) << k); ++sub) {
        SetWord real = 0;
        for (int b = 0; b < k; ++b)
            if (sub & (SetWord(1) << b)) real |= SetWord(1) << bits[b];
        if (real != top && family.contains(real)) continue;  // blocked stage
        BigInt acc = 0;
        for (int b = 0; b < k; ++b)
            if (sub & (SetWord(1) << b)) acc += ways[sub ^ (SetWord(1) << b)];
        ways[sub] = acc;
    }
    return ways[(SetWord(1) << k) - 1];
}

}  // namespace

MinPartition min_partition(const SetFamily& family) {
    int n = family.n();
    if (n > 12) throw CapacityError("min_partition limited to n <= 12");
    MinPartition out;
    for (SetWord f : family.members()) {
        // chains where f is the smallest member met: lower part avoids all members,
        // upper part is free.
        BigInt lower = chains_avoiding(f, family);
        out.chains_with_min[f] = lower * factorial(n - set_size(f));
    }
    // chains meeting no member at all, computed independently so the n! identity
    // is a real check: DP over all of 2^[n].
    std::vector<BigInt> ways(std::size_t(1) << n, 0);
    ways[0] = family.contains(0) ? 0 : 1;
    for (SetWord s = 1; s < (SetWord(1) << n); ++s) {
        if (family.contains(s)) continue;
        BigInt acc = 0;
        for (int b = 0; b < n; ++b)
            if (s & (SetWord(1) << b)) acc += ways[s ^ (SetWord(1) << b)];
        ways[s] = acc;
    }
    out.empty_count = family.contains(family.ground().full_mask()) ? BigInt(0) : ways[family.ground().full_mask()];
    if (n == 0) out.empty_count = family.contains(0) ? 0 : 1;
    return out;
}

}  // namespace subposets
