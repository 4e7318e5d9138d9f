#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "subposets/common.hpp"

namespace subposets {

using SetWord = std::uint64_t;  // subset of [n] as a bit mask, element i -> bit i-1

inline int set_size(SetWord s) { return std::popcount(s); }
inline bool subset_of(SetWord a, SetWord b) { return (a & ~b) == 0; }

/// Canonical total order on 2^[n]: ascending by (set size, then numeric value).
/// Every deterministic scan in the library follows it.
inline bool canonical_less(SetWord a, SetWord b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;
}

struct GroundSet {
    int n = 0;
    explicit GroundSet(int n_) : n(n_) {
        if (n < 0 || n > 62) throw DomainError("ground set size out of range [0,62]");
    }
    GroundSet() = default;
    SetWord full_mask() const { return n == 0 ? 0 : ((SetWord(1) << n) - 1); }
};

/// Maximum n for operations that materialize all of 2^[n].
inline constexpr int kMaxEnumerationN = 30;

/// A family of distinct subsets of [n], stored in canonical order.
class SetFamily {
public:
    SetFamily() = default;
    SetFamily(GroundSet ground, std::vector<SetWord> members);

    int n() const { return ground_.n; }
    const GroundSet& ground() const { return ground_; }
    const std::vector<SetWord>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    SetWord operator[](std::size_t i) const { return members_[i]; }

    bool contains(SetWord s) const;
    /// Index in canonical order, or -1.
    long find(SetWord s) const;

    /// Family with the given member removed (position found by value).
    SetFamily without(SetWord s) const;
    /// First `count` members in canonical order.
    SetFamily prefix(std::size_t count) const;

    /// {[n] \ F : F in family}.
    SetFamily complement_family() const;

    /// Members with size in [n/2 - n^(2/3), n/2 + n^(2/3)]; exact integer bound tests.
    SetFamily middle_band() const;
    static bool size_in_middle_band(int n, int k);

    bool operator==(const SetFamily& o) const = default;

private:
    GroundSet ground_;
    std::vector<SetWord> members_;
};

/// All of 2^[n] as a family (n capped by kMaxEnumerationN and memory).
SetFamily full_lattice(int n);

/// Union of layers lo..hi of 2^[n].
SetFamily lattice_layers(int n, int lo, int hi);

/// Per-member strict containment relations as packed bit rows over member indices.
struct FamilyRelations {
    std::size_t count = 0;
    std::size_t words = 0;
    std::vector<std::uint64_t> sub;  // row i: bits of j with member[j] strictly below member[i]
    std::vector<std::uint64_t> sup;  // row i: bits of j with member[j] strictly above member[i]

    explicit FamilyRelations(const SetFamily& family);
    const std::uint64_t* sub_row(std::size_t i) const { return sub.data() + i * words; }
    const std::uint64_t* sup_row(std::size_t i) const { return sup.data() + i * words; }
    std::size_t sub_count(std::size_t i) const;
    std::size_t sup_count(std::size_t i) const;
};

// --- family file format ---------------------------------------------------
// first line `n=<k>`; then one member per line as either a comma separated
// sorted element list ("1,3,4"), a hex mask ("0x1d"), or "{}" for the empty
// set; '#' starts a comment.

SetFamily parse_family(std::istream& in);
SetFamily load_family(const std::string& path);
void write_family(std::ostream& out, const SetFamily& family);
std::string format_member(SetWord s);

}  // namespace subposets
