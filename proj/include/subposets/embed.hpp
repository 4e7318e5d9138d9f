#pragma once

#include "subposets/blowup.hpp"
#include "subposets/family.hpp"

namespace subposets {

/// Injective order-preserving assignment of pattern elements to family members.
struct Embedding {
    std::vector<int> assignment;  // pattern element index -> member index
};

inline constexpr int kDefaultPatternCap = 12;

/// Deterministic backtracking search for a (weak or induced) subposet copy.
/// Weak: A <= B in the pattern forces image(A) ⊂ image(B); induced additionally
/// forces incomparable pairs to incomparable images.
std::optional<Embedding> find_subposet(const Poset& pattern, const SetFamily& family,
                                       bool induced = false, int pattern_cap = kDefaultPatternCap);

bool family_is_pfree(const Poset& pattern, const SetFamily& family,
                     int pattern_cap = kDefaultPatternCap);

/// Re-verifies an embedding from scratch (the independent checker).
bool validate_embedding(const Poset& pattern, const SetFamily& family, const Embedding& emb,
                        bool induced = false);

struct BlowupEmbedding {
    BlowupPoset blowup;
    Embedding emb;  // over blowup.result elements
};

/// First copy (in the pinned scan order) of the t-blow-up of `pattern` rooted at
/// `root` inside `family`; the root image may be forced to a specific member.
std::optional<BlowupEmbedding> find_blowup_copy(const Poset& pattern, int root, long long t,
                                                const SetFamily& family,
                                                std::optional<int> forced_root_member = std::nullopt);

/// Largest t <= t_cap with a blow-up copy present (downward search), plus the
/// first copy at that t; t = 0 and no embedding when even t = 1 fails.
std::pair<long long, std::optional<BlowupEmbedding>> max_blowup_t(
    const Poset& pattern, int root, const SetFamily& family, long long t_cap);

/// Default algorithmic cap for blow-up searches on 2^[n].
inline long long default_t_cap(int n) { return n; }

}  // namespace subposets
