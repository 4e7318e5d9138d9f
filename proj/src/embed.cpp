#include "subposets/embed.hpp"

#include <algorithm>

namespace subposets {

namespace {

// Assignment order for generic pattern search: highest cover degree first,
// then grow connectivity-first; ties broken by element index. Pinned.
std::vector<int> pattern_order(const Poset& pattern) {
    int n = pattern.size();
    std::vector<int> order;
    std::vector<char> placed(n, 0);
    auto degree = [&](int v) { return int(pattern.neighbors(v).size()); };
    while (int(order.size()) < n) {
        int best = -1, best_links = -1, best_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (placed[v]) continue;
            int links = 0;
            for (int u : pattern.neighbors(v))
                if (placed[u]) ++links;
            if (links > best_links || (links == best_links && degree(v) > best_deg)) {
                best = v;
                best_links = links;
                best_deg = degree(v);
            }
        }
        placed[best] = 1;
        order.push_back(best);
    }
    return order;
}

struct BitRow {
    std::vector<std::uint64_t> w;
    explicit BitRow(std::size_t words) : w(words, 0) {}
    void set_all(std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) w[i / 64] |= 1ULL << (i % 64);
    }
};

}  // namespace

std::optional<Embedding> find_subposet(const Poset& pattern, const SetFamily& family,
                                       bool induced, int pattern_cap) {
    int p = pattern.size();
    if (p > pattern_cap)
        throw CapacityError("pattern has " + std::to_string(p) + " elements (cap " +
                            std::to_string(pattern_cap) + ")");
    std::size_t m = family.size();
    if (m < std::size_t(p)) return std::nullopt;

    FamilyRelations rel(family);
    std::size_t words = rel.words;
    auto order = pattern_order(pattern);
    std::vector<int> pos(p);
    for (int i = 0; i < p; ++i) pos[order[i]] = i;

    std::vector<int> image(p, -1);
    std::vector<std::uint64_t> used(words, 0);

    std::function<bool(int)> place = [&](int depth) -> bool {
        if (depth == p) return true;
        int q = order[depth];
        // candidate mask from relations to already-placed elements
        std::vector<std::uint64_t> cand(words, ~0ULL);
        if (m % 64) cand[words - 1] = (1ULL << (m % 64)) - 1;
        for (int r = 0; r < p; ++r) {
            if (image[r] < 0 || r == q) continue;
            const std::uint64_t* row = nullptr;
            bool negate = false;
            if (pattern.less(q, r)) {
                row = rel.sub_row(image[r]);
            } else if (pattern.less(r, q)) {
                row = rel.sup_row(image[r]);
            } else if (induced) {
                // incomparable in the pattern: exclude anything comparable to image(r)
                for (std::size_t w = 0; w < words; ++w)
                    cand[w] &= ~(rel.sub_row(image[r])[w] | rel.sup_row(image[r])[w]);
                std::size_t i = std::size_t(image[r]);
                cand[i / 64] &= ~(1ULL << (i % 64));
                continue;
            } else {
                continue;
            }
            (void)negate;
            for (std::size_t w = 0; w < words; ++w) cand[w] &= row[w];
        }
        for (std::size_t w = 0; w < words; ++w) cand[w] &= ~used[w];
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = cand[w];
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                std::size_t idx = w * 64 + b;
                image[q] = int(idx);
                used[w] |= 1ULL << b;
                if (place(depth + 1)) return true;
                used[w] &= ~(1ULL << b);
                image[q] = -1;
            }
        }
        return false;
    };

    if (!place(0)) return std::nullopt;
    Embedding emb;
    emb.assignment = image;
    return emb;
}

bool family_is_pfree(const Poset& pattern, const SetFamily& family, int pattern_cap) {
    return !find_subposet(pattern, family, false, pattern_cap).has_value();
}

bool validate_embedding(const Poset& pattern, const SetFamily& family, const Embedding& emb,
                        bool induced) {
    int p = pattern.size();
    if (int(emb.assignment.size()) != p) return false;
    for (int i = 0; i < p; ++i) {
        int a = emb.assignment[i];
        if (a < 0 || a >= int(family.size())) return false;
        for (int j = 0; j < p; ++j) {
            if (i == j) continue;
            int b = emb.assignment[j];
            if (a == b) return false;  // injectivity
            SetWord A = family[std::size_t(a)], B = family[std::size_t(b)];
            if (pattern.less(i, j) && !(subset_of(A, B) && A != B)) return false;
            if (induced && !pattern.comparable(i, j) && (subset_of(A, B) || subset_of(B, A)))
                return false;
        }
    }
    return true;
}

std::optional<BlowupEmbedding> find_blowup_copy(const Poset& pattern, int root, long long t,
                                                const SetFamily& family,
                                                std::optional<int> forced_root_member) {
    if (t < 1) throw DomainError("blow-up multiplicity must be >= 1");
    if (blow_up_size(pattern, root, t) > BigInt(family.size())) return std::nullopt;

    BlowupPoset bp = blow_up(pattern, root, t);
    int total = bp.result.size();
    std::size_t m = family.size();
    FamilyRelations rel(family);
    std::size_t words = rel.words;

    // previous sibling inside each group, for the canonical ascending-image rule
    std::vector<int> prev_sibling(total, -1);
    for (int u = 0; u < bp.base.size(); ++u)
        for (const auto& [pidx, grp] : bp.groups_[u])
            for (std::size_t i = 1; i < grp.size(); ++i) prev_sibling[grp[i]] = grp[i - 1];

    std::vector<int> image(total, -1);
    std::vector<std::uint64_t> used(words, 0);

    std::function<bool(int)> place = [&](int depth) -> bool {
        if (depth == total) return true;
        const auto& el = bp.elems[depth];
        if (depth == 0) {
            if (forced_root_member) {
                std::size_t idx = std::size_t(*forced_root_member);
                image[0] = int(idx);
                used[idx / 64] |= 1ULL << (idx % 64);
                if (place(1)) return true;
                used[idx / 64] &= ~(1ULL << (idx % 64));
                image[0] = -1;
                return false;
            }
            for (std::size_t idx = 0; idx < m; ++idx) {
                image[0] = int(idx);
                used[idx / 64] |= 1ULL << (idx % 64);
                if (place(1)) return true;
                used[idx / 64] &= ~(1ULL << (idx % 64));
                image[0] = -1;
            }
            return false;
        }
        const std::uint64_t* row =
            el.above_parent ? rel.sup_row(image[el.parent]) : rel.sub_row(image[el.parent]);
        std::size_t start = 0;
        if (prev_sibling[depth] >= 0) start = std::size_t(image[prev_sibling[depth]]) + 1;
        for (std::size_t w = start / 64; w < words; ++w) {
            std::uint64_t bits = row[w] & ~used[w];
            if (w == start / 64 && start % 64) bits &= ~((1ULL << (start % 64)) - 1);
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                std::size_t idx = w * 64 + b;
                image[depth] = int(idx);
                used[w] |= 1ULL << b;
                if (place(depth + 1)) return true;
                used[w] &= ~(1ULL << b);
                image[depth] = -1;
            }
        }
        return false;
    };

    if (!place(0)) return std::nullopt;
    BlowupEmbedding out{std::move(bp), Embedding{image}};
    return out;
}

std::pair<long long, std::optional<BlowupEmbedding>> max_blowup_t(const Poset& pattern, int root,
                                                                  const SetFamily& family,
                                                                  long long t_cap) {
    // shrink the cap to the largest size-feasible t first
    long long t = t_cap;
    while (t >= 1 && blow_up_size(pattern, root, t) > BigInt(family.size())) --t;
    for (; t >= 1; --t) {
        auto copy = find_blowup_copy(pattern, root, t, family);
        if (copy) return {t, std::move(copy)};
    }
    return {0, std::nullopt};
}

}  // namespace subposets
