#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "subposets/common.hpp"

namespace subposets {

/// Finite poset given by labels and oriented cover pairs (the Hasse diagram).
/// Validated on construction: acyclic, covers not implied by transitivity.
class Poset {
public:
    struct Cover {
        int lower, upper;
        bool operator==(const Cover&) const = default;
        auto operator<=>(const Cover&) const = default;
    };

    static Poset build(std::vector<std::string> labels,
                       std::vector<std::pair<std::string, std::string>> cover_labels,
                       std::optional<std::string> root = std::nullopt);

    int size() const { return int(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[i]; }
    int index_of(const std::string& label) const;  // -1 when absent
    int require(const std::string& label) const;   // DomainError when absent

    const std::vector<Cover>& covers() const { return covers_; }
    const std::vector<int>& up_covers(int i) const { return up_[i]; }
    const std::vector<int>& down_covers(int i) const { return down_[i]; }
    const std::vector<int>& neighbors(int i) const { return adj_[i]; }

    bool leq(int a, int b) const;  // a <= b in the order (reflexive)
    bool less(int a, int b) const { return a != b && leq(a, b); }
    bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

    int height() const { return height_; }
    bool is_tree() const { return is_tree_; }
    int dist(int a, int b) const { return dist_[a][b]; }  // undirected Hasse distance, -1 if disconnected

    std::optional<int> root() const { return root_; }
    Poset with_root(const std::string& label) const;

    Poset dual() const;

    /// Induced subposet on the given element indices (covers recomputed from the
    /// restricted Hasse diagram; valid for pendant deletions from trees).
    Poset restrict(const std::vector<int>& keep) const;

    bool same_diagram(const Poset& other) const;  // equal labels and cover pairs

private:
    std::vector<std::string> labels_;
    std::vector<Cover> covers_;
    std::vector<std::vector<int>> up_, down_, adj_;
    std::vector<std::vector<std::uint64_t>> leq_rows_;
    std::vector<std::vector<int>> dist_;
    int height_ = 0;
    bool is_tree_ = false;
    std::optional<int> root_;

    void derive();
};

/// (radius, centers) of the undirected Hasse diagram; tree posets only.
std::pair<int, std::vector<int>> radius_and_centers(const Poset& poset);

/// Exhaustive poset isomorphism on small inputs (test oracle and reduction helper).
bool poset_isomorphic(const Poset& a, const Poset& b);

// --- named patterns ---------------------------------------------------------

struct CatalogEntry {
    std::string name;
    std::vector<long long> params;
    Poset poset;  // root set when the pattern has a designated one
};

/// Named pattern posets: chain:t, wedge, vee, y, yd, s, splus, spp, n,
/// fork:t, tree:t,h, diamond:k.
CatalogEntry catalog(const std::string& name, const std::vector<long long>& params = {});

/// Parse "chain:3", "tree:2,3", "wedge", ... into a catalog entry.
CatalogEntry parse_pattern_shorthand(const std::string& text);

/// All catalog shapes with small sample parameters, for sweep tests.
std::vector<CatalogEntry> catalog_samples();

// --- reductions -------------------------------------------------------------

/// Applies the two blow-up-preserving reduction moves until fixpoint:
/// (1) delete a pendant leaf path that is orientation-matched by a longer path
///     from the same branch vertex, (2) delete a component of P \ {root} that
///     embeds (orientation-preserving, rooted at its attachment) into a sibling
///     component with matching attachment orientation. Moves are applied
///     lexicographically-smallest-first for reproducibility.
Poset reduce_equiv(const Poset& poset, const std::string& root);

// --- poset file format (JSON): {"elements": [...], "covers": [[lo,up],...], "root": "x"}

Poset parse_poset_json(const std::string& text);
Poset load_poset(const std::string& path);
std::string poset_to_json(const Poset& poset);

}  // namespace subposets
