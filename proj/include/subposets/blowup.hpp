#pragma once

#include "subposets/poset.hpp"

namespace subposets {

/// The d-fold blow-up of a rooted tree poset: an element at undirected Hasse
/// distance rho from the root becomes d^rho replicas, attached in groups of d
/// to the replicas of its tree parent, keeping each edge's orientation.
struct BlowupPoset {
    Poset base;
    int root = 0;
    long long d = 1;
    std::vector<int> rho;  // per base element, distance from root

    Poset result;  // materialized blow-up, labels like "u#2.1"
    struct Elem {
        int base_elem;       // index into base
        long long replica;   // 1-based within the base element's replicas
        int parent;          // result index of the attachment replica, -1 for root
        bool above_parent;   // orientation of the edge to the parent
    };
    std::vector<Elem> elems;  // parallel to result elements; construction order is BFS

    /// Replica indices of base element `u` attached to parent replica `parent_idx`
    /// (a result index); the group has size d.
    const std::vector<int>& group(int u, int parent_idx) const;

    /// Result indices of all replicas of base element u.
    const std::vector<int>& replicas_of(int u) const { return replicas_[u]; }

    std::vector<std::vector<int>> replicas_;
    std::vector<std::map<int, std::vector<int>>> groups_;  // per base elem: parent result idx -> group
};

/// Total blow-up size  sum_u d^rho(u)  without materializing anything.
BigInt blow_up_size(const Poset& base, int root, long long d);
BigInt blow_up_size(const Poset& base, const std::string& root, long long d);

/// Materialize the blow-up (capacity-guarded). d = 1 reproduces the base poset.
BlowupPoset blow_up(const Poset& base, int root, long long d);
BlowupPoset blow_up(const Poset& base, const std::string& root, long long d);

}  // namespace subposets
