#include "subposets/blowup.hpp"

#include <algorithm>
#include <deque>

namespace subposets {

namespace {

constexpr long long kMaxBlowupElements = 20000;

std::vector<int> distances_from(const Poset& base, int root) {
    std::vector<int> rho(base.size());
    for (int i = 0; i < base.size(); ++i) rho[i] = base.dist(root, i);
    return rho;
}

void check_args(const Poset& base, int root, long long d) {
    if (!base.is_tree()) throw DomainError("blow-up is defined for tree posets only");
    if (root < 0 || root >= base.size()) throw DomainError("blow-up root out of range");
    if (d < 1) throw DomainError("blow-up multiplicity must be >= 1");
}

// BFS order of base elements from the root, children sorted by label; this is
// the element order every scan of a blow-up follows.
std::vector<int> base_bfs_order(const Poset& base, int root) {
    std::vector<int> order{root};
    std::vector<char> seen(base.size(), 0);
    seen[root] = 1;
    std::deque<int> q{root};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        std::vector<int> kids;
        for (int u : base.neighbors(v))
            if (!seen[u]) kids.push_back(u);
        std::sort(kids.begin(), kids.end(),
                  [&](int a, int b) { return base.label(a) < base.label(b); });
        for (int u : kids) {
            seen[u] = 1;
            order.push_back(u);
            q.push_back(u);
        }
    }
    return order;
}

}  // namespace

const std::vector<int>& BlowupPoset::group(int u, int parent_idx) const {
    auto it = groups_[u].find(parent_idx);
    if (it == groups_[u].end()) throw DomainError("no blow-up group for that parent replica");
    return it->second;
}

BigInt blow_up_size(const Poset& base, int root, long long d) {
    check_args(base, root, d);
    auto rho = distances_from(base, root);
    BigInt total = 0;
    for (int i = 0; i < base.size(); ++i) total += boost::multiprecision::pow(BigInt(d), unsigned(rho[i]));
    return total;
}

BigInt blow_up_size(const Poset& base, const std::string& root, long long d) {
    return blow_up_size(base, base.require(root), d);
}

BlowupPoset blow_up(const Poset& base, int root, long long d) {
    check_args(base, root, d);
    BigInt size = blow_up_size(base, root, d);
    if (size > kMaxBlowupElements)
        throw CapacityError("blow-up would have " + size.str() + " elements (cap " +
                            std::to_string(kMaxBlowupElements) + ")");

    BlowupPoset bp;
    bp.base = base;
    bp.root = root;
    bp.d = d;
    bp.rho = distances_from(base, root);
    bp.replicas_.assign(base.size(), {});
    bp.groups_.assign(base.size(), {});

    std::vector<std::string> labels;
    std::vector<std::pair<std::string, std::string>> covers;
    auto order = base_bfs_order(base, root);

    std::vector<int> tree_parent(base.size(), -1);
    for (int v : order)
        for (int u : base.neighbors(v))
            if (bp.rho[u] == bp.rho[v] + 1 && tree_parent[u] < 0) tree_parent[u] = v;

    // root replica
    labels.push_back(base.label(root) + "#1");
    bp.elems.push_back({root, 1, -1, false});
    bp.replicas_[root] = {0};

    for (int v : order) {
        if (v == root) continue;
        int parent = tree_parent[v];
        bool above = false;
        for (int u : base.up_covers(parent))
            if (u == v) above = true;
        long long replica = 0;
        for (int pidx : bp.replicas_[parent]) {
            auto& grp = bp.groups_[v][pidx];
            for (long long i = 0; i < d; ++i) {
                ++replica;
                int idx = int(bp.elems.size());
                std::string lbl = base.label(v) + "#" +
                                  labels[pidx].substr(labels[pidx].find('#') + 1) + "." +
                                  std::to_string(i + 1);
                if (bp.elems[pidx].parent < 0)  // parent is the root replica
                    lbl = base.label(v) + "#" + std::to_string(i + 1);
                labels.push_back(lbl);
                bp.elems.push_back({v, replica, pidx, above});
                bp.replicas_[v].push_back(idx);
                grp.push_back(idx);
                if (above)
                    covers.emplace_back(labels[pidx], lbl);
                else
                    covers.emplace_back(lbl, labels[pidx]);
            }
        }
    }

    bp.result = Poset::build(labels, covers, labels[0]);
    return bp;
}

BlowupPoset blow_up(const Poset& base, const std::string& root, long long d) {
    return blow_up(base, base.require(root), d);
}

}  // namespace subposets
