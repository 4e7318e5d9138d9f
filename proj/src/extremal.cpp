#include "subposets/extremal.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "subposets/lattice.hpp"

namespace subposets {

// --- Hopcroft–Karp on the strict-containment split graph ----------------------

namespace {

struct HopcroftKarp {
    int nl, nr;
    const std::vector<std::vector<int>>& adj;  // left -> rights
    std::vector<int> match_l, match_r, level;

    HopcroftKarp(int nl_, int nr_, const std::vector<std::vector<int>>& adj_)
        : nl(nl_), nr(nr_), adj(adj_), match_l(nl, -1), match_r(nr, -1), level(nl) {}

    bool bfs() {
        std::deque<int> q;
        bool found = false;
        for (int v = 0; v < nl; ++v) {
            if (match_l[v] < 0) {
                level[v] = 0;
                q.push_back(v);
            } else {
                level[v] = -1;
            }
        }
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int u : adj[v]) {
                int w = match_r[u];
                if (w < 0)
                    found = true;
                else if (level[w] < 0) {
                    level[w] = level[v] + 1;
                    q.push_back(w);
                }
            }
        }
        return found;
    }

    bool dfs(int v) {
        for (int u : adj[v]) {
            int w = match_r[u];
            if (w < 0 || (level[w] == level[v] + 1 && dfs(w))) {
                match_l[v] = u;
                match_r[u] = v;
                return true;
            }
        }
        level[v] = -1;
        return false;
    }

    int run() {
        int matching = 0;
        while (bfs())
            for (int v = 0; v < nl; ++v)
                if (match_l[v] < 0 && dfs(v)) ++matching;
        return matching;
    }
};

std::vector<std::vector<int>> strict_containment_adjacency(const SetFamily& family) {
    std::size_t m = family.size();
    std::vector<std::vector<int>> adj(m);
    const auto& mem = family.members();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (subset_of(mem[i], mem[j]) && mem[i] != mem[j]) adj[i].push_back(int(j));
    return adj;
}

}  // namespace

ExtremalResult max_antichain(const SetFamily& family) {
    std::size_t m = family.size();
    if (m > 100000) throw CapacityError("max_antichain limited to 1e5 members");
    auto adj = strict_containment_adjacency(family);
    HopcroftKarp hk{static_cast<int>(m), static_cast<int>(m), adj};
    int matching = hk.run();

    // Koenig: antichain = elements whose left copy is reachable from an unmatched
    // left vertex by an alternating path and whose right copy is not.
    std::vector<char> zl(m, 0), zr(m, 0);
    std::deque<int> q;
    for (std::size_t v = 0; v < m; ++v)
        if (hk.match_l[v] < 0) {
            zl[v] = 1;
            q.push_back(int(v));
        }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int u : adj[v]) {
            if (zr[u]) continue;
            zr[u] = 1;
            int w = hk.match_r[u];
            if (w >= 0 && !zl[w]) {
                zl[w] = 1;
                q.push_back(w);
            }
        }
    }
    std::vector<SetWord> anti;
    for (std::size_t v = 0; v < m; ++v)
        if (zl[v] && !zr[v]) anti.push_back(family[v]);
    ExtremalResult res{BigInt(m - matching), SetFamily(family.ground(), std::move(anti)), "matching"};
    if (BigInt(res.witness.size()) != res.value)
        throw std::logic_error("antichain extraction does not match the matching value");
    return res;
}

// --- Mirsky levels -------------------------------------------------------------

std::vector<int> mirsky_levels(const SetFamily& family) {
    std::size_t m = family.size();
    std::vector<int> level(m, 1);
    const auto& mem = family.members();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (subset_of(mem[j], mem[i]) && mem[j] != mem[i])
                level[i] = std::max(level[i], level[j] + 1);
    return level;
}

std::optional<std::vector<SetFamily>> mirsky_partition(const SetFamily& family, int k) {
    auto level = mirsky_levels(family);
    int height = 0;
    for (int l : level) height = std::max(height, l);
    if (height > k) return std::nullopt;
    std::vector<std::vector<SetWord>> buckets(std::max(k, 1));
    for (std::size_t i = 0; i < family.size(); ++i) buckets[level[i] - 1].push_back(family[i]);
    std::vector<SetFamily> out;
    for (auto& b : buckets) out.emplace_back(family.ground(), std::move(b));
    return out;
}

// --- Greene–Kleitman via min-cost flow ------------------------------------------

namespace {

// Profit formulation: a unit path is a chain; it pays a spawn cost of k and
// collects 1 per element it owns. Augment while the shortest path is profitable;
// the total profit equals |F| minus the largest union of k antichains.
struct MinCostFlow {
    struct Edge {
        int to, cap, cost;
        std::size_t rev;
    };
    std::vector<std::vector<Edge>> g;
    explicit MinCostFlow(int n) : g(n) {}
    void add(int a, int b, int cap, int cost) {
        g[a].push_back({b, cap, cost, g[b].size()});
        g[b].push_back({a, 0, -cost, g[a].size() - 1});
    }
    // successive shortest augmenting paths (SPFA; costs may be negative)
    long long min_cost(int s, int t) {
        long long total = 0;
        while (true) {
            std::vector<long long> dist(g.size(), LLONG_MAX);
            std::vector<int> pe(g.size(), -1), pv(g.size(), -1);
            std::vector<char> inq(g.size(), 0);
            std::deque<int> q{s};
            dist[s] = 0;
            inq[s] = 1;
            while (!q.empty()) {
                int v = q.front();
                q.pop_front();
                inq[v] = 0;
                for (std::size_t i = 0; i < g[v].size(); ++i) {
                    const Edge& e = g[v][i];
                    if (e.cap <= 0 || dist[v] == LLONG_MAX) continue;
                    if (dist[v] + e.cost < dist[e.to]) {
                        dist[e.to] = dist[v] + e.cost;
                        pv[e.to] = v;
                        pe[e.to] = int(i);
                        if (!inq[e.to]) {
                            inq[e.to] = 1;
                            q.push_back(e.to);
                        }
                    }
                }
            }
            if (dist[t] == LLONG_MAX || dist[t] >= 0) break;  // no profitable chain left
            // unit augmentation along the path
            for (int v = t; v != s; v = pv[v]) {
                Edge& e = g[pv[v]][pe[v]];
                e.cap -= 1;
                g[v][e.rev].cap += 1;
            }
            total += dist[t];
        }
        return total;
    }
};

// d_k(family): maximum size of a union of k antichains.
long long max_k_antichain_value(const SetFamily& family, int k) {
    std::size_t m = family.size();
    if (m == 0) return 0;
    // nodes: 0 = S, 1 = T, then v_in = 2+2i, v_out = 3+2i
    MinCostFlow f(int(2 + 2 * m));
    auto vin = [](std::size_t i) { return int(2 + 2 * i); };
    auto vout = [](std::size_t i) { return int(3 + 2 * i); };
    for (std::size_t i = 0; i < m; ++i) {
        f.add(vin(i), vout(i), 1, -1);      // collect the element
        f.add(vin(i), vout(i), int(m), 0);  // pass through freely
        f.add(0, vin(i), 1, k);             // spawn a chain here, paying k
        f.add(vout(i), 1, 1, 0);
    }
    // cover edges suffice: chains travel along the Hasse diagram of the family
    const auto& mem = family.members();
    FamilyRelations rel(family);
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t* subs = rel.sub_row(i);
        for (std::size_t j = 0; j < i; ++j) {
            if (!((subs[j / 64] >> (j % 64)) & 1)) continue;
            // j < i; is it a cover within the family?
            bool covered = false;
            for (std::size_t z = 0; z < m && !covered; ++z) {
                if (z == i || z == j) continue;
                if (subset_of(mem[j], mem[z]) && subset_of(mem[z], mem[i]) && mem[z] != mem[j] &&
                    mem[z] != mem[i])
                    covered = true;
            }
            if (!covered) f.add(vout(j), vin(i), int(m), 0);
        }
    }
    long long profit = -f.min_cost(0, 1);
    return (long long)m - profit;
}

}  // namespace

ExtremalResult max_ct_free(const SetFamily& family, int t) {
    if (t < 2) throw DomainError("chain length must be >= 2");
    if (family.size() > 10000) throw CapacityError("max_ct_free limited to 1e4 members");
    int k = t - 1;
    long long value = max_k_antichain_value(family, k);

    // witness: union of the k largest Mirsky levels; optimal on full lattices and
    // usually elsewhere, exact essentiality pass as a fallback
    auto levels = mirsky_levels(family);
    int height = 0;
    for (int l : levels) height = std::max(height, l);
    std::vector<std::pair<long long, int>> level_sizes;  // (-count, level)
    for (int l = 1; l <= height; ++l) {
        long long c = std::count(levels.begin(), levels.end(), l);
        level_sizes.push_back({-c, l});
    }
    std::sort(level_sizes.begin(), level_sizes.end());
    std::vector<char> chosen_level(height + 1, 0);
    for (int i = 0; i < std::min<int>(k, int(level_sizes.size())); ++i)
        chosen_level[level_sizes[i].second] = 1;
    std::vector<SetWord> picked;
    for (std::size_t i = 0; i < family.size(); ++i)
        if (chosen_level[levels[i]]) picked.push_back(family[i]);

    SetFamily witness(family.ground(), std::move(picked));
    if ((long long)witness.size() != value) {
        if (family.size() > 2048)
            throw CapacityError("exact witness extraction limited to 2048 members here");
        // essentiality pass: drop elements whose removal keeps the optimum
        SetFamily work = family;
        for (SetWord s : family.members()) {
            SetFamily cand = work.without(s);
            if (max_k_antichain_value(cand, k) == value) work = cand;
        }
        witness = work;
    }
    if ((long long)witness.size() != value)
        throw std::logic_error("k-antichain witness does not reach the flow value");
    auto cert = mirsky_partition(witness, k);
    if (!cert) throw std::logic_error("k-antichain witness fails Mirsky certification");
    return ExtremalResult{BigInt(value), witness, "flow"};
}

// --- exact searches ---------------------------------------------------------------

namespace {

bool pattern_is_chain(const Poset& pattern) {
    for (int i = 0; i < pattern.size(); ++i)
        if (pattern.up_covers(i).size() > 1 || pattern.down_covers(i).size() > 1) return false;
    return pattern.height() == pattern.size();
}

// exhaustive include/exclude search for the maximum P-free subfamily of `universe`
ExtremalResult search_max_pfree(const SetFamily& universe, const Poset& pattern,
                                const std::string& method) {
    int n = universe.n();
    std::vector<SetWord> order(universe.members());
    // middle layers first so strong incumbents appear early
    std::stable_sort(order.begin(), order.end(), [&](SetWord a, SetWord b) {
        return std::abs(2 * set_size(a) - n) < std::abs(2 * set_size(b) - n);
    });
    bool chain = pattern_is_chain(pattern);
    int t = pattern.size();
    Rational quota = chain ? Rational(t - 1) : Rational(0);
    BigInt m_mid = binomial(n, n / 2);

    std::vector<SetWord> best, current;
    Rational mass = 0;
    std::function<void(std::size_t)> go = [&](std::size_t idx) {
        if (current.size() > best.size()) best = current;
        if (idx == order.size()) return;
        std::size_t remaining = order.size() - idx;
        if (current.size() + remaining <= best.size()) return;
        if (chain) {
            // a C_t-free family meets every maximal chain at most t-1 times, so its
            // Lubell mass is at most t-1 and its size at most (t-1-mass(current))*m + |current|
            Rational slack = quota - mass;
            if (slack < 0) return;
            BigInt room = (boost::multiprecision::numerator(slack) * m_mid) /
                          boost::multiprecision::denominator(slack);
            if (BigInt(current.size()) + boost::multiprecision::min(BigInt(remaining), room) <=
                BigInt(best.size()))
                return;
        }
        // include order[idx]
        current.push_back(order[idx]);
        SetFamily trial(universe.ground(), current);
        if (family_is_pfree(pattern, trial, pattern.size())) {
            Rational delta = Rational(1, binomial(n, set_size(order[idx])));
            mass += delta;
            go(idx + 1);
            mass -= delta;
        }
        current.pop_back();
        // exclude
        go(idx + 1);
    };
    go(0);
    SetFamily witness(universe.ground(), best);
    if (!family_is_pfree(pattern, witness, pattern.size()))
        throw std::logic_error("extremal witness fails the freeness checker");
    return ExtremalResult{BigInt(best.size()), witness, method};
}

}  // namespace

ExtremalResult la_exact(int n, const Poset& pattern) {
    bool chain = pattern_is_chain(pattern);
    if (n > 5 && !chain) throw CapacityError("la_exact limited to n <= 5 for general patterns");
    if (n > 6) throw CapacityError("la_exact search limited to n <= 6; use max_antichain / max_ct_free");
    auto res = search_max_pfree(full_lattice(n), pattern, "branch-and-bound");
    return res;
}

ExtremalResult max_pfree_subfamily(const SetFamily& family, const Poset& pattern,
                                   std::size_t member_cap) {
    if (family.size() > member_cap)
        throw CapacityError("exact mode limited to " + std::to_string(member_cap) + " members");
    return search_max_pfree(family, pattern, "brute");
}

std::size_t brute_max_antichain(const SetFamily& family) {
    std::size_t m = family.size();
    if (m > 20) throw CapacityError("brute_max_antichain limited to 20 members");
    const auto& mem = family.members();
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i)
            for (std::size_t j = i + 1; j < m && ok; ++j)
                if ((mask >> i & 1) && (mask >> j & 1))
                    if (subset_of(mem[i], mem[j]) || subset_of(mem[j], mem[i])) ok = false;
        if (ok) best = std::max(best, std::size_t(std::popcount(mask)));
    }
    return best;
}

// --- counting ------------------------------------------------------------------

namespace {

bool is_two_chain(const Poset& pattern) {
    return pattern.size() == 2 && pattern.covers().size() == 1;
}

// number of antichains of 2^[n] (equivalently down-sets) by layer transfer with
// subset-sum accumulation across each layer boundary
BigInt count_antichain_families_layered(int n) {
    // state: which layer-k sets belong to the down-set
    std::vector<SetWord> layer0 = {0};
    std::vector<BigInt> ways(2, 0);
    // layer 0: {} in or out
    ways[0] = 1;  // down-set without the empty set => the empty down-set
    ways[1] = 1;
    std::vector<SetWord> prev_layer = layer0;
    for (int k = 1; k <= n; ++k) {
        auto layer = lattice_layers(n, k, k).members();
        std::size_t pl = prev_layer.size(), cl = layer.size();
        // superset-sum over previous states so lookups are O(1)
        std::vector<BigInt> acc = ways;  // indexed by previous-layer subsets
        for (std::size_t b = 0; b < pl; ++b)
            for (std::size_t mask = 0; mask < acc.size(); ++mask)
                if (!(mask >> b & 1)) acc[mask] += acc[mask | (1ULL << b)];
        // acc[req] = number of consistent fillings whose previous state contains req
        std::vector<BigInt> next(std::size_t(1) << cl, 0);
        for (std::size_t t = 0; t < next.size(); ++t) {
            std::size_t req = 0;
            for (std::size_t b = 0; b < cl; ++b) {
                if (!(t >> b & 1)) continue;
                for (std::size_t pb = 0; pb < pl; ++pb)
                    if (subset_of(prev_layer[pb], layer[b]) &&
                        set_size(layer[b] & ~prev_layer[pb]) == 1)
                        req |= 1ULL << pb;
            }
            next[t] = acc[req];
        }
        ways = std::move(next);
        prev_layer.assign(layer.begin(), layer.end());
    }
    BigInt total = 0;
    for (const BigInt& w : ways) total += w;
    return total;
}

}  // namespace

BigInt count_pfree(int n, const Poset& pattern) {
    if (n < 0) throw DomainError("negative ground set");
    if (is_two_chain(pattern) && n == 5) {
        BigInt c = count_antichain_families_layered(5);
        return c;
    }
    if (n > 4) throw CapacityError("count_pfree limited to n <= 4 (n = 5 for chain:2)");
    std::size_t u = std::size_t(1) << n;
    BigInt count = 0;
    std::vector<SetWord> members;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << u); ++mask) {
        members.clear();
        for (std::size_t b = 0; b < u; ++b)
            if (mask >> b & 1) members.push_back(SetWord(b));
        SetFamily fam(GroundSet(n), members);
        if (family_is_pfree(pattern, fam, pattern.size())) ++count;
    }
    return count;
}

}  // namespace subposets
