#include "subposets/poset.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace subposets {

namespace {
constexpr int kMaxPosetElements = 20000;
}

Poset Poset::build(std::vector<std::string> labels,
                   std::vector<std::pair<std::string, std::string>> cover_labels,
                   std::optional<std::string> root) {
    Poset p;
    if (labels.empty()) throw DomainError("poset needs at least one element");
    if (int(labels.size()) > kMaxPosetElements) throw CapacityError("poset too large");
    p.labels_ = std::move(labels);
    std::map<std::string, int> index;
    for (int i = 0; i < p.size(); ++i) {
        if (!index.emplace(p.labels_[i], i).second)
            throw DomainError("duplicate element label: " + p.labels_[i]);
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& [lo, up] : cover_labels) {
        auto li = index.find(lo), ui = index.find(up);
        if (li == index.end() || ui == index.end())
            throw DomainError("cover references unknown element: " + lo + " < " + up);
        if (li->second == ui->second) throw DomainError("self-cover on " + lo);
        if (!seen.emplace(li->second, ui->second).second)
            throw DomainError("duplicate cover: " + lo + " < " + up);
        p.covers_.push_back({li->second, ui->second});
    }
    std::sort(p.covers_.begin(), p.covers_.end());
    if (root) p.root_ = index.count(*root) ? index[*root] : throw DomainError("root not an element: " + *root);
    p.derive();
    return p;
}

void Poset::derive() {
    int n = size();
    up_.assign(n, {});
    down_.assign(n, {});
    adj_.assign(n, {});
    for (const auto& c : covers_) {
        up_[c.lower].push_back(c.upper);
        down_[c.upper].push_back(c.lower);
        adj_[c.lower].push_back(c.upper);
        adj_[c.upper].push_back(c.lower);
    }
    for (auto& v : up_) std::sort(v.begin(), v.end());
    for (auto& v : down_) std::sort(v.begin(), v.end());
    for (auto& v : adj_) std::sort(v.begin(), v.end());

    // topological order; rejects cycles
    std::vector<int> indeg(n, 0), topo;
    for (const auto& c : covers_) ++indeg[c.upper];
    std::deque<int> q;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) q.push_back(i);
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        topo.push_back(v);
        for (int u : up_[v])
            if (--indeg[u] == 0) q.push_back(u);
    }
    if (int(topo.size()) != n) throw DomainError("cover relation contains a cycle");

    // reachability closure (leq) by sweeping in reverse topological order
    std::size_t words = (n + 63) / 64;
    leq_rows_.assign(n, std::vector<std::uint64_t>(words, 0));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        int v = *it;
        leq_rows_[v][v / 64] |= 1ULL << (v % 64);
        for (int u : up_[v])
            for (std::size_t w = 0; w < words; ++w) leq_rows_[v][w] |= leq_rows_[u][w];
    }

    // Hasse minimality: a cover (a,b) must not be implied by a path through some z
    for (const auto& c : covers_) {
        for (int z = 0; z < n; ++z) {
            if (z == c.lower || z == c.upper) continue;
            if (leq(c.lower, z) && leq(z, c.upper))
                throw DomainError("cover " + labels_[c.lower] + " < " + labels_[c.upper] +
                                  " is implied by transitivity through " + labels_[z]);
        }
    }

    // height = number of elements on a longest chain
    std::vector<int> h(n, 1);
    height_ = n > 0 ? 1 : 0;
    for (int v : topo)
        for (int u : up_[v]) {
            h[u] = std::max(h[u], h[v] + 1);
            height_ = std::max(height_, h[u]);
        }

    // undirected Hasse distances (BFS from every vertex)
    dist_.assign(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        dist_[s][s] = 0;
        std::deque<int> bfs{s};
        while (!bfs.empty()) {
            int v = bfs.front();
            bfs.pop_front();
            for (int u : adj_[v])
                if (dist_[s][u] < 0) {
                    dist_[s][u] = dist_[s][v] + 1;
                    bfs.push_back(u);
                }
        }
    }
    bool connected = std::all_of(dist_[0].begin(), dist_[0].end(), [](int d) { return d >= 0; });
    is_tree_ = connected && int(covers_.size()) == n - 1;
}

int Poset::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels_[i] == label) return i;
    return -1;
}

int Poset::require(const std::string& label) const {
    int i = index_of(label);
    if (i < 0) throw DomainError("no poset element named " + label);
    return i;
}

bool Poset::leq(int a, int b) const { return (leq_rows_[a][b / 64] >> (b % 64)) & 1; }

Poset Poset::with_root(const std::string& label) const {
    std::vector<std::pair<std::string, std::string>> cl;
    for (const auto& c : covers_) cl.emplace_back(labels_[c.lower], labels_[c.upper]);
    return build(labels_, cl, label);
}

Poset Poset::dual() const {
    std::vector<std::pair<std::string, std::string>> cl;
    for (const auto& c : covers_) cl.emplace_back(labels_[c.upper], labels_[c.lower]);
    std::optional<std::string> r;
    if (root_) r = labels_[*root_];
    return build(labels_, cl, r);
}

Poset Poset::restrict(const std::vector<int>& keep) const {
    std::vector<bool> in(size(), false);
    for (int i : keep) in[i] = true;
    std::vector<std::string> labels;
    for (int i = 0; i < size(); ++i)
        if (in[i]) labels.push_back(labels_[i]);
    std::vector<std::pair<std::string, std::string>> cl;
    for (const auto& c : covers_)
        if (in[c.lower] && in[c.upper]) cl.emplace_back(labels_[c.lower], labels_[c.upper]);
    std::optional<std::string> r;
    if (root_ && in[*root_]) r = labels_[*root_];
    return build(labels, cl, r);
}

bool Poset::same_diagram(const Poset& other) const {
    return labels_ == other.labels_ && covers_ == other.covers_;
}

std::pair<int, std::vector<int>> radius_and_centers(const Poset& poset) {
    if (!poset.is_tree()) throw DomainError("radius is defined here for tree posets only");
    int n = poset.size();
    int best = n + 1;
    std::vector<int> centers;
    for (int v = 0; v < n; ++v) {
        int ecc = 0;
        for (int u = 0; u < n; ++u) ecc = std::max(ecc, poset.dist(v, u));
        if (ecc < best) {
            best = ecc;
            centers.clear();
        }
        if (ecc == best) centers.push_back(v);
    }
    return {best, centers};
}

bool poset_isomorphic(const Poset& a, const Poset& b) {
    int n = a.size();
    if (n != b.size() || a.covers().size() != b.covers().size() || a.height() != b.height()) return false;
    std::set<std::pair<int, int>> bcov;
    for (const auto& c : b.covers()) bcov.emplace(c.lower, c.upper);
    std::vector<int> map(n, -1), used(n, 0);
    // degree signature pruning
    auto sig = [](const Poset& p, int v) {
        return std::make_pair(int(p.up_covers(v).size()), int(p.down_covers(v).size()));
    };
    std::function<bool(int)> place = [&](int i) -> bool {
        if (i == n) {
            for (const auto& c : a.covers())
                if (!bcov.count({map[c.lower], map[c.upper]})) return false;
            return true;
        }
        for (int j = 0; j < n; ++j) {
            if (used[j] || sig(a, i) != sig(b, j)) continue;
            bool ok = true;
            for (const auto& c : a.covers()) {
                if (c.lower == i && map[c.upper] >= 0 && !bcov.count({j, map[c.upper]})) ok = false;
                if (c.upper == i && map[c.lower] >= 0 && !bcov.count({map[c.lower], j})) ok = false;
                if (!ok) break;
            }
            if (!ok) continue;
            map[i] = j;
            used[j] = 1;
            if (place(i + 1)) return true;
            map[i] = -1;
            used[j] = 0;
        }
        return false;
    };
    return place(0);
}

// --- catalog ----------------------------------------------------------------

namespace {

CatalogEntry make(const std::string& name, std::vector<long long> params,
                  std::vector<std::string> labels,
                  std::vector<std::pair<std::string, std::string>> covers,
                  std::optional<std::string> root) {
    return CatalogEntry{name, std::move(params), Poset::build(std::move(labels), std::move(covers), std::move(root))};
}

void need_params(const std::string& name, const std::vector<long long>& params, std::size_t count) {
    if (params.size() != count)
        throw DomainError("pattern '" + name + "' needs " + std::to_string(count) + " parameter(s)");
    for (long long p : params)
        if (p < 1) throw DomainError("pattern '" + name + "' parameters must be >= 1");
}

}  // namespace

CatalogEntry catalog(const std::string& name, const std::vector<long long>& params) {
    if (name == "chain") {
        need_params(name, params, 1);
        long long t = params[0];
        if (t > 60) throw CapacityError("chain too long");
        std::vector<std::string> labels;
        std::vector<std::pair<std::string, std::string>> covers;
        for (long long i = 1; i <= t; ++i) labels.push_back("c" + std::to_string(i));
        for (long long i = 1; i < t; ++i) covers.emplace_back("c" + std::to_string(i), "c" + std::to_string(i + 1));
        return make(name, params, labels, covers, "c1");
    }
    if (name == "wedge")  // a,x below a common c
        return make(name, {}, {"a", "x", "c"}, {{"a", "c"}, {"x", "c"}}, "x");
    if (name == "vee")  // dual of wedge: c below a and x
        return make(name, {}, {"a", "x", "c"}, {{"c", "a"}, {"c", "x"}}, "x");
    if (name == "y")  // a,x > c > d
        return make(name, {}, {"a", "x", "c", "d"}, {{"c", "a"}, {"c", "x"}, {"d", "c"}}, "x");
    if (name == "yd")  // a,x < c < d
        return make(name, {}, {"a", "x", "c", "d"}, {{"a", "c"}, {"x", "c"}, {"c", "d"}}, "x");
    if (name == "s")  // a > b < x < d > e
        return make(name, {}, {"a", "b", "x", "d", "e"},
                    {{"b", "a"}, {"b", "x"}, {"x", "d"}, {"e", "d"}}, "x");
    if (name == "splus")  // a > b < x < d < f, d > e
        return make(name, {}, {"a", "b", "x", "d", "e", "f"},
                    {{"b", "a"}, {"b", "x"}, {"x", "d"}, {"d", "f"}, {"e", "d"}}, "x");
    if (name == "spp")  // a > b, g < b < x < d < f, d > e
        return make(name, {}, {"a", "b", "x", "d", "e", "f", "g"},
                    {{"b", "a"}, {"g", "b"}, {"b", "x"}, {"x", "d"}, {"d", "f"}, {"e", "d"}}, "x");
    if (name == "n")  // a < c, b < c, b < d
        return make(name, {}, {"a", "b", "c", "d"}, {{"a", "c"}, {"b", "c"}, {"b", "d"}}, "b");
    if (name == "fork") {
        need_params(name, params, 1);
        return catalog("tree", {params[0], 2});
    }
    if (name == "tree") {  // upward monotone t-ary tree of height h
        need_params(name, params, 2);
        long long t = params[0], h = params[1];
        std::vector<std::string> labels{"r"};
        std::vector<std::pair<std::string, std::string>> covers;
        std::vector<std::string> level{"r"};
        long long total = 1;
        for (long long depth = 1; depth < h; ++depth) {
            total *= t;
            if (total > 10000 || total * 2 > kMaxPosetElements) throw CapacityError("monotone tree too large");
            std::vector<std::string> next;
            for (const auto& parent : level)
                for (long long i = 1; i <= t; ++i) {
                    std::string child = parent + "." + std::to_string(i);
                    labels.push_back(child);
                    covers.emplace_back(parent, child);
                    next.push_back(child);
                }
            level = std::move(next);
        }
        return make(name, params, labels, covers, "r");
    }
    if (name == "diamond") {  // unique min, unique max, k incomparable middles
        need_params(name, params, 1);
        long long k = params[0];
        if (k > 1000) throw CapacityError("diamond too wide");
        std::vector<std::string> labels{"bot"};
        std::vector<std::pair<std::string, std::string>> covers;
        for (long long i = 1; i <= k; ++i) {
            std::string m = "m" + std::to_string(i);
            labels.push_back(m);
            covers.emplace_back("bot", m);
        }
        labels.push_back("top");
        for (long long i = 1; i <= k; ++i) covers.emplace_back("m" + std::to_string(i), "top");
        std::optional<std::string> root;
        if (k == 1) root = "bot";  // a chain; wider diamonds are not trees
        return CatalogEntry{name, params, Poset::build(labels, covers, root)};
    }
    throw DomainError("unknown pattern name: " + name);
}

CatalogEntry parse_pattern_shorthand(const std::string& text) {
    std::string name = text;
    std::vector<long long> params;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        name = text.substr(0, colon);
        std::stringstream ss(text.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                std::size_t idx = 0;
                params.push_back(std::stoll(tok, &idx));
                if (idx != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw DomainError("bad pattern parameter in '" + text + "'");
            }
        }
    }
    return catalog(name, params);
}

std::vector<CatalogEntry> catalog_samples() {
    std::vector<CatalogEntry> out;
    for (long long t : {1, 2, 3, 4}) out.push_back(catalog("chain", {t}));
    for (const char* n : {"wedge", "vee", "y", "yd", "s", "splus", "spp", "n"}) out.push_back(catalog(n));
    for (long long t : {2, 3}) out.push_back(catalog("fork", {t}));
    out.push_back(catalog("tree", {2, 3}));
    out.push_back(catalog("tree", {3, 2}));
    for (long long k : {1, 2, 3}) out.push_back(catalog("diamond", {k}));
    return out;
}

// --- reduction moves ---------------------------------------------------------

namespace {

// unique tree path between two vertices (inclusive)
std::vector<int> tree_path(const Poset& p, int from, int to) {
    std::vector<int> parent(p.size(), -2);
    std::deque<int> q{from};
    parent[from] = -1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (v == to) break;
        for (int u : p.neighbors(v))
            if (parent[u] == -2) {
                parent[u] = v;
                q.push_back(u);
            }
    }
    std::vector<int> path;
    for (int v = to; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

bool edge_up(const Poset& p, int a, int b) {  // the Hasse edge a-b is oriented a < b
    for (int u : p.up_covers(a))
        if (u == b) return true;
    return false;
}

// orientation-preserving rooted embedding of tree component A (rooted at ra)
// into tree component B (rooted at rb); vertices restricted to the two components.
bool rooted_component_embeds(const Poset& p, const std::vector<int>& compA, int ra,
                             const std::vector<int>& compB, int rb) {
    if (compA.size() > compB.size()) return false;
    std::vector<char> inB(p.size(), 0);
    for (int v : compB) inB[v] = 1;
    std::vector<int> image(p.size(), -1);
    std::vector<char> used(p.size(), 0);

    // order compA by BFS from ra
    std::vector<int> order;
    {
        std::vector<char> seen(p.size(), 0);
        std::deque<int> q{ra};
        seen[ra] = 1;
        std::vector<char> inA(p.size(), 0);
        for (int v : compA) inA[v] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            order.push_back(v);
            for (int u : p.neighbors(v))
                if (inA[u] && !seen[u]) {
                    seen[u] = 1;
                    q.push_back(u);
                }
        }
    }
    std::vector<int> bfs_parent(p.size(), -1);
    for (std::size_t i = 1; i < order.size(); ++i) {
        int v = order[i];
        for (int u : p.neighbors(v))
            if (std::find(order.begin(), order.begin() + i, u) != order.begin() + i) {
                bfs_parent[v] = u;
                break;
            }
    }

    std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
        if (i == order.size()) return true;
        int v = order[i];
        if (i == 0) {
            image[v] = rb;
            used[rb] = 1;
            if (place(1)) return true;
            used[rb] = 0;
            image[v] = -1;
            return false;
        }
        int pv = bfs_parent[v];
        bool up = edge_up(p, pv, v);  // v above its tree parent?
        const auto& cand = up ? p.up_covers(image[pv]) : p.down_covers(image[pv]);
        for (int w : cand) {
            if (!inB[w] || used[w]) continue;
            image[v] = w;
            used[w] = 1;
            if (place(i + 1)) return true;
            used[w] = 0;
            image[v] = -1;
        }
        return false;
    };
    return place(0);
}

// components of poset minus {root}; each with its unique root-neighbor
struct Component {
    std::vector<int> vertices;  // sorted
    int attach;                 // the unique neighbor of root inside
};

std::vector<Component> components_without_root(const Poset& p, int root) {
    std::vector<Component> out;
    std::vector<char> seen(p.size(), 0);
    seen[root] = 1;
    for (int nb : p.neighbors(root)) {
        if (seen[nb]) continue;
        Component comp;
        comp.attach = nb;
        std::deque<int> q{nb};
        seen[nb] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            comp.vertices.push_back(v);
            for (int u : p.neighbors(v))
                if (!seen[u]) {
                    seen[u] = 1;
                    q.push_back(u);
                }
        }
        std::sort(comp.vertices.begin(), comp.vertices.end());
        out.push_back(std::move(comp));
    }
    return out;
}

// one reduction pass; returns the vertex set to delete, or empty when reduced
std::vector<int> find_reduction(const Poset& p, int root) {
    int n = p.size();
    std::vector<int> leaves;
    for (int v = 0; v < n; ++v)
        if (int(p.neighbors(v).size()) == 1 && v != root) leaves.push_back(v);

    std::vector<std::vector<int>> candidates;  // deletable vertex sets

    // move (1): pendant leaf path dominated by an orientation-matched longer path
    for (int v : leaves) {
        auto from_root = tree_path(p, root, v);
        for (std::size_t wi = 0; wi + 1 < from_root.size(); ++wi) {
            int w = from_root[wi];
            std::vector<int> vpath(from_root.begin() + wi, from_root.end());  // w = v0 .. vk = v
            std::size_t k = vpath.size() - 1;
            bool interior_ok = true;
            for (std::size_t i = 1; i + 1 <= k && interior_ok; ++i)
                if (int(p.neighbors(vpath[i]).size()) != 2) interior_ok = false;
            if (!interior_ok) continue;
            for (int u : leaves) {
                if (u == v) continue;
                auto u_from_root = tree_path(p, root, u);
                if (std::find(u_from_root.begin(), u_from_root.end(), w) == u_from_root.end()) continue;
                auto upath = tree_path(p, w, u);
                if (upath.size() - 1 < k) continue;  // need k <= l
                bool match = true;
                for (std::size_t i = 1; i <= k && match; ++i)
                    if (edge_up(p, vpath[i - 1], vpath[i]) != edge_up(p, upath[i - 1], upath[i])) match = false;
                if (!match) continue;
                // u's own path must survive the deletion of v1..vk
                bool overlap = false;
                for (std::size_t i = 1; i <= k && !overlap; ++i)
                    if (std::find(upath.begin(), upath.end(), vpath[i]) != upath.end()) overlap = true;
                if (overlap) continue;
                candidates.emplace_back(vpath.begin() + 1, vpath.end());
                break;
            }
        }
    }

    // move (2): delete a component that embeds into a sibling with matching attachment
    auto comps = components_without_root(p, root);
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (std::size_t j = 0; j < comps.size(); ++j) {
            if (i == j) continue;
            if (edge_up(p, root, comps[i].attach) != edge_up(p, root, comps[j].attach)) continue;
            if (rooted_component_embeds(p, comps[i].vertices, comps[i].attach,
                                        comps[j].vertices, comps[j].attach))
                candidates.push_back(comps[i].vertices);
        }

    if (candidates.empty()) return {};
    // deterministic choice: smallest label sequence of the deleted set
    auto key = [&](const std::vector<int>& del) {
        std::vector<std::string> names;
        for (int v : del) names.push_back(p.label(v));
        std::sort(names.begin(), names.end());
        return names;
    };
    std::sort(candidates.begin(), candidates.end(),
              [&](const auto& a, const auto& b) { return key(a) < key(b); });
    return candidates.front();
}

}  // namespace

Poset reduce_equiv(const Poset& poset, const std::string& root_label) {
    if (!poset.is_tree()) throw DomainError("reduce_equiv needs a tree poset");
    Poset current = poset.with_root(root_label);
    while (true) {
        int root = *current.root();
        auto del = find_reduction(current, root);
        if (del.empty()) return current;
        std::vector<char> drop(current.size(), 0);
        for (int v : del) drop[v] = 1;
        std::vector<int> keep;
        for (int v = 0; v < current.size(); ++v)
            if (!drop[v]) keep.push_back(v);
        current = current.restrict(keep);
    }
}

// --- JSON I/O -----------------------------------------------------------------

Poset parse_poset_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw IoError(std::string("bad poset JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("elements") || !j.contains("covers"))
        throw IoError("poset JSON needs 'elements' and 'covers'");
    std::vector<std::string> labels;
    for (const auto& e : j["elements"]) labels.push_back(e.get<std::string>());
    std::vector<std::pair<std::string, std::string>> covers;
    for (const auto& c : j["covers"]) {
        if (!c.is_array() || c.size() != 2) throw IoError("each cover must be a [lower, upper] pair");
        covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
    }
    std::optional<std::string> root;
    if (j.contains("root")) root = j["root"].get<std::string>();
    try {
        return Poset::build(labels, covers, root);
    } catch (const DomainError& e) {
        throw IoError(std::string("invalid poset: ") + e.what());
    }
}

Poset load_poset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open poset file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_poset_json(buf.str());
}

std::string poset_to_json(const Poset& poset) {
    nlohmann::json j;
    j["elements"] = poset.labels();
    auto covers = nlohmann::json::array();
    for (const auto& c : poset.covers())
        covers.push_back({poset.label(c.lower), poset.label(c.upper)});
    j["covers"] = covers;
    if (poset.root()) j["root"] = poset.label(*poset.root());
    return j.dump();
}

}  // namespace subposets
