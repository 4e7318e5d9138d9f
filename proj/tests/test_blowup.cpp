#include <doctest.h>

#include "subposets/blowup.hpp"

using namespace subposets;

namespace {

// the five-element example tree: x with two lower neighbors p1, p2; q2 above
// p2; r above q2 — sizes 1 + 2 + 2 + 4 + 8 under doubling
Poset figure_tree() {
    return Poset::build({"x", "p1", "p2", "q2", "r"},
                        {{"p1", "x"}, {"p2", "x"}, {"p2", "q2"}, {"q2", "r"}}, "x");
}

}  // namespace

TEST_CASE("blow-up sizes") {
    CHECK(blow_up_size(figure_tree(), "x", 2) == 17);
    CHECK(blow_up_size(catalog("wedge").poset, "x", 2) == 7);
    CHECK(blow_up_size(catalog("chain", {2}).poset, "c1", 3) == 4);
    // distances in splus from x: b,d at 1; a,e,f at 2
    CHECK(blow_up_size(catalog("splus").poset, "x", 2) == 17);
    for (const auto& entry : catalog_samples())
        if (entry.poset.is_tree() && entry.poset.root())
            CHECK(blow_up_size(entry.poset, *entry.poset.root(), 1) == entry.poset.size());
}

TEST_CASE("blow-up materialization agrees with the size formula") {
    BlowupPoset bp = blow_up(figure_tree(), "x", 2);
    CHECK(bp.result.size() == 17);
    CHECK(bp.result.is_tree());
    // replica counts are d^rho
    CHECK(bp.replicas_of(figure_tree().require("r")).size() == 8);
    CHECK(bp.replicas_of(figure_tree().require("q2")).size() == 4);
    // every group has size d and hangs off one parent replica
    for (int u = 0; u < bp.base.size(); ++u) {
        if (u == bp.root) continue;
        std::size_t total = 0;
        for (const auto& [pidx, grp] : bp.groups_[u]) {
            CHECK(grp.size() == 2);
            total += grp.size();
        }
        CHECK(total == bp.replicas_of(u).size());
    }
}

TEST_CASE("identity blow-up reproduces the base poset") {
    for (const auto& entry : catalog_samples()) {
        if (!entry.poset.is_tree() || !entry.poset.root()) continue;
        BlowupPoset bp = blow_up(entry.poset, *entry.poset.root(), 1);
        CHECK(poset_isomorphic(bp.result, entry.poset));
    }
}

TEST_CASE("one replica per group cuts back to the base poset") {
    BlowupPoset bp = blow_up(catalog("yd").poset, "x", 3);
    // greedily pick the first replica of each element along the tree
    std::vector<int> keep{0};
    std::vector<int> chosen(bp.base.size(), -1);
    chosen[*bp.base.root()] = 0;
    for (int i = 1; i < bp.result.size(); ++i) {
        const auto& el = bp.elems[i];
        if (chosen[el.base_elem] >= 0) continue;
        if (el.parent >= 0 && chosen[bp.elems[el.parent].base_elem] == el.parent) {
            chosen[el.base_elem] = i;
            keep.push_back(i);
        }
    }
    CHECK(int(keep.size()) == bp.base.size());
    Poset sub = bp.result.restrict(keep);
    CHECK(poset_isomorphic(sub, bp.base));
}

TEST_CASE("blow-up preserves height across the catalog") {
    for (const auto& entry : catalog_samples()) {
        if (!entry.poset.is_tree() || !entry.poset.root()) continue;
        for (long long d = 2; d <= 3; ++d) {
            if (blow_up_size(entry.poset, *entry.poset.root(), d) > 3000) continue;
            BlowupPoset bp = blow_up(entry.poset, *entry.poset.root(), d);
            CHECK(bp.result.height() == entry.poset.height());
        }
    }
}

TEST_CASE("blow-up commutes with duality") {
    for (const char* name : {"wedge", "yd", "s", "splus"}) {
        Poset p = catalog(name).poset;
        BlowupPoset a = blow_up(p, "x", 2);
        BlowupPoset b = blow_up(p.dual(), "x", 2);
        CHECK(poset_isomorphic(a.result.dual(), b.result));
    }
}

TEST_CASE("blow-up argument validation") {
    CHECK_THROWS_AS(blow_up(catalog("diamond", {2}).poset, 0, 2), DomainError);
    CHECK_THROWS_AS(blow_up(catalog("wedge").poset, "x", 0), DomainError);
    CHECK_THROWS_AS(blow_up(catalog("wedge").poset, "zz", 2), DomainError);
    CHECK_THROWS_AS(blow_up(catalog("tree", {3, 3}).poset, "r", 40), CapacityError);
}
