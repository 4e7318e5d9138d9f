#include <doctest.h>

#include "subposets/embed.hpp"

using namespace subposets;

namespace {

SetFamily fuzz_family(int n, double keep, std::uint64_t seed) {
    SplitMix64 gen(seed);
    std::vector<SetWord> members;
    for (SetWord s = 0; s < (SetWord(1) << n); ++s)
        if (gen.next_unit() < keep) members.push_back(s);
    return SetFamily(GroundSet(n), members);
}

// exhaustive oracle: try every injective assignment
bool brute_has_copy(const Poset& pattern, const SetFamily& fam, bool induced) {
    int p = pattern.size();
    std::vector<int> image(p, -1);
    std::vector<char> used(fam.size(), 0);
    std::function<bool(int)> rec = [&](int i) -> bool {
        if (i == p) return true;
        for (std::size_t m = 0; m < fam.size(); ++m) {
            if (used[m]) continue;
            image[i] = int(m);
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) {
                SetWord A = fam[std::size_t(image[i])], B = fam[std::size_t(image[j])];
                if (pattern.less(i, j) && !(subset_of(A, B) && A != B)) ok = false;
                if (pattern.less(j, i) && !(subset_of(B, A) && A != B)) ok = false;
                if (induced && !pattern.comparable(i, j) && (subset_of(A, B) || subset_of(B, A)))
                    ok = false;
            }
            if (ok) {
                used[m] = 1;
                if (rec(i + 1)) return true;
                used[m] = 0;
            }
            image[i] = -1;
        }
        return false;
    };
    return rec(0);
}

}  // namespace

TEST_CASE("two-chain and wedge basics") {
    SetFamily tiny(GroundSet(1), {0, 1});
    auto emb = find_subposet(catalog("chain", {2}).poset, tiny);
    REQUIRE(emb);
    CHECK(validate_embedding(catalog("chain", {2}).poset, tiny, *emb));

    SetFamily anti(GroundSet(4), {0b0001, 0b0010, 0b0100, 0b1000});
    CHECK(!find_subposet(catalog("wedge").poset, anti));

    SetFamily w(GroundSet(2), {0b01, 0b10, 0b11});
    auto we = find_subposet(catalog("wedge").poset, w);
    REQUIRE(we);
    Poset wedge = catalog("wedge").poset;
    CHECK(w[std::size_t(we->assignment[wedge.require("c")])] == 0b11);
    CHECK(validate_embedding(wedge, w, *we));
    CHECK(brute_has_copy(wedge, w, false));
}

TEST_CASE("search agrees with the exhaustive oracle") {
    std::vector<Poset> patterns{catalog("wedge").poset, catalog("chain", {3}).poset,
                                catalog("n").poset, catalog("diamond", {2}).poset};
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        SetFamily f = fuzz_family(4, 0.35, seed * 3 + 1);
        for (const Poset& p : patterns) {
            for (bool induced : {false, true}) {
                auto emb = find_subposet(p, f, induced);
                CHECK(emb.has_value() == brute_has_copy(p, f, induced));
                if (emb) CHECK(validate_embedding(p, f, *emb, induced));
            }
        }
    }
}

TEST_CASE("induced containment is strictly stronger") {
    // chain {}, {1}, {1,2}: a weak vee copy exists (legs may compare), an induced one does not
    SetFamily chain(GroundSet(2), {0, 0b01, 0b11});
    Poset vee = catalog("vee").poset;
    CHECK(find_subposet(vee, chain).has_value());
    CHECK(!find_subposet(vee, chain, true).has_value());
}

TEST_CASE("subposet duality through family complementation") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SetFamily f = fuzz_family(4, 0.4, seed + 50);
        for (const char* name : {"wedge", "y", "s"}) {
            Poset p = catalog(name).poset;
            bool direct = find_subposet(p, f).has_value();
            bool dual = find_subposet(p.dual(), f.complement_family()).has_value();
            CHECK(direct == dual);
        }
    }
}

TEST_CASE("pattern capacity is enforced") {
    CHECK_THROWS_AS(find_subposet(catalog("tree", {2, 4}).poset, full_lattice(4)), CapacityError);
}

TEST_CASE("blow-up copies: basics and size bound") {
    SetFamily f(GroundSet(2), {0, 0b01, 0b10});
    Poset c2 = catalog("chain", {2}).poset;
    auto copy = find_blowup_copy(c2, c2.require("c1"), 2, f);
    REQUIRE(copy);
    CHECK(f[std::size_t(copy->emb.assignment[0])] == 0);
    CHECK(validate_embedding(copy->blowup.result, f, copy->emb));

    // wedge doubling needs 7 elements; 2^[2] has 4
    CHECK(!find_blowup_copy(catalog("wedge").poset, catalog("wedge").poset.require("x"), 2,
                            full_lattice(2)));

    auto big = find_blowup_copy(catalog("wedge").poset, catalog("wedge").poset.require("x"), 2,
                                full_lattice(4));
    REQUIRE(big);
    CHECK(validate_embedding(big->blowup.result, full_lattice(4), big->emb));
}

TEST_CASE("maximal multiplicity search") {
    Poset c2 = catalog("chain", {2}).poset;
    auto [t, copy] = max_blowup_t(c2, c2.require("c1"), full_lattice(4), default_t_cap(4));
    CHECK(t == 4);
    REQUIRE(copy);
    CHECK(validate_embedding(copy->blowup.result, full_lattice(4), copy->emb));

    SetFamily anti(GroundSet(4), {0b0001, 0b0010, 0b0100});
    auto [t0, none] = max_blowup_t(catalog("wedge").poset, 1, anti, 4);
    CHECK(t0 == 0);
    CHECK(!none);
}

TEST_CASE("multiplicity search is monotone and matches step-by-step descent") {
    SetFamily f = lattice_layers(4, 1, 2);
    Poset wedge = catalog("wedge").poset;
    int x = wedge.require("x");
    auto [best, copy] = max_blowup_t(wedge, x, f, default_t_cap(4));
    REQUIRE(best >= 1);
    for (long long t = 1; t <= best; ++t) CHECK(find_blowup_copy(wedge, x, t, f).has_value());
    CHECK(!find_blowup_copy(wedge, x, best + 1, f).has_value());
}

TEST_CASE("blow-up copies on fuzzed families always validate") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        SetFamily f = fuzz_family(5, 0.55, seed + 900);
        for (const char* name : {"wedge", "vee", "yd"}) {
            Poset p = catalog(name).poset;
            auto [t, copy] = max_blowup_t(p, p.require("x"), f, 5);
            if (copy) {
                CHECK(t >= 1);
                CHECK(validate_embedding(copy->blowup.result, f, copy->emb));
            }
        }
    }
}
