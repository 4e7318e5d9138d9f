#include <doctest.h>

#include <algorithm>

#include "subposets/supersat.hpp"

using namespace subposets;

namespace {

using Tag = TypeClassification::Tag;

SetFamily band_fuzz(int n, double keep, std::uint64_t seed) {
    SplitMix64 gen(seed);
    std::vector<SetWord> members;
    for (SetWord s = 0; s < (SetWord(1) << n); ++s)
        if (SetFamily::size_in_middle_band(n, set_size(s)) && gen.next_unit() < keep)
            members.push_back(s);
    return SetFamily(GroundSet(n), members);
}

SetWord apply_perm(SetWord s, const std::vector<int>& perm) {
    SetWord out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (s & (SetWord(1) << i)) out |= SetWord(1) << perm[i];
    return out;
}

}  // namespace

TEST_CASE("classification basics") {
    SUBCASE("antichains are all type 3") {
        SetFamily anti = lattice_layers(8, 4, 4);
        auto cls = classify_types(anti, Rational(1, 2), Direction::down);
        for (auto t : cls.tags) CHECK(t == Tag::type3);
    }
    SUBCASE("a full layer pair makes the upper layer type 1") {
        SetFamily two = lattice_layers(8, 3, 4);
        auto cls = classify_types(two, Rational(1, 2), Direction::down);
        for (std::size_t i = 0; i < two.size(); ++i) {
            if (set_size(two[i]) == 4) {
                CHECK(cls.tags[i] == Tag::type1);  // 4 lower neighbors >= 8/60
                CHECK(cls.dist1[i].size() == 4);
            } else {
                CHECK(cls.tags[i] == Tag::type3);
            }
        }
    }
    SUBCASE("out-of-band members are rejected") {
        SetFamily f(GroundSet(27), {0b1});
        CHECK_THROWS_AS(classify_types(f, Rational(1, 2), Direction::down), DomainError);
    }
}

TEST_CASE("classification matches a direct shadow recount at n=16") {
    SetFamily f = band_fuzz(16, 0.002, 99);
    Rational eps(1, 2);
    auto cls = classify_types(f, eps, Direction::down);
    FamilyRelations rel(f);
    for (std::size_t i = 0; i < f.size(); ++i) {
        // recount: members below at each distance
        std::map<int, long long> counts;
        for (std::size_t j = 0; j < f.size(); ++j)
            if (i != j && subset_of(f[j], f[i]))
                counts[set_size(f[i]) - set_size(f[j])] += 1;
        bool t1 = Rational(counts[1]) >= eps * 16 / 30 && counts[1] >= 1;
        bool t2 = false;
        for (const auto& [j, c] : counts)
            if (j >= 2 && Rational(c) >= eps * 16 * 16 / 30) t2 = true;
        Tag expect = t1 ? Tag::type1 : t2 ? Tag::type2 : Tag::type3;
        CHECK(cls.tags[i] == expect);
    }
}

TEST_CASE("type tags are invariant under ground-set permutations") {
    SetFamily f = band_fuzz(8, 0.3, 5);
    auto cls = classify_types(f, Rational(1, 3), Direction::up);
    std::vector<int> perm{3, 0, 6, 1, 7, 2, 5, 4};
    std::vector<SetWord> mapped;
    for (SetWord s : f.members()) mapped.push_back(apply_perm(s, perm));
    SetFamily g(GroundSet(8), mapped);
    auto cls2 = classify_types(g, Rational(1, 3), Direction::up);
    for (std::size_t i = 0; i < f.size(); ++i) {
        long gi = g.find(apply_perm(f[i], perm));
        REQUIRE(gi >= 0);
        CHECK(cls.tags[i] == cls2.tags[std::size_t(gi)]);
    }
}

TEST_CASE("mass-bound reports") {
    SUBCASE("a single middle layer is within the plain bound") {
        ForkReport rep = check_fork_bound(lattice_layers(12, 6, 6), Rational(1, 100));
        CHECK(rep.applicable);
        CHECK(rep.bound_holds);
    }
    SUBCASE("four stacked layers break the distance-1 hypothesis for small eps") {
        ForkReport rep = check_fork_bound(lattice_layers(12, 4, 7), Rational(1, 100));
        CHECK(!rep.applicable);
    }
    SUBCASE("four middle layers pass the relaxed variant") {
        ForkReport rep = check_fork_plus_bound(lattice_layers(12, 5, 8), Rational(1, 10));
        CHECK(rep.applicable);
        CHECK(rep.bound_holds);
    }
    SUBCASE("an antichain is trivially within both bounds") {
        SetFamily anti = lattice_layers(10, 5, 5);
        CHECK(check_fork_bound(anti, Rational(1, 4)).bound_holds);
        CHECK(check_fork_plus_bound(anti, Rational(1, 4)).bound_holds);
    }
}

TEST_CASE("fuzzed band families never violate an applicable bound") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        SetFamily f = band_fuzz(12, 0.05, seed * 13 + 1);
        Rational eps(1, 5);
        ForkReport a = check_fork_bound(f, eps);
        if (a.applicable) CHECK(a.bound_holds);
        ForkReport b = check_fork_plus_bound(f, eps);
        if (b.applicable) CHECK(b.bound_holds);
    }
}

TEST_CASE("asymptotic multiplicity constants") {
    CHECK(wedge_delta(Rational(1)) == Rational(1, 240));
    CHECK(wedge_delta(Rational(1, 2)) == Rational(1, 720));
    CHECK(yd_delta(Rational(1, 2)) == Rational(1, 4800));
    CHECK(radius2_delta_star(Rational(3, 2)) ==
          std::min(wedge_delta(Rational(1, 2)), yd_delta(Rational(1, 2))));
    CHECK(radius2_delta(Rational(3, 2)) == radius2_delta_star(Rational(3, 2)) / 200);
}

TEST_CASE("wedge finder on two full layers (strict mode)") {
    SetFamily f = lattice_layers(12, 5, 6);
    SupersatWitness wit = find_wedge_blowup(f, Rational(1, 2));
    CHECK(wit.size_premise_met);
    REQUIRE(wit.embedding);
    CHECK(wit.achieved_t >= 3);
    CHECK(validate_embedding(wit.embedding->blowup.result, wit.working, wit.embedding->emb));
}

TEST_CASE("strict mode rejects undersized families") {
    // an antichain can never reach (1+eps) * central-binomial
    SetFamily anti = lattice_layers(10, 5, 5);
    CHECK_THROWS_AS(find_wedge_blowup(anti, Rational(1, 2)), DomainError);
    CHECK_THROWS_AS(find_yd_blowup(lattice_layers(10, 4, 5), Rational(1, 2)), DomainError);
    CHECK_THROWS_AS(find_special_blowup("wedge", lattice_layers(10, 4, 6), Rational(1, 4)),
                    DomainError);
}

TEST_CASE("a lone wedge is found at multiplicity one") {
    SetFamily f(GroundSet(2), {0b01, 0b10, 0b11});
    FinderOptions opt;
    opt.target_t = 1;
    SupersatWitness wit = find_wedge_blowup(f, Rational(1, 2), opt);
    REQUIRE(wit.embedding);
    CHECK(wit.achieved_t == 1);
    CHECK(!wit.shortfall);
}

TEST_CASE("yd finder in desk mode builds a validated copy") {
    SetFamily f = lattice_layers(12, 5, 7);
    FinderOptions opt;
    opt.target_t = 2;
    SupersatWitness wit = find_yd_blowup(f, Rational(1, 4), opt, Direction::up);
    REQUIRE(wit.embedding);
    CHECK(wit.achieved_t >= 2);
    CHECK(!wit.shortfall);
    CHECK(validate_embedding(wit.embedding->blowup.result, wit.working, wit.embedding->emb));
}

TEST_CASE("swap loop clears one crossing pair in one move") {
    // hub {} ; tops {1,2} with leg {1} ; {1,3} with leg {3}: leg {1} is inside
    // top {1,3}? no — build a genuine crossing: leg a = {1,2,3} above top {1,2}
    // is impossible in a wedge (legs sit below tops), so drive the loop through
    // the yd finder on a crafted family instead.
    SetFamily f(GroundSet(4),
                {0b0000, 0b0001, 0b0010, 0b0011, 0b0101, 0b0111, 0b1011, 0b1111, 0b0100});
    FinderOptions opt;
    opt.target_t = 1;
    SupersatWitness wit = find_yd_blowup(f, Rational(1, 8), opt, Direction::up);
    if (wit.embedding)
        CHECK(validate_embedding(wit.embedding->blowup.result, wit.working, wit.embedding->emb));
}

TEST_CASE("radius-2 assembly on five middle layers at n=14") {
    SetFamily f = lattice_layers(14, 5, 9);
    SPlusAssembly a = find_radius2_blowup("splus", f, Rational(1, 4), 2);
    CHECK(a.size_premise_met);  // 13442 >= (3.25) * 3432
    REQUIRE(a.embedding);
    CHECK(a.achieved_t == 2);
    CHECK(!a.shortfall);
    CHECK(validate_embedding(a.embedding->blowup.result, a.working, a.embedding->emb));
    CHECK(a.filter_log.size() == 3);
    CHECK(Rational(a.destroyed_count) <= a.destroyed_bound);
}

TEST_CASE("radius-2 finder handles the plain s pattern in three layers") {
    SetFamily f = lattice_layers(12, 5, 7);
    SPlusAssembly a = find_radius2_blowup("s", f, Rational(1, 4), 2);
    REQUIRE(a.embedding);
    CHECK(validate_embedding(a.embedding->blowup.result, a.working, a.embedding->emb));
}

TEST_CASE("radius-2 finder finds a hand-built s copy at multiplicity one") {
    // a > b < x < d > e plus padding
    SetFamily f(GroundSet(6),
                {0b000011, 0b000001, 0b000111, 0b001111, 0b001100, 0b110000, 0b101000});
    SPlusAssembly a = find_radius2_blowup("s", f, Rational(1, 8), 1);
    REQUIRE(a.embedding);
    CHECK(a.achieved_t == 1);
}

TEST_CASE("spp assembly carries both lower leg kinds") {
    SetFamily f = lattice_layers(14, 4, 9);
    SPlusAssembly a = find_radius2_blowup("spp", f, Rational(1, 8), 1);
    REQUIRE(a.embedding);
    CHECK(validate_embedding(a.embedding->blowup.result, a.working, a.embedding->emb));
}

TEST_CASE("radius-2 finder rejects unknown patterns") {
    CHECK_THROWS_AS(find_radius2_blowup("wedge", full_lattice(4), Rational(1, 2), 1), DomainError);
}

TEST_CASE("special finder on five middle layers at n=14 (desk mode)") {
    SetFamily f = lattice_layers(14, 5, 9);
    SpecialWitness wit = find_special_blowup("wedge", f, Rational(1, 4), 4);
    REQUIRE(wit.embedding);
    CHECK(wit.achieved_t >= 4);
    CHECK(!wit.size_premise_met);  // 13442 < (4 + 4/4) * 3432 = 17160
    CHECK(validate_embedding(wit.embedding->blowup.result, wit.working, wit.embedding->emb));
    // the assignment never reuses a set across branches
    std::vector<int> img = wit.embedding->emb.assignment;
    std::sort(img.begin(), img.end());
    CHECK(std::adjacent_find(img.begin(), img.end()) == img.end());
}

TEST_CASE("special finder supports the dual orientation") {
    SetFamily f = lattice_layers(14, 5, 9);
    SpecialWitness wit = find_special_blowup("vee", f, Rational(1, 4), 3);
    REQUIRE(wit.embedding);
    CHECK(validate_embedding(wit.embedding->blowup.result, wit.working, wit.embedding->emb));
    CHECK_THROWS_AS(find_special_blowup("s", f, Rational(1, 4), 2), DomainError);
}
