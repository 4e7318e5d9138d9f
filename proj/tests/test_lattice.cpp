#include <doctest.h>

#include "subposets/common.hpp"
#include "subposets/lattice.hpp"

using namespace subposets;

namespace {

SetFamily fuzz_family(int n, double keep, std::uint64_t seed) {
    SplitMix64 gen(seed);
    std::vector<SetWord> members;
    for (SetWord s = 0; s < (SetWord(1) << n); ++s)
        if (gen.next_unit() < keep) members.push_back(s);
    return SetFamily(GroundSet(n), members);
}

}  // namespace

TEST_CASE("lubell mass of named families") {
    CHECK(lubell_mass(full_lattice(3)) == Rational(4));  // one per layer
    SetFamily layer(GroundSet(3), {0b001, 0b010, 0b100});
    CHECK(lubell_mass(layer) == Rational(1));
    SetFamily just_empty(GroundSet(4), {0});
    CHECK(lubell_mass(just_empty) == Rational(1));
    CHECK(lubell_mass(SetFamily(GroundSet(4), {})) == Rational(0));
}

TEST_CASE("lubell mass is at most n+1 with equality only on the full lattice") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SetFamily f = fuzz_family(5, 0.4, seed + 100);
        Rational mass = lubell_mass(f);
        CHECK(mass <= Rational(6));
        if (f.size() < 32) CHECK(mass < Rational(6));
    }
    CHECK(lubell_mass(full_lattice(5)) == Rational(6));
}

TEST_CASE("shadow counts in the full cube") {
    SetFamily f = full_lattice(3);
    CHECK(upper_shadow_count(f, 0b001, 1) == 2);
    CHECK(upper_shadow_count(f, 0b001, 2) == 1);
    CHECK(lower_shadow_count(f, 0b011, 1) == 2);
    SetFamily anti(GroundSet(3), {0b001, 0b010, 0b100});
    CHECK(upper_shadow_count(anti, 0b001, 1) == 0);
    CHECK_THROWS_AS(upper_shadow_count(f, 0b001, 0), DomainError);
    CHECK_THROWS_AS(upper_shadow_count(anti, 0b011, 1), DomainError);
}

TEST_CASE("lower shadow equals upper shadow of the complement family") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SetFamily f = fuzz_family(5, 0.5, seed);
        SetFamily comp = f.complement_family();
        for (SetWord s : f.members())
            for (int j = 1; j <= 3; ++j)
                CHECK(lower_shadow_count(f, s, j) ==
                      upper_shadow_count(comp, f.ground().full_mask() & ~s, j));
    }
}

TEST_CASE("up-set quotient relabels onto the small ground set") {
    SetFamily f(GroundSet(3), {0b001, 0b011, 0b101});
    SetFamily q = up_set_quotient(f, 0b001);
    CHECK(q.n() == 2);
    CHECK(q.size() == 3);
    CHECK(q.contains(0));
    CHECK(q.contains(0b01));  // element 2 relabeled to 1
    CHECK(q.contains(0b10));  // element 3 relabeled to 2

    SetFamily anti(GroundSet(4), {0b0011, 0b0101, 0b1001});
    SetFamily qa = up_set_quotient(anti, 0b0011);
    CHECK(qa.size() == 1);
    CHECK(qa.contains(0));

    CHECK(up_set_quotient(full_lattice(2), 0) == full_lattice(2));
    CHECK_THROWS_AS(up_set_quotient(f, 0b100), DomainError);
}

TEST_CASE("averaging: a uniform quotient-mass cap bounds the family mass") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        SetFamily f = fuzz_family(5, 0.35, seed + 7);
        if (f.empty()) continue;
        Rational cap = 0;
        for (SetWord s : f.members()) {
            Rational q = lubell_mass(up_set_quotient(f, s));
            if (q > cap) cap = q;
        }
        CHECK(lubell_mass(f) <= cap);
    }
}

TEST_CASE("size is bounded by mass times the central binomial") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        SetFamily f = fuzz_family(6, 0.45, seed + 77);
        CHECK(Rational(f.size()) <= lubell_mass(f) * Rational(binomial(6, 3)));
    }
}

TEST_CASE("min-partition counts") {
    SUBCASE("single set at n=2") {
        SetFamily f(GroundSet(2), {0b01});
        MinPartition mp = min_partition(f);
        CHECK(mp.chains_with_min.at(0b01) == 1);
        CHECK(mp.empty_count == 1);
    }
    SUBCASE("the empty set lies on every chain") {
        SetFamily f(GroundSet(3), {0});
        MinPartition mp = min_partition(f);
        CHECK(mp.chains_with_min.at(0) == 6);
        CHECK(mp.empty_count == 0);
    }
    SUBCASE("middle layer of the 3-cube") {
        SetFamily f(GroundSet(3), {0b001, 0b010, 0b100});
        MinPartition mp = min_partition(f);
        for (SetWord s : f.members()) CHECK(mp.chains_with_min.at(s) == 2);
        CHECK(mp.empty_count == 0);
    }
    SUBCASE("capacity") {
        CHECK_THROWS_AS(min_partition(SetFamily(GroundSet(13), {1})), CapacityError);
    }
}

TEST_CASE("min-partition counts add up to n! on fuzzed families") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        int n = 3 + int(seed % 4);
        SetFamily f = fuzz_family(n, 0.4, seed + 1234);
        MinPartition mp = min_partition(f);
        BigInt total = mp.empty_count;
        for (const auto& [s, c] : mp.chains_with_min) total += c;
        CHECK(total == factorial(n));
    }
}

TEST_CASE("lattice stats hold the exact quantities") {
    LatticeStats st = lattice_stats(12);
    CHECK(st.m == 924);
    CHECK(st.chain_count == factorial(12));
}
