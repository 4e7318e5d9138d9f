#include <doctest.h>

#include <sstream>

#include "subposets/family.hpp"

using namespace subposets;

TEST_CASE("canonical order sorts by size then value") {
    SetFamily f(GroundSet(3), {0b111, 0b001, 0b110, 0b000, 0b010});
    std::vector<SetWord> expect{0b000, 0b001, 0b010, 0b110, 0b111};
    CHECK(f.members() == expect);
}

TEST_CASE("duplicates and foreign elements are rejected") {
    CHECK_THROWS_AS(SetFamily(GroundSet(2), {1, 1}), DomainError);
    CHECK_THROWS_AS(SetFamily(GroundSet(2), {0b100}), DomainError);
}

TEST_CASE("family file round trip with every member syntax") {
    std::istringstream in("n=4\n# bands\n{}\n1,3,4\n0x3\n2\n");
    SetFamily f = parse_family(in);
    CHECK(f.size() == 4);
    CHECK(f.contains(0));
    CHECK(f.contains(0b1101));
    CHECK(f.contains(0b0011));
    CHECK(f.contains(0b0010));

    std::ostringstream out;
    write_family(out, f);
    std::istringstream back(out.str());
    CHECK(parse_family(back) == f);
}

TEST_CASE("family file parse errors") {
    std::istringstream missing_header("1,2\n");
    CHECK_THROWS_AS(parse_family(missing_header), IoError);
    std::istringstream bad_order("n=3\n2,1\n");
    CHECK_THROWS_AS(parse_family(bad_order), IoError);
    std::istringstream out_of_range("n=3\n4\n");
    CHECK_THROWS_AS(parse_family(out_of_range), IoError);
    std::istringstream dup("n=3\n1\n0x1\n");
    CHECK_THROWS_AS(parse_family(dup), IoError);
}

TEST_CASE("middle band bounds are exact") {
    // n=27: 27^(2/3) = 9 exactly, so sizes 5..22 stay
    for (int k = 0; k <= 27; ++k)
        CHECK(SetFamily::size_in_middle_band(27, k) == (k >= 5 && k <= 22));
    // n=4: the band [2 - 4^(2/3), 2 + 4^(2/3)] covers every size
    for (int k = 0; k <= 4; ++k) CHECK(SetFamily::size_in_middle_band(4, k));
}

TEST_CASE("middle band is the identity on families inside it") {
    SetFamily f = lattice_layers(10, 4, 6);
    CHECK(f.middle_band() == f);
}

TEST_CASE("layer enumeration matches binomials") {
    CHECK(lattice_layers(6, 3, 3).size() == 20);
    CHECK(full_lattice(5).size() == 32);
    CHECK(lattice_layers(5, 0, 5) == full_lattice(5));
}

TEST_CASE("relations rows are mutually consistent") {
    SetFamily f = full_lattice(4);
    FamilyRelations rel(f);
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(rel.sub_count(i) == std::size_t((1 << set_size(f[i])) - 1));
        CHECK(rel.sup_count(i) == std::size_t((1 << (4 - set_size(f[i]))) - 1));
    }
}
