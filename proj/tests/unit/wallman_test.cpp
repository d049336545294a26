#include <doctest.h>

#include "mnc/wallman.hpp"

using namespace mnc::wallman;

namespace {

// Family bitmask from a list of subset masks.
SetFamily fam_of(std::initializer_list<SubsetMask> subsets) {
    SetFamily f = 0;
    for (auto s : subsets) f |= (1u << s);
    return f;
}

}  // namespace

TEST_CASE("finite-intersection and maximality axioms on hand-built families") {
    auto space = make_space(2);  // points {0, 1}; subsets 0..3

    // {{0,1},{1}} has intersection {1}.
    CHECK(satisfies_omega1(space, fam_of({0b11, 0b10})));
    // {{0},{1}} is disjoint.
    CHECK(!satisfies_omega1(space, fam_of({0b01, 0b10})));
    // The family containing only the ground set is far from maximal.
    CHECK(!satisfies_omega2(space, fam_of({0b11})));

    auto p1 = principal_ultrafilter(space, 1);
    CHECK(is_omega_ultrafilter(space, p1.sets));
    CHECK(p1.contains(0b10));
    CHECK(p1.contains(0b11));
    CHECK(!p1.contains(0b01));
    CHECK(!p1.contains(0b00));
}

TEST_CASE("enumeration finds exactly the principal filters") {
    for (int n = 1; n <= 5; ++n) {
        auto space = make_space(n);
        auto filters = enumerate_ultrafilters(space);
        REQUIRE(filters.size() == std::size_t(n));
        for (int t = 0; t < n; ++t)
            CHECK(filters[t].sets == principal_ultrafilter(space, t).sets);
    }
    CHECK_THROWS(make_space(0));
    CHECK_THROWS(make_space(6));
}

TEST_CASE("characterization needs properness") {
    auto space = make_space(3);
    // {emptyset} and {emptyset, {0}} satisfy the two closure conditions read
    // literally but are not ultrafilters.
    CHECK(!check_characterization(space, fam_of({0b000})));
    CHECK(!check_characterization(space, fam_of({0b000, 0b001})));
    CHECK(check_characterization(space, principal_ultrafilter(space, 0).sets));
}

TEST_CASE("characterization matches the definition exhaustively") {
    for (int n = 1; n <= 3; ++n) CHECK(characterization_matches_definition(make_space(n)));
}

TEST_CASE("union membership splits") {
    for (int n = 1; n <= 5; ++n) CHECK(check_union_corollary(make_space(n)));
}

TEST_CASE("star sets behave like the base of a topology") {
    auto space = make_space(3);
    auto filters = enumerate_ultrafilters(space);

    auto star_u = star(space, 0b011, filters);  // {0,1}
    auto star_v = star(space, 0b110, filters);  // {1,2}
    REQUIRE(star_u.members.size() == 2);
    CHECK(star_u.members[0] == 0);
    CHECK(star_u.members[1] == 1);
    REQUIRE(star_v.members.size() == 2);
    CHECK(star_v.members[0] == 1);
    CHECK(star_v.members[1] == 2);

    auto star_uv = star(space, 0b010, filters);  // {1} = intersection
    REQUIRE(star_uv.members.size() == 1);
    CHECK(star_uv.members[0] == 1);

    CHECK(star(space, 0, filters).members.empty());
    CHECK(star(space, space.ground(), filters).members.size() == 3);

    for (int n = 1; n <= 5; ++n) CHECK(check_intersection_formula(make_space(n)));
}

TEST_CASE("full lab summary passes per size") {
    for (int n = 1; n <= 5; ++n) {
        auto s = run_checks(n);
        CHECK(s.n == n);
        CHECK(s.all_ok());
    }
}
