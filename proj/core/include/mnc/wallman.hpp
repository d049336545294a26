#pragma once

#include <cstdint>
#include <vector>

namespace mnc::wallman {

// Finite discrete space on points {0..n-1}, n <= 5.  Every subset is a zero
// set and an open set, so subsets are uint32_t bitmasks (bit t = point t)
// and set-families are uint32_t bitmasks over subsets (bit b = subset b).
struct FiniteSpace {
    int n = 1;
    std::uint32_t ground() const { return (1u << n) - 1u; }
    std::uint32_t subset_count() const { return 1u << n; }
};

FiniteSpace make_space(int n);  // throws unless 1 <= n <= 5

using SubsetMask = std::uint32_t;
using SetFamily = std::uint32_t;

struct Ultrafilter {
    SetFamily sets = 0;
    bool contains(SubsetMask subset) const { return (sets >> subset) & 1u; }
};

// Intersection of all members; the empty family yields the ground set.
SubsetMask family_intersection(const FiniteSpace& space, SetFamily fam);

// Every finite subcollection has nonempty intersection.  For a finite
// family that reduces to: the total intersection is nonempty.
bool satisfies_omega1(const FiniteSpace& space, SetFamily fam);

// Maximality: no absent subset can be adjoined without breaking omega1.
bool satisfies_omega2(const FiniteSpace& space, SetFamily fam);

bool is_omega_ultrafilter(const FiniteSpace& space, SetFamily fam);

// The lemma characterization: closed under finite (pair and triple)
// intersections, and any zero set meeting every member belongs to the
// family.  Properness (the empty set is not a member) is part of being a
// family of zero sets with nonempty intersections; without it the literal
// two conditions admit degenerate families such as {emptyset}.
bool check_characterization(const FiniteSpace& space, SetFamily fam);

Ultrafilter principal_ultrafilter(const FiniteSpace& space, int t);

// All omega-ultrafilters in ascending point order.  On a finite discrete
// space these are exactly the principal filters P_t; each candidate is
// re-verified against both axioms before being returned.
std::vector<Ultrafilter> enumerate_ultrafilters(const FiniteSpace& space);

// (omega1)+(omega2) <=> characterization over every candidate family.
// Exhaustive over all 2^(2^n) families; practical for n <= 4.
bool characterization_matches_definition(const FiniteSpace& space);

// A union B in U implies A in U or B in U, for every ultrafilter and pair.
bool check_union_corollary(const FiniteSpace& space);

struct StarSet {
    SubsetMask open_set = 0;
    std::vector<std::size_t> members;  // indices into the enumeration
};

StarSet star(const FiniteSpace& space, SubsetMask open_set,
             const std::vector<Ultrafilter>& filters);

// star(U) meet star(V) = star(U meet V) over all open pairs, star of the
// empty set is empty, star of the ground set is everything, stars cover.
bool check_intersection_formula(const FiniteSpace& space);

struct LabSummary {
    int n = 0;
    bool count_ok = false;
    bool all_principal = false;
    bool characterization_ok = false;  // exhaustive for n <= 4
    bool union_ok = false;
    bool stars_ok = false;
    bool all_ok() const {
        return count_ok && all_principal && characterization_ok && union_ok && stars_ok;
    }
};

LabSummary run_checks(int n);

}
