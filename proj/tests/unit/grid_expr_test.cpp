#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mnc/expr.hpp"
#include "mnc/family.hpp"
#include "mnc/function.hpp"
#include "mnc/grid.hpp"

using namespace mnc;

TEST_CASE("grid placement puts the upper endpoint exactly") {
    auto g = make_grid(0.0, 1.0, 0.5);
    REQUIRE(g->size() == 3);
    CHECK(g->points[0] == 0.0);
    CHECK(g->points[1] == 0.5);
    CHECK(g->points[2] == 1.0);

    // 0.3 does not divide 1; the final interval is short, the endpoint exact.
    auto h = make_grid(0.0, 1.0, 0.3);
    REQUIRE(h->size() == 5);
    CHECK(h->points[3] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(h->points[4] == 1.0);

    auto fine = make_grid(0.0, 1.0, 1e-3);
    CHECK(fine->size() == 1001);
    CHECK(fine->points.back() == 1.0);
    CHECK(fine->points[1] == 0.001);
}

TEST_CASE("grid rejects bad intervals") {
    CHECK_THROWS_AS(make_grid(1.0, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("neighborhood is the guarded strict ball") {
    auto g = make_grid(0.0, 1.0, 0.05);

    auto left = neighborhood(*g, 0.0, 0.1);
    CHECK(left.first == 0);
    CHECK(left.last == 1);  // {0, 0.05}; 0.1 itself is outside the strict ball

    auto right = neighborhood(*g, 1.0, 0.1);
    CHECK(right.count() == 2);  // {0.95, 1}
    CHECK(g->points[right.first] == doctest::Approx(0.95));

    auto mid = neighborhood(*g, 0.5, 0.1);
    CHECK(mid.count() == 3);  // {0.45, 0.5, 0.55}
    CHECK(g->points[mid.first] == doctest::Approx(0.45));
    CHECK(g->points[mid.last] == doctest::Approx(0.55));
}

TEST_CASE("ball membership guards against placement dust") {
    // 18 * fl(0.05) lands a hair inside 0.1 of 0.9 in exact float terms;
    // the guard keeps the radius-boundary point out.
    double p18 = 18 * 0.05;
    CHECK(!ball_contains(p18, 1.0, 0.1, 0.05));
    CHECK(ball_contains(0.95, 1.0, 0.1, 0.05));
    CHECK(ball_contains(1.0, 1.0, 0.1, 0.05));
}

TEST_CASE("grid_index_of finds exact points only") {
    auto g = make_grid(0.0, 1.0, 0.05);
    CHECK(grid_index_of(*g, 0.55) == 11);
    CHECK(grid_index_of(*g, 0.0) == 0);
    CHECK(grid_index_of(*g, 1.0) == 20);
    CHECK_THROWS_AS(grid_index_of(*g, 0.543), std::invalid_argument);
}

TEST_CASE("parser reports 1-based error columns") {
    try {
        parse_family("sin(3*t) +");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.column() == 11);
    }

    CHECK_THROWS_AS(parse_family("t + q"), ParseError);     // unknown name
    CHECK_THROWS_AS(parse_family("(t"), ParseError);        // unclosed paren
    CHECK_THROWS_AS(parse_family("t 2"), ParseError);       // trailing junk
    CHECK_THROWS_AS(parse_time_function("t^n"), ParseError);  // n out of context
    CHECK_THROWS_AS(parse_scalar_map("t"), ParseError);
}

TEST_CASE("rendering round-trips the tree") {
    const char* samples[] = {
        "t^n",
        "n*t^n",
        "sin(3*t) + cos(t/2)",
        "exp(t)*abs(t - 0.5)",
        "(t + 1)^2 / (n + 1)",
        "1e-3 * t",
    };
    for (const char* s : samples) {
        auto first = parse_family(s);
        auto second = parse_family(to_string(first));
        CHECK(first == second);
    }
}

TEST_CASE("power evaluation follows the log-space rule") {
    CHECK(pow_eval(0.0, 0.0) == 1.0);
    CHECK(pow_eval(0.0, 3.0) == 0.0);
    CHECK(pow_eval(2.0, 10.0) == doctest::Approx(1024.0));
    CHECK(pow_eval(-2.0, 2.0) == doctest::Approx(4.0));
    CHECK(std::isnan(pow_eval(-2.0, 0.5)));
    // Enormous exponents underflow to zero instead of erroring.
    CHECK(pow_eval(0.5, 1e6) == 0.0);

    EvalPoint p;
    p.t = 1.0;
    p.n = 1e4;
    CHECK(evaluate(parse_family("t^n"), p) == 1.0);
}

TEST_CASE("evaluation covers all four variable contexts") {
    EvalPoint p;
    p.t = 0.5;
    p.n = 3.0;
    p.s = 0.25;
    p.x = 2.0;
    CHECK(evaluate(parse_family("t^n"), p) == doctest::Approx(0.125));
    CHECK(evaluate(parse_kernel("exp(t*s)"), p) == doctest::Approx(std::exp(0.125)));
    CHECK(evaluate(parse_time_function("2*t"), p) == doctest::Approx(1.0));
    CHECK(evaluate(parse_scalar_map("x^2 + 1"), p) == doctest::Approx(5.0));
}

TEST_CASE("sup distance on shared grids") {
    auto g = make_grid(0.0, 1.0, 1e-3);
    auto id = [&](double e) {
        SampledFunction f;
        f.domain = g;
        for (double t : g->points) f.values.push_back(std::pow(t, e));
        return f;
    };
    auto f1 = id(1), f2 = id(2), f3 = id(3);
    CHECK(sup_distance(f1, f2) == doctest::Approx(0.25).epsilon(1e-9));
    // max of t - t^3 sits at 1/sqrt(3), between grid points.
    CHECK(sup_distance(f1, f3) == doctest::Approx(0.3849001794597505).epsilon(1e-5));

    SampledFunction other;
    other.domain = make_grid(0.0, 1.0, 0.5);
    other.values = {0, 0, 0};
    CHECK_THROWS_AS(sup_distance(f1, other), std::invalid_argument);
}

TEST_CASE("scaling a family composes with materialization") {
    auto g = make_grid(0.0, 1.0, 0.1);
    auto fam = parametric_family(g, parse_family("t^n"), 5, false, "p");
    auto doubled = scale(fam, -2.0);
    auto base = materialize(fam);
    auto scaled = materialize(doubled);
    REQUIRE(base.size() == scaled.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = 0; j < g->size(); ++j)
            CHECK(scaled[i].values[j] == doctest::Approx(-2.0 * base[i].values[j]));
}

TEST_CASE("materialize reports non-finite values with context") {
    auto g = make_grid(0.0, 1.0, 0.5);
    auto fam = parametric_family(g, parse_family("1/t"), 2, false, "bad");
    CHECK_THROWS_AS(materialize(fam), EvaluationError);
}

TEST_CASE("union and convex sampling preserve membership structure") {
    auto g = make_grid(0.0, 1.0, 0.1);
    auto a = parametric_family(g, parse_family("t^n"), 3, false, "a");
    SampledFunction half;
    half.domain = g;
    half.label = "0.5";
    half.values.assign(g->size(), 0.5);
    auto b = explicit_family(g, {half}, "b");

    auto u = union_families(a, b);
    CHECK(u.members.size() == 4);

    auto hull = convex_sample(u, 5, 99);
    REQUIRE(hull.members.size() == 9);
    // Convex draws stay inside the pointwise envelope of the originals.
    for (std::size_t j = 0; j < g->size(); ++j) {
        double lo = 1e300, hi = -1e300;
        for (std::size_t i = 0; i < 4; ++i) {
            lo = std::min(lo, u.members[i].values[j]);
            hi = std::max(hi, u.members[i].values[j]);
        }
        for (std::size_t i = 4; i < hull.members.size(); ++i) {
            CHECK(hull.members[i].values[j] >= lo - 1e-12);
            CHECK(hull.members[i].values[j] <= hi + 1e-12);
        }
    }

    // Draw d is reproducible regardless of how many draws run.
    auto hull2 = convex_sample(u, 2, 99);
    for (std::size_t j = 0; j < g->size(); ++j)
        CHECK(hull2.members[4].values[j] == hull.members[4].values[j]);
}
