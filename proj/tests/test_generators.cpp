#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bohrlab/densities.hpp"
#include "bohrlab/errors.hpp"
#include "bohrlab/generators.hpp"

#include <cmath>

using namespace bohrlab;

TEST_CASE("fat cantor: zero removals is the whole interval")
{
    fat_cantor_set v(1, 3, 4, 0, 1, 8); // [1/4, 3/4], nothing removed
    CHECK(v.member(0.25));
    CHECK(v.member(0.5));
    CHECK(v.member(0.75));
    CHECK_FALSE(v.member(0.2));
    CHECK_FALSE(v.member(0.8));
    auto [lo, hi] = v.measure_bounds();
    CHECK(lo == doctest::Approx(0.5));
    CHECK(hi == doctest::Approx(0.5));
}

TEST_CASE("fat cantor on [1/4,3/4] with scale 1/2: measure bound and holes")
{
    fat_cantor_set v(1, 3, 4, 1, 2, 12);
    auto [lo, hi] = v.measure_bounds();
    // removed mass at depth infinity is c L / 2 = 0.125, so the true measure
    // is exactly 0.375; the depth-12 bracket must contain it with lo >= 0.3
    CHECK(lo >= 0.3);
    CHECK(lo <= 0.375);
    CHECK(hi >= 0.375);
    CHECK(hi <= 0.5);

    // the first removed interval is the open middle of length L/8 = 1/16
    // centered at 1/2: its midpoint is excluded, the surviving edges remain
    CHECK_FALSE(v.member(0.5));
    CHECK(v.member(0.25));
    CHECK(v.member(0.75));
    CHECK(v.member(0.5 - 1.0 / 32.0)); // boundary of the removed middle survives
    CHECK_FALSE(v.member(0.5 - 1.0 / 64.0));

    // nowhere density at the built depth: interval count doubles per stage
    CHECK(v.interval_count() == (1u << 12));
}

TEST_CASE("fat cantor rejects destructive parameters")
{
    CHECK_THROWS_AS(fat_cantor_set(1, 3, 4, 8, 1, 4), precondition_error);
    CHECK_THROWS_AS(fat_cantor_set(3, 1, 4, 1, 2, 4), precondition_error);
}

TEST_CASE("skew orbit: constant second coordinate when alpha = x1 = 0")
{
    skew_orbit_spec spec;
    spec.alpha = frequency::rational(0, 1);
    spec.x1 = frequency::rational(0, 1);
    spec.y1 = frequency::rational(1, 2);
    fat_cantor_set v(1, 3, 4, 0, 1, 4);
    auto s = skew_orbit_set(spec, v, 100);
    CHECK(s.cardinality() == 101); // y stays 1/2 in [1/4, 3/4]
}

TEST_CASE("skew orbit closed form equals step-by-step iteration exactly")
{
    skew_orbit_spec spec;
    spec.alpha = frequency::real(frequency::parse("sqrt2").frac()); // frac(sqrt2) = sqrt2 - 1
    spec.x1 = frequency::real_from_double(0.123);
    spec.y1 = frequency::real_from_double(0.456);
    // iterate T(x, y) = (x + a, y + 2x + a) in fixed point
    frac192 x = spec.x1.frac();
    frac192 y = spec.y1.frac();
    const frac192 a = spec.alpha.frac();
    for (std::int64_t n = 0; n <= 10000; ++n) {
        auto closed = skew_second_coord(spec, n);
        CHECK(closed == y);
        frac192 ynext = y.add(x).add(x).add(a);
        x = x.add(a);
        y = ynext;
    }
}

TEST_CASE("skew orbit density approaches the target measure")
{
    skew_orbit_spec spec;
    spec.alpha = frequency::parse("sqrt2");
    spec.x1 = frequency::real_from_double(0.2547756364723);
    spec.y1 = frequency::real_from_double(0.0314159265);
    fat_cantor_set v(1, 3, 4, 1, 2, 12);
    auto s = skew_orbit_set(spec, v, 1000000);
    auto [lo, hi] = v.measure_bounds();
    double density = window_density(s);
    CHECK(density > lo - 0.05);
    CHECK(density < hi + 0.05);
}

TEST_CASE("two recurrence certificate")
{
    auto all = window_set::full(window(0, 100));
    auto r = two_recurrence_certificate(all, frequency::rational(0, 1), frequency::rational(0, 1),
                                        0.1, 100);
    CHECK(r == 1);

    // squares with alpha = sqrt2, beta = sqrt3: a witness exists in range
    window_set squares(window(0, 100000000));
    for (std::int64_t n = 1; n * n <= 100000000; ++n) squares.insert(n * n);
    auto r2 = two_recurrence_certificate(squares, frequency::parse("sqrt2"),
                                         frequency::parse("sqrt3"), 0.1, 100000000);
    REQUIRE(r2.has_value());
    CHECK(frequency::parse("sqrt3").torus_norm(*r2) < 0.1);
    CHECK(frequency::parse("sqrt2").times_frac192(static_cast<__int128>(*r2) * *r2).torus_norm() <
          0.1);
}

TEST_CASE("skew-product return set: matched certificate is provably empty")
{
    skew_orbit_spec spec;
    spec.alpha = frequency::parse("sqrt2");
    spec.x1 = frequency::real_from_double(0.2547756364723);
    spec.y1 = frequency::real_from_double(0.0314159265); // ||y1|| < 1/8
    fat_cantor_set v(9, 11, 20, 1, 2, 12);               // inside [1/4, 3/4]
    auto s = skew_orbit_set(spec, v, 200000);
    CHECK(s.cardinality() > 0);
    // every orbit point lands in V ⊆ [1/4, 3/4]
    s.for_each([&](std::int64_t n) {
        double y = skew_second_coord(spec, n).to_double();
        CHECK(y >= 0.25);
        CHECK(y <= 0.75);
    });
    // beta = 2 x1, eps = 1/16: ||y1|| + 2 eps < 1/4 makes a witness impossible
    frequency beta2 = frequency::real(spec.x1.frac().add(spec.x1.frac()));
    auto cert = two_recurrence_certificate(s, spec.alpha, beta2, 1.0 / 16.0, 200000);
    CHECK_FALSE(cert.has_value());
}

TEST_CASE("prime tower: growth rule, membership, no 4-chain")
{
    prime_tower t = prime_tower_set({3, 5, 7, 11, 13}, {100, 100, 100, 100, 100});
    CHECK(growth_rule_holds(t));
    REQUIRE(t.intervals.size() == 5);
    // strengthened spacing: min I_{i+1} > 2 sum of maxima
    __int128 sum = 0;
    for (std::size_t i = 0; i < t.intervals.size(); ++i) {
        if (i) CHECK(static_cast<__int128>(t.intervals[i].first) > 2 * sum);
        sum += t.intervals[i].second;
    }
    // membership: n = 1 mod p_i inside its interval
    t.set.for_each([&](std::int64_t n) {
        bool inside = false;
        for (std::size_t i = 0; i < t.intervals.size(); ++i) {
            if (n >= t.intervals[i].first && n <= t.intervals[i].second) {
                CHECK(n % t.primes[i] == 1);
                inside = true;
            }
        }
        CHECK(inside);
    });
    auto chain = chain_search(t.set, 4);
    CHECK_FALSE(chain.has_value());
    // short lengths even rule out 3-chains
    CHECK_FALSE(chain_search(t.set, 3).has_value());
}

TEST_CASE("chain search finds arithmetic progressions in the evens")
{
    auto evens = window_set::from_predicate(window(0, 40),
                                            [](std::int64_t n) { return n % 2 == 0; });
    auto chain = chain_search(evens, 5);
    REQUIRE(chain.has_value());
    CHECK(chain->size() == 5);
    CHECK((*chain)[0] == 0);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) CHECK(evens.contains((*chain)[j] - (*chain)[i]));
    CHECK(*chain == std::vector<std::int64_t>{0, 2, 4, 6, 8});

    auto one = window_set::from_members(window(1, 1), {1});
    CHECK_FALSE(chain_search(one, 3).has_value()); // needs difference 2

    // exhausted budgets surface as explicit errors, never wrong answers
    CHECK_THROWS_AS(chain_search(evens, 5, 2), budget_error);
}

TEST_CASE("parity alternating set")
{
    auto s = parity_alternating_set({{0, 9}, {100, 199}}, 2.0);
    for (std::int64_t n = 0; n <= 9; ++n) CHECK(s.contains(n) == (n % 2 == 0));
    for (std::int64_t n = 100; n <= 199; ++n) CHECK(s.contains(n) == (n % 2 == 1));
    CHECK_FALSE(s.contains(50));

    CHECK_THROWS_AS(parity_alternating_set({{0, 9}, {100, 109}}, 5.0), precondition_error);

    // density structure against B = 2Z: zero in odd blocks, half in even blocks
    auto in_even_block = s.restricted(window(0, 9));
    auto in_odd_block = s.restricted(window(100, 199));
    std::int64_t even_hits = 0, odd_hits = 0;
    in_even_block.for_each([&](std::int64_t n) { if (n % 2 == 0) ++even_hits; });
    in_odd_block.for_each([&](std::int64_t n) { if (n % 2 == 0) ++odd_hits; });
    CHECK(even_hits == 5);
    CHECK(odd_hits == 0);
}

TEST_CASE("rotation return times: alpha = 1/4")
{
    // U below 1/4 isolates the fixed point: R = 4Z
    auto r = rotation_return_times(frequency::rational(1, 4), frequency::rational(0, 1),
                                   {torus_interval{0.0, 0.2}}, 100);
    for (std::int64_t n = 0; n <= 100; ++n) CHECK(r.contains(n) == (n % 4 == 0));

    // U = [0, 0.3] additionally catches the orbit point 1/4
    auto r2 = rotation_return_times(frequency::rational(1, 4), frequency::rational(0, 1),
                                    {torus_interval{0.0, 0.3}}, 100);
    for (std::int64_t n = 0; n <= 100; ++n)
        CHECK(r2.contains(n) == (n % 4 == 0 || n % 4 == 1));
}

TEST_CASE("skew return times agree with the orbit set on a product window")
{
    skew_orbit_spec spec;
    spec.alpha = frequency::parse("golden");
    spec.x1 = frequency::real_from_double(0.3);
    spec.y1 = frequency::real_from_double(0.1);
    auto r = skew_return_times(spec, {torus_interval{0.25, 0.75}}, 5000);
    fat_cantor_set box(1, 3, 4, 0, 1, 0); // plain [1/4, 3/4]
    auto s = skew_orbit_set(spec, box, 5000);
    CHECK(r == s);
}

TEST_CASE("ip prefix set of {1, 10, 100, 1000}")
{
    auto s = ip_prefix_set({1, 10, 100, 1000});
    CHECK(s.cardinality() == 15);
    CHECK(s.contains(1));
    CHECK(s.contains(11));
    CHECK(s.contains(1111));
    CHECK_FALSE(s.contains(2));
}
