#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bohrlab/errors.hpp"
#include "bohrlab/window_set.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace bohrlab;

namespace {

// naive oracles: the double loops the bit-vector engine must reproduce
std::set<std::int64_t> naive_sumset(const std::vector<std::int64_t>& x,
                                    const std::vector<std::int64_t>& y)
{
    std::set<std::int64_t> out;
    for (auto a : x)
        for (auto b : y) out.insert(a + b);
    return out;
}

std::set<std::int64_t> naive_diffset(const std::vector<std::int64_t>& x)
{
    std::set<std::int64_t> out;
    for (auto a : x)
        for (auto b : x) out.insert(a - b);
    return out;
}

std::vector<std::int64_t> random_members(window w, std::size_t count, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::int64_t> u(w.lo, w.hi);
    std::set<std::int64_t> s;
    while (s.size() < count) s.insert(u(rng));
    return {s.begin(), s.end()};
}

} // namespace

TEST_CASE("difference set: basic examples")
{
    auto a = window_set::from_members(window(0, 1), {0, 1});
    auto d = difference_set(a);
    CHECK(d.members() == std::vector<std::int64_t>{-1, 0, 1});

    auto ap = window_set::from_members(window(0, 4), {0, 2, 4});
    CHECK(difference_set(ap).members() == std::vector<std::int64_t>{-4, -2, 0, 2, 4});

    CHECK_THROWS_AS(difference_set(window_set(window(0, 5))), empty_set_error);
}

TEST_CASE("difference set is symmetric and contains 0")
{
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        auto mem = random_members(window(-300, 300), 40, rng);
        auto a = window_set::from_members(window(-300, 300), mem);
        auto d = difference_set(a);
        CHECK(d.contains(0));
        d.for_each([&](std::int64_t n) { CHECK(d.contains(-n)); });
    }
}

TEST_CASE("cyclic difference set covers Z_101 from a long interval")
{
    // A = residues 0..60 of Z_101: every residue is a difference (oracle:
    // brute force over all 61^2 pairs)
    cyclic_set a(101);
    for (std::int64_t r = 0; r <= 60; ++r) a.insert(r);
    auto d = a.sum_shift(a.negate());
    std::set<std::int64_t> oracle;
    for (std::int64_t x = 0; x <= 60; ++x)
        for (std::int64_t y = 0; y <= 60; ++y) oracle.insert(((x - y) % 101 + 101) % 101);
    CHECK(oracle.size() == 101);
    CHECK(d.cardinality() == 101);
}

TEST_CASE("sumset: examples")
{
    auto x = window_set::from_members(window(-1, 1), {-1, 0, 1});
    auto y = window_set::from_members(window(1, 9), {1, 4, 9});
    auto s = sumset(x, y);
    CHECK(s.members() == std::vector<std::int64_t>{0, 1, 2, 3, 4, 5, 8, 9, 10});
    CHECK(s.win().lo == 0);
    CHECK(s.win().hi == 10);

    auto zero = window_set::from_members(window(0, 0), {0});
    CHECK(sumset(x, zero) == x);

    CHECK_THROWS_AS(sumset(x, window_set(window(0, 3))), empty_set_error);
}

TEST_CASE("sumset matches the naive oracle on random 200-element sets")
{
    std::mt19937_64 rng(42);
    for (int t = 0; t < 10; ++t) {
        auto xm = random_members(window(0, 10000), 200, rng);
        auto ym = random_members(window(0, 10000), 200, rng);
        auto x = window_set::from_members(window(0, 10000), xm);
        auto y = window_set::from_members(window(0, 10000), ym);
        auto s = sumset(x, y);
        auto oracle = naive_sumset(xm, ym);
        CHECK(s.cardinality() == static_cast<std::int64_t>(oracle.size()));
        for (auto v : oracle) CHECK(s.contains(v));
    }
}

TEST_CASE("difference set matches the naive oracle")
{
    std::mt19937_64 rng(7);
    auto am = random_members(window(-500, 500), 120, rng);
    auto a = window_set::from_members(window(-500, 500), am);
    auto d = difference_set(a);
    auto oracle = naive_diffset(am);
    CHECK(d.cardinality() == static_cast<std::int64_t>(oracle.size()));
    for (auto v : oracle) CHECK(d.contains(v));
}

TEST_CASE("dilate: examples and degenerate scalar")
{
    auto a = window_set::from_members(window(1, 3), {1, 2, 3});
    CHECK(dilate(a, 2).members() == std::vector<std::int64_t>{2, 4, 6});

    auto b = window_set::from_members(window(-1, 2), {-1, 0, 2});
    CHECK(dilate(b, -1).members() == std::vector<std::int64_t>{-2, 0, 1});

    auto c = window_set::from_members(window(5, 7), {5, 7});
    CHECK(dilate(c, 0).members() == std::vector<std::int64_t>{0});
}

TEST_CASE("sumset associativity and commutativity on random triples")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
        auto x = window_set::from_members(window(0, 400), random_members(window(0, 400), 25, rng));
        auto y = window_set::from_members(window(-200, 100), random_members(window(-200, 100), 25, rng));
        auto z = window_set::from_members(window(50, 300), random_members(window(50, 300), 25, rng));
        CHECK(sumset(x, y) == sumset(y, x));
        CHECK(sumset(sumset(x, y), z) == sumset(x, sumset(y, z)));
    }
}

TEST_CASE("contains_subgroup")
{
    auto evens = window_set::from_predicate(window(-50, 50),
                                            [](std::int64_t n) { return n % 2 == 0; });
    CHECK(evens.contains_subgroup(2, window(-50, 50)));

    auto holed = evens;
    holed.erase(48);
    CHECK_FALSE(holed.contains_subgroup(2, window(-50, 50)));

    CHECK_THROWS_AS(evens.contains_subgroup(2, window(-60, 50)), bounds_error);
}

TEST_CASE("grid correlation density")
{
    // whole box, v = 0
    auto full = grid_set::from_predicate_1d(window(0, 99), [](std::int64_t) { return true; });
    CHECK(full.correlation_density({0, 0, 0}) == doctest::Approx(1.0));

    // even lattice in [0,99], v = 2 -> 49/100
    auto even = grid_set::from_predicate_1d(window(0, 99),
                                            [](std::int64_t n) { return n % 2 == 0; });
    CHECK(even.correlation_density({2, 0, 0}) == doctest::Approx(49.0 / 100.0));

    // random B density 0.5 in [0,999], v = 7: equals the naive count
    auto b = grid_set::random_density(1, {window(0, 999), window(0, 0), window(0, 0)}, 0.5, 99);
    std::int64_t naive = 0;
    for (std::int64_t x = 0; x <= 999; ++x)
        if (b.contains({x, 0, 0}) && x + 7 <= 999 && b.contains({x + 7, 0, 0})) ++naive;
    CHECK(b.correlation_density({7, 0, 0}) ==
          doctest::Approx(static_cast<double>(naive) / 1000.0));

    // near-symmetry under v -> -v: boundary effect only
    double fwd = b.correlation_density({7, 0, 0});
    double bwd = b.correlation_density({-7, 0, 0});
    CHECK(std::abs(fwd - bwd) <= 7.0 / 1000.0 + 1e-12);
}

TEST_CASE("cyclic sumset: FFT convolution equals bit-shift result")
{
    std::mt19937_64 rng(11);
    for (std::int64_t n : {64, 128, 1024, 16384}) {
        auto a = cyclic_set::random_density(n, 0.3, rng());
        auto b = cyclic_set::random_density(n, 0.2, rng());
        if (a.cardinality() == 0 || b.cardinality() == 0) continue;
        CHECK(a.sum_shift(b) == a.sum_fft(b));
    }
}

TEST_CASE("serialization round trips")
{
    auto a = window_set::from_members(window(-13, 77), {-13, -1, 0, 5, 63, 77});
    std::stringstream text;
    a.write_text(text);
    auto at = window_set::read_text(text);
    CHECK(at == a);

    std::stringstream bin;
    a.write_binary(bin);
    auto ab = window_set::read_binary(bin);
    CHECK(ab == a);
    CHECK(ab.win() == a.win());
}

TEST_CASE("binary layout is bounds-then-LSB-first-bits")
{
    auto a = window_set::from_members(window(0, 8), {0, 3, 8});
    std::stringstream bin;
    a.write_binary(bin);
    std::string raw = bin.str();
    REQUIRE(raw.size() == 8 + 8 + 2);
    CHECK(static_cast<unsigned char>(raw[0]) == 0);   // lo = 0 LE
    CHECK(static_cast<unsigned char>(raw[8]) == 8);   // hi = 8 LE
    CHECK(static_cast<unsigned char>(raw[16]) == 0b00001001);
    CHECK(static_cast<unsigned char>(raw[17]) == 0b00000001);
}
