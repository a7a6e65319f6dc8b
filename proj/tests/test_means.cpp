#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bohrlab/errors.hpp"
#include "bohrlab/means.hpp"

#include <cmath>
#include <sstream>

using namespace bohrlab;

TEST_CASE("mean axioms and evaluation")
{
    auto u = weighted_mean::uniform(1, 100);
    CHECK(std::abs(u.evaluate([](std::int64_t) { return std::complex<double>(1, 0); }) -
                   std::complex<double>(1, 0)) < 1e-12);
    CHECK(u.evaluate_indicator([](std::int64_t n) { return n % 2 == 0; }) ==
          doctest::Approx(0.5));

    auto p7 = weighted_mean::point(7);
    CHECK(p7.evaluate([](std::int64_t n) {
              return std::complex<double>(static_cast<double>(n * n), 0);
          }).real() == doctest::Approx(49.0));

    // nonnegative f keeps a nonnegative mean; mhat(0) = 1
    CHECK(u.mhat(frequency::rational(0, 1)).real() == doctest::Approx(1.0));
    CHECK_THROWS_AS(weighted_mean({{0, -1.0}}), precondition_error);
    CHECK_THROWS_AS(weighted_mean({{0, 0.0}}), precondition_error);
}

TEST_CASE("duplicate support points merge")
{
    weighted_mean m({{3, 0.5}, {3, 0.25}, {5, 0.25}});
    REQUIRE(m.support().size() == 2);
    CHECK(m.support()[0].first == 3);
    CHECK(m.support()[0].second == doctest::Approx(0.75));
}

TEST_CASE("convolution m*f")
{
    auto p5 = weighted_mean::point(5);
    auto f = [](std::int64_t n) { return std::complex<double>(n == 2 ? 1.0 : 0.0, 0.0); };
    CHECK(p5.convolve(f, 3).real() == doctest::Approx(1.0)); // f(5-3) = f(2)
    CHECK(p5.convolve(f, 0).real() == doctest::Approx(0.0));

    auto u = weighted_mean::uniform(1, 10);
    CHECK(std::abs(u.convolve(f, 0) - u.evaluate(f)) < 1e-12);
}

TEST_CASE("support containment of the convolution (exhaustive window)")
{
    // {g : m*f(g) > 0} ⊆ support(m) - {f > 0}
    weighted_mean m({{4, 0.5}, {9, 0.3}, {20, 0.2}});
    auto f = [](std::int64_t n) {
        return std::complex<double>((n == 1 || n == -3) ? 2.0 : 0.0, 0.0);
    };
    std::vector<std::int64_t> diff; // support - {f > 0}
    for (auto [s, w] : m.support()) {
        diff.push_back(s - 1);
        diff.push_back(s + 3);
    }
    for (std::int64_t g = -50; g <= 50; ++g) {
        if (m.convolve(f, g).real() > 0)
            CHECK(std::count(diff.begin(), diff.end(), g) > 0);
    }
}

TEST_CASE("build_polynomial_mean")
{
    // full box: uniform weights on P(n)
    auto full = grid_set::from_predicate_1d(window(0, 999), [](std::int64_t) { return true; });
    polynomial_mean_params params;
    params.p = int_poly::parse("n^2");
    params.qs = {int_poly::parse("n")};
    auto m = build_polynomial_mean(params, full, 30);
    REQUIRE(m.support().size() == 30);
    for (auto [pt, w] : m.support()) CHECK(w == doctest::Approx(m.support()[0].second).epsilon(0.05));

    // B = evens: weights vanish for odd n, so the support is even squares
    auto evens = grid_set::from_predicate_1d(window(0, 999),
                                             [](std::int64_t n) { return n % 2 == 0; });
    auto me = build_polynomial_mean(params, evens, 30);
    for (auto [pt, w] : me.support()) {
        std::int64_t root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(pt))));
        CHECK(root * root == pt);
        CHECK(root % 2 == 0);
    }

    // prime variant with P = n and constant correlation: uniform on primes <= 100
    polynomial_mean_params prime_params;
    prime_params.p = int_poly::parse("n");
    prime_params.qs = {int_poly::parse("0")};
    prime_params.index = mean_index_kind::primes;
    auto mp = build_polynomial_mean(prime_params, full, 100);
    auto primes = primes_upto(100);
    REQUIRE(mp.support().size() == primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        CHECK(mp.support()[i].first == primes[i]);
        CHECK(mp.support()[i].second == doctest::Approx(1.0 / primes.size()));
    }
    // with Q = n the finite box adds a boundary taper: weights stay within
    // |Q(p)| / |box| of uniform
    polynomial_mean_params taper = prime_params;
    taper.qs = {int_poly::parse("n")};
    auto mt = build_polynomial_mean(taper, full, 100);
    for (auto [pt, w] : mt.support())
        CHECK(w == doctest::Approx(1.0 / primes.size()).epsilon(0.15));

    // empty correlation: zero total weight is an error
    auto empty_b = grid_set(1, {window(0, 9), window(0, 0), window(0, 0)});
    CHECK_THROWS_AS(build_polynomial_mean(params, empty_b, 10), precondition_error);
}

TEST_CASE("spectrum scan: uniform mean sees only the trivial frequency")
{
    auto u = weighted_mean::uniform(1, 100000);
    auto rep = spectrum_scan(u, 16, {frequency::parse("sqrt2"), frequency::parse("golden")});
    REQUIRE(rep.rational.size() == 1);
    CHECK(rep.rational[0].freq == frequency::rational(0, 1));
    CHECK(rep.real.empty());
}

TEST_CASE("spectrum scan: squares mean flags 1/4 with modulus sqrt(1/2)")
{
    std::vector<std::int64_t> sq;
    for (std::int64_t n = 1; n <= 10000; ++n) sq.push_back(n * n);
    auto m = weighted_mean::uniform_on(sq);
    auto rep = spectrum_scan(m, 8, {frequency::parse("sqrt2")});
    // mhat(1/4) = (1 - i)/2 exactly at N = 10^4 (half the n are even)
    bool found_quarter = false;
    for (const auto& e : rep.rational) {
        if (e.freq == frequency::rational(1, 4)) {
            found_quarter = true;
            CHECK(std::abs(e.value) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-3));
            CHECK(e.value.real() == doctest::Approx(0.5).epsilon(1e-3));
            CHECK(e.value.imag() == doctest::Approx(-0.5).epsilon(1e-3));
        }
        CHECK(e.freq != frequency::rational(1, 2)); // mhat(1/2) ~ 0
    }
    CHECK(found_quarter);
    CHECK(rep.real.empty()); // sqrt2 stays below the 0.05 threshold
}

TEST_CASE("spectrum scan: point mass at 0 lights up everything")
{
    auto p0 = weighted_mean::point(0);
    auto rep = spectrum_scan(p0, 6, {frequency::parse("sqrt5")});
    // all reduced p/q with q <= 6, plus the real grid point
    for (const auto& e : rep.rational) CHECK(std::abs(e.value) == doctest::Approx(1.0));
    REQUIRE(rep.real.size() == 1);
    CHECK(std::abs(rep.real[0].value) == doctest::Approx(1.0));
}

TEST_CASE("massive accumulation probe")
{
    auto u = weighted_mean::uniform(1, 10000);
    bohr_spec evens{{frequency::rational(1, 2)}, 0.1};
    auto rep = massive_accumulation_probe(u, {evens});
    CHECK(rep.min_value == doctest::Approx(0.5).epsilon(1e-3));

    std::vector<std::int64_t> sq;
    for (std::int64_t n = 1; n <= 10000; ++n) sq.push_back(n * n);
    auto msq = weighted_mean::uniform_on(sq);
    bohr_spec quarter{{frequency::rational(1, 4)}, 0.1};
    auto rep2 = massive_accumulation_probe(msq, {quarter});
    CHECK(rep2.min_value == doctest::Approx(0.5).epsilon(1e-3)); // even n give n^2 = 0 mod 4

    std::vector<std::int64_t> odds;
    for (std::int64_t n = 1; n <= 99; n += 2) odds.push_back(n);
    auto modd = weighted_mean::uniform_on(odds);
    auto rep3 = massive_accumulation_probe(modd, {evens});
    CHECK(rep3.min_value == doctest::Approx(0.0)); // detects the failure
}

TEST_CASE("annihilation probe")
{
    // AC Lebesgue at grid 64 with support avoiding multiples of 64: exactly 0
    torus_measure leb;
    leb.acs = {ac_part{std::vector<double>(64, 1.0), 1.0}};
    std::vector<std::int64_t> pts;
    for (std::int64_t n = 1; n <= 63; ++n) pts.push_back(n);
    auto m = weighted_mean::uniform_on(pts);
    auto rep = annihilation_probe(m, {leb});
    CHECK(rep.max_value < 1e-20);

    // squares mean vs the Cantor measure: small
    std::vector<std::int64_t> sq;
    for (std::int64_t n = 1; n <= 10000; ++n) sq.push_back(n * n);
    auto msq = weighted_mean::uniform_on(sq);
    auto rep2 = annihilation_probe(msq, {torus_measure::cantor(40)});
    CHECK(rep2.max_value < 0.05);

    // point mass at 0 never annihilates: sigma_hat(0) = 1
    auto p0 = weighted_mean::point(0);
    auto rep3 = annihilation_probe(p0, {torus_measure::cantor(40)});
    CHECK(rep3.max_value == doctest::Approx(1.0));

    // measures with atoms are rejected
    CHECK_THROWS_AS(annihilation_probe(p0, {torus_measure::point_mass(frequency::rational(0, 1))}),
                    precondition_error);
}

TEST_CASE("uniform means converge to the zero-atom mass")
{
    torus_measure mix;
    mix.atoms = {{frequency::rational(0, 1), 0.5}};
    mix.cantors = {cantor_part{40, 0.5}};
    double e3 = std::abs(mean_of_fourier(weighted_mean::uniform(1, 1000), mix) - 0.5);
    double e4 = std::abs(mean_of_fourier(weighted_mean::uniform(1, 10000), mix) - 0.5);
    double e5 = std::abs(mean_of_fourier(weighted_mean::uniform(1, 100000), mix) - 0.5);
    CHECK(e4 < e3);
    CHECK(e5 < e4);

    // absolutely continuous catalog entry: same trend toward sigma({0}) = 0.3
    torus_measure mix2;
    mix2.atoms = {{frequency::rational(0, 1), 0.3}};
    std::vector<double> bumpy(64);
    for (std::size_t j = 0; j < 64; ++j) bumpy[j] = 1.0 + 0.8 * std::cos(2 * 3.14159265 * j / 64.0);
    mix2.acs = {ac_part{bumpy, 0.7}};
    double a3 = std::abs(mean_of_fourier(weighted_mean::uniform(1, 1000), mix2) - 0.3);
    double a5 = std::abs(mean_of_fourier(weighted_mean::uniform(1, 100000), mix2) - 0.3);
    CHECK(a5 < a3);
    CHECK(a5 < 0.05);
}

TEST_CASE("bohr_in_convolution: uniform mean on 4Z")
{
    std::vector<std::int64_t> pts;
    for (std::int64_t n = 0; n <= 4000; n += 4) pts.push_back(n);
    auto m = weighted_mean::uniform_on(pts);
    bohr_spec u{{frequency::rational(1, 4)}, 0.3};
    auto out = bohr_in_convolution(m, u, 0.05);

    // frequencies land in the rational spectrum of 4Z
    for (const auto& f : out.freqs) {
        REQUIRE(f.is_rational());
        CHECK(4 % f.den() == 0);
    }
    CHECK(out.eta > 0);
    // containment: enumerated result ⊆ { g : m * 1_U(g) > 0 }
    auto b = enumerate_bohr(out, window(-1000, 1000));
    CHECK(b.contains(0));
    b.for_each([&](std::int64_t g) { CHECK(convolve_bohr_indicator(m, u, g) > 0); });
}

TEST_CASE("bohr_in_convolution: point mass at 0 stays inside U")
{
    auto p0 = weighted_mean::point(0);
    bohr_spec u{{frequency::parse("sqrt2")}, 0.5};
    auto out = bohr_in_convolution(p0, u, 0.05);
    auto b = enumerate_bohr(out, window(-500, 500));
    CHECK(b.contains(0));
    b.for_each([&](std::int64_t g) {
        CHECK(convolve_bohr_indicator(p0, u, g) > 0); // = 1_U(-g)
        CHECK(bohr_member(g, u));
    });
}

TEST_CASE("bohr_in_convolution: squares mean")
{
    std::vector<std::int64_t> sq;
    for (std::int64_t n = 1; n <= 3000; ++n) sq.push_back(n * n);
    auto m = weighted_mean::uniform_on(sq);
    bohr_spec u{{frequency::rational(1, 4)}, 0.3};
    auto out = bohr_in_convolution(m, u, 0.05);
    auto b = enumerate_bohr(out, window(-2000, 2000));
    CHECK(b.contains(0));
    CHECK(b.cardinality() > 1);
    b.for_each([&](std::int64_t g) { CHECK(convolve_bohr_indicator(m, u, g) > 0); });
}

TEST_CASE("bohr_in_convolution: rank-2 U")
{
    std::vector<std::int64_t> pts;
    for (std::int64_t n = 0; n <= 2400; n += 12) pts.push_back(n);
    auto m = weighted_mean::uniform_on(pts);
    bohr_spec u{{frequency::rational(1, 4), frequency::rational(1, 3)}, 0.8};
    auto out = bohr_in_convolution(m, u, 0.05);
    CHECK(out.eta > 0);
    auto b = enumerate_bohr(out, window(-600, 600));
    CHECK(b.contains(0));
    b.for_each([&](std::int64_t g) { CHECK(convolve_bohr_indicator(m, u, g) > 0); });
}

TEST_CASE("bohr_in_convolution: accumulation failure is an error")
{
    // mean supported on odds, U = Bohr({1/2}, small): m * 1_U(0) = 0
    std::vector<std::int64_t> odds;
    for (std::int64_t n = 1; n <= 99; n += 2) odds.push_back(n);
    auto m = weighted_mean::uniform_on(odds);
    bohr_spec u{{frequency::rational(1, 2)}, 0.3};
    CHECK_THROWS_AS(bohr_in_convolution(m, u, 0.05), precondition_error);
}

TEST_CASE("weighted mean CSV round trip")
{
    weighted_mean m({{-3, 0.25}, {0, 0.5}, {11, 0.25}});
    std::stringstream ss;
    m.write_csv(ss);
    auto back = weighted_mean::read_csv(ss);
    REQUIRE(back.support().size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.support()[i].first == m.support()[i].first);
        CHECK(back.support()[i].second == doctest::Approx(m.support()[i].second));
    }
}
