#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bohrlab/errors.hpp"
#include "bohrlab/expsum.hpp"

#include <cmath>

using namespace bohrlab;

TEST_CASE("weyl sums: exact rational phases")
{
    auto lin = phase_spec::polynomial(int_poly::parse("n"), frequency::rational(0, 1));
    CHECK(std::abs(weyl_sum(lin, 1000) - std::complex<double>(1, 0)) < 1e-12);

    auto half = phase_spec::polynomial(int_poly::parse("n"), frequency::rational(1, 2));
    CHECK(std::abs(weyl_sum(half, 1000)) < 1e-12); // pairwise cancellation, N even
}

TEST_CASE("weyl sum decays for n^2 sqrt2")
{
    auto sq = phase_spec::polynomial(int_poly::parse("n^2"), frequency::parse("sqrt2"));
    CHECK(std::abs(weyl_sum(sq, 100000)) < 0.02);
}

TEST_CASE("decay sanity: |S_N| shrinks from N=1e3 to N=1e6")
{
    auto sq = phase_spec::polynomial(int_poly::parse("n^2"), frequency::parse("sqrt2"));
    CHECK(std::abs(weyl_sum(sq, 1000000)) < std::abs(weyl_sum(sq, 1000)));
}

TEST_CASE("conjugation symmetry: sum at -alpha is the conjugate")
{
    auto plus = phase_spec::polynomial(int_poly::parse("n^3-2n"), frequency::rational(3, 7));
    auto minus = phase_spec::polynomial(int_poly::parse("n^3-2n"), frequency::rational(-3, 7));
    auto a = weyl_sum(plus, 5000);
    auto b = weyl_sum(minus, 5000);
    CHECK(std::abs(a - std::conj(b)) < 1e-12);

    // real-frequency version at fixed-point resolution: alpha and 1 - alpha
    auto f = frequency::parse("sqrt2");
    auto fneg = frequency::real(f.frac().negate());
    auto pa = phase_spec::polynomial(int_poly::parse("n^2"), f);
    auto pb = phase_spec::polynomial(int_poly::parse("n^2"), fneg);
    CHECK(std::abs(weyl_sum(pa, 20000) - std::conj(weyl_sum(pb, 20000))) < 1e-10);
}

TEST_CASE("rational-phase exactness: full period equals the residue average")
{
    int_poly p = int_poly::parse("n^2+3n");
    for (std::int64_t q : {3, 4, 5, 12}) {
        auto spec = phase_spec::polynomial(p, frequency::rational(1, q));
        // period of P(n) mod q divides q
        auto full = weyl_sum(spec, q);
        std::complex<double> residue_avg = 0.0;
        for (std::int64_t r = 1; r <= q; ++r) {
            double ph = static_cast<double>(p.eval_mod(r, q)) / static_cast<double>(q);
            residue_avg += std::exp(std::complex<double>(0, 2 * 3.14159265358979323846 * ph));
        }
        residue_avg /= static_cast<double>(q);
        CHECK(std::abs(full - residue_avg) < 1e-12);
    }
}

TEST_CASE("weighted sums")
{
    int_poly p = int_poly::parse("n");
    frequency half = frequency::rational(1, 2);

    std::vector<double> ones(1000, 1.0);
    auto ws = weighted_sum(p, half, ones);
    auto plain = weyl_sum(phase_spec::polynomial(p, half), 1000);
    CHECK(std::abs(ws - plain) < 1e-12);

    std::vector<double> zeros(1000, 0.0);
    CHECK(std::abs(weighted_sum(p, half, zeros)) == 0.0);

    // evens-only weights with alpha = 1/2: every surviving term is e(integer) = 1
    std::vector<double> w(1000, 0.0);
    for (std::size_t i = 0; i < w.size(); ++i)
        if ((i + 1) % 2 == 0) w[i] = 0.5;
    auto v = weighted_sum(p, half, w);
    CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(v.real() > 0.2);

    CHECK_THROWS_AS(weighted_sum(p, half, std::vector<double>{-1.0}), precondition_error);
}

TEST_CASE("prime-weighted sums at N = 1e6")
{
    int_poly lin = int_poly::parse("n");
    auto at0 = prime_weighted_sum(lin, frequency::rational(0, 1), 1000000);
    CHECK(at0.real() == doctest::Approx(1.0845).epsilon(2e-3)); // (log 1e6 / 1e6) * 78498
    CHECK(at0.imag() == doctest::Approx(0.0));

    auto athalf = prime_weighted_sum(lin, frequency::rational(1, 2), 1000000);
    CHECK(athalf.real() == doctest::Approx(-1.0845).epsilon(2e-3)); // odd primes flip sign

    auto sq = prime_weighted_sum(int_poly::parse("n^2"), frequency::parse("sqrt2"), 1000000);
    CHECK(std::abs(sq) < 0.05);
}

TEST_CASE("hardy sums")
{
    auto c32 = hardy_exponent::parse("3/2");
    CHECK(std::abs(hardy_sum({c32}, {frequency::rational(0, 1)}, 10000) -
                   std::complex<double>(1, 0)) < 1e-12);

    auto v = hardy_sum({c32}, {frequency::parse("sqrt2")}, 100000);
    CHECK(std::abs(v) < 0.05);

    auto v2 = hardy_sum({c32, hardy_exponent::parse("5/2")},
                        {frequency::rational(1, 3), frequency::parse("sqrt2")}, 100000);
    CHECK(std::abs(v2) < 0.05);

    CHECK_THROWS_AS(hardy_sum({c32, c32}, {frequency::rational(0, 1), frequency::rational(0, 1)},
                              10),
                    precondition_error);
}

TEST_CASE("phase precision: degree-3 polynomial at large n stays exact")
{
    // frac(P(n) * p/q) must agree with exact modular arithmetic
    int_poly p = int_poly::parse("n^3");
    frequency f = frequency::rational(1, 1000003);
    auto spec = phase_spec::polynomial(p, f);
    std::int64_t n = 9999991;
    __int128 big = p.eval(n);
    std::int64_t residue = static_cast<std::int64_t>(big % 1000003);
    CHECK(spec.frac_at(n) ==
          doctest::Approx(static_cast<double>(residue) / 1000003.0).epsilon(1e-15));
}

TEST_CASE("sums are bounded by the largest weight")
{
    int_poly p = int_poly::parse("n^2-3n");
    frequency a = frequency::parse("golden");
    CHECK(std::abs(weyl_sum(phase_spec::polynomial(p, a), 777)) <= 1.0 + 1e-12);
    std::vector<double> w(500);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = 0.25 + 0.5 * ((i * 7919) % 100) / 100.0;
    double wmax = *std::max_element(w.begin(), w.end());
    CHECK(std::abs(weighted_sum(p, a, w)) <= wmax + 1e-12);
    CHECK(std::abs(hardy_sum({hardy_exponent::parse("5/2")}, {a}, 2000)) <= 1.0 + 1e-12);
}

TEST_CASE("sup frequency scan")
{
    std::vector<double> ones(1024, 1.0);
    auto r = sup_frequency_scan(ones, 4096);
    CHECK(r.value == doctest::Approx(1.0));
    CHECK(r.at_frequency == doctest::Approx(0.0));

    std::vector<double> alt(1024);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
    auto r2 = sup_frequency_scan(alt, 4096);
    CHECK(r2.value == doctest::Approx(1.0));
    CHECK(std::abs(r2.at_frequency - 0.5) < 0.01);

    CHECK_THROWS_AS(sup_frequency_scan(ones, 10), precondition_error);
}
