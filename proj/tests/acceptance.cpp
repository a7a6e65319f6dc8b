// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Every tolerance is pinned here, in code.
#include "bohrlab/arith.hpp"
#include "bohrlab/bohr.hpp"
#include "bohrlab/densities.hpp"
#include "bohrlab/expsum.hpp"
#include "bohrlab/generators.hpp"
#include "bohrlab/harness.hpp"
#include "bohrlab/means.hpp"
#include "bohrlab/measures.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace bohrlab;

namespace {

int g_failures = 0;

void run_criterion(int number, const std::string& title,
                   const std::function<bool(std::string&)>& body)
{
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", pass ? "PASS" : "FAIL", number,
                title.c_str(), dt, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::vector<std::int64_t> random_members(window w, std::size_t count, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::int64_t> u(w.lo, w.hi);
    std::set<std::int64_t> s;
    while (s.size() < count) s.insert(u(rng));
    return {s.begin(), s.end()};
}

} // namespace

int main()
{
    // 1. exact-set oracles on 200 random instances
    run_criterion(1, "sumset/difference/dilate match naive enumeration (200 instances)",
                  [](std::string& detail) {
        std::mt19937_64 rng(20240816);
        std::int64_t mismatches = 0;
        for (int t = 0; t < 200; ++t) {
            std::size_t na = 1 + static_cast<std::size_t>(rng() % 500);
            std::size_t nb = 1 + static_cast<std::size_t>(rng() % 500);
            window w(-5000, 5000);
            auto am = random_members(w, na, rng);
            auto bm = random_members(w, nb, rng);
            auto a = window_set::from_members(w, am);
            auto b = window_set::from_members(w, bm);

            std::set<std::int64_t> sum_oracle, diff_oracle, dil_oracle;
            for (auto x : am)
                for (auto y : bm) sum_oracle.insert(x + y);
            for (auto x : am)
                for (auto y : am) diff_oracle.insert(x - y);
            std::int64_t scalar = static_cast<std::int64_t>(rng() % 7) - 3;
            if (scalar == 0) scalar = 2;
            for (auto x : am) dil_oracle.insert(scalar * x);

            auto s = sumset(a, b);
            auto d = difference_set(a);
            auto di = dilate(a, scalar);
            if (s.cardinality() != static_cast<std::int64_t>(sum_oracle.size())) ++mismatches;
            for (auto v : sum_oracle)
                if (!s.contains(v)) { ++mismatches; break; }
            if (d.cardinality() != static_cast<std::int64_t>(diff_oracle.size())) ++mismatches;
            for (auto v : diff_oracle)
                if (!d.contains(v)) { ++mismatches; break; }
            if (di.cardinality() != static_cast<std::int64_t>(dil_oracle.size())) ++mismatches;
        }
        detail = "mismatches: " + std::to_string(mismatches);
        return mismatches == 0;
    });

    // 2. Bohr exactness and the trig-polynomial bridge
    run_criterion(2, "enumerate_bohr({1/2},0.1) = evens; trigpoly guarantee on 100 random p",
                  [](std::string& detail) {
        bohr_spec half{{frequency::rational(1, 2)}, 0.1};
        auto b = enumerate_bohr(half, window(-1000, 1000));
        for (std::int64_t n = -1000; n <= 1000; ++n)
            if (b.contains(n) != (n % 2 == 0)) { detail = "evens mismatch"; return false; }

        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> ur(0, 1);
        int built = 0;
        while (built < 100) {
            trig_poly p;
            int d = 1 + static_cast<int>(ur(rng) * 3);
            for (int j = 0; j < d; ++j) {
                std::complex<double> c(2 * ur(rng) - 1, 2 * ur(rng) - 1);
                p.terms.emplace_back(c, ur(rng) < 0.5
                                            ? frequency::real_from_double(ur(rng))
                                            : frequency::rational(
                                                  static_cast<std::int64_t>(ur(rng) * 16), 17));
            }
            double re0 = p.eval(0).real();
            p.terms.emplace_back(std::complex<double>(0.25 + std::max(0.0, -re0), 0.0),
                                 frequency::rational(0, 1));
            if (!(p.eval(0).real() > 0)) continue;
            ++built;
            auto spec = bohr_from_trigpoly(p);
            auto bb = enumerate_bohr(spec, window(-10000, 10000));
            bool ok = true;
            bb.for_each([&](std::int64_t n) {
                if (!(p.eval(n).real() > 0)) ok = false;
            });
            if (!ok) {
                detail = "containment failed at poly " + std::to_string(built);
                return false;
            }
        }
        return true;
    });

    // 3. Bogolyubov desk scan + the two-set variant
    run_criterion(3, "Bogolyubov: 20 trials delta=0.1 N=2^14, radius > 0 (and A-A+B-B variant)",
                  [](std::string& detail) {
        auto rep = bogolyubov_scan(16384, 0.1, 20, 42, false);
        auto rep2 = bogolyubov_scan(16384, 0.1, 20, 42, true);
        double worst = 3.0;
        for (const auto& row : rep.rows) worst = std::min(worst, row.at("radius").get<double>());
        for (const auto& row : rep2.rows) worst = std::min(worst, row.at("radius").get<double>());
        detail = "min radius " + std::to_string(worst);
        return rep.all_pass() && rep2.all_pass() && worst > 0;
    });

    // 4. Folner residual medians
    run_criterion(4, "Folner: median |B \\ (A-A)| / N nonincreasing over N in {2^10,2^12,2^14}",
                  [](std::string& detail) {
        auto rep = folner_residual({1024, 4096, 16384}, 0.2, 20, 42);
        std::string meds;
        for (const auto& row : rep.rows)
            meds += std::to_string(row.at("median_residual").get<double>()) + " ";
        detail = "medians: " + meds;
        return rep.all_pass();
    });

    // 5. subgroup coverage: evens fixture k = 1; random-A variants k <= 4 in >= 90%
    run_criterion(5, "thmB: evens + squares gives k = 1; random A has k <= 4 in 90% of 20 trials",
                  [](std::string& detail) {
        thmb_config evens; // defaults are the fixture
        auto fixed = thmb_subgroup_scan(evens, 7);
        if (fixed.rows[0].at("min_k").get<std::int64_t>() != 1) {
            detail = "evens fixture k != 1";
            return false;
        }
        thmb_config rnd;
        rnd.a_kind = "random";
        rnd.a_density = 0.1;
        rnd.trials = 20;
        auto rep = thmb_subgroup_scan(rnd, 42);
        detail = "fraction k<=4: " +
                 std::to_string(rep.params.at("fraction_k_le_4").get<double>());
        return rep.all_pass();
    });

    // 6. Hardy floor coverage
    run_criterion(6, "hardy-cover: c=3/2, 10 trials, full probe coverage [-1e4,1e4]",
                  [](std::string& detail) {
        hardy_cover_config cfg; // defaults are the fixture
        auto rep = hardy_cover_scan(cfg, 42);
        if (!rep.all_pass()) {
            for (const auto& row : rep.rows)
                if (!row.at("covered").get<bool>())
                    detail = "first gap " + std::to_string(row.at("first_gap").get<std::int64_t>());
        }
        return rep.all_pass();
    });

    // 7. Intersectivity engine
    run_criterion(7, "intersectivity: n^2+1 fails (no root mod 4); product passes to 1e4 with "
                     "compatible table; n^2 fails 2nd-kind at 2; n^2-1 passes 2nd-kind to 500",
                  [](std::string& detail) {
        auto bad = intersective_upto({int_poly::parse("n^2+1")}, 100, false);
        if (bad.pass) { detail = "n^2+1 passed"; return false; }
        if (find_root_mod({int_poly::parse("n^2+1")}, 4, false).has_value()) {
            detail = "n^2+1 has a root mod 4";
            return false;
        }
        auto poly = int_poly::parse("(n^2-13)*(n^2-17)*(n^2-221)");
        auto prod = intersective_upto({poly}, 10000, false);
        if (!prod.pass) {
            detail = "product failed at " + std::to_string(prod.first_failure);
            return false;
        }
        const auto& t = prod.table.entries;
        for (auto [m, rm] : t) {
            if (poly.eval_mod(rm, m) != 0) {
                detail = "bad witness at m=" + std::to_string(m);
                return false;
            }
            for (std::int64_t q = 2; m * q <= 10000; ++q) {
                if (((t.at(m * q) - rm) % m + m) % m != 0) {
                    detail = "compatibility broken at (" + std::to_string(m) + "," +
                             std::to_string(q) + ")";
                    return false;
                }
            }
        }
        auto sq = intersective_upto({int_poly::parse("n^2")}, 2, true);
        if (sq.pass || sq.first_failure != 2) {
            detail = "n^2 second-kind verdict wrong";
            return false;
        }
        auto shifted = intersective_upto({int_poly::parse("n^2-1")}, 500, true);
        if (!shifted.pass) { detail = "n^2-1 second-kind failed"; return false; }
        for (std::int64_t m = 2; m <= 500; ++m)
            if (shifted.table.entries.at(m) != 1 - m) { detail = "r_m != 1-m"; return false; }
        return true;
    });

    // 8. exponential sum decay
    run_criterion(8, "decay: |weyl(n^2,sqrt2,1e6)|, |prime(n^2,sqrt2,1e6)|, |hardy(3/2,sqrt2,1e6)| "
                     "< 0.05; prime(n,0,1e6) in [0.95,1.15]",
                  [](std::string& detail) {
        auto w = std::abs(weyl_sum(
            phase_spec::polynomial(int_poly::parse("n^2"), frequency::parse("sqrt2")), 1000000));
        auto p = std::abs(
            prime_weighted_sum(int_poly::parse("n^2"), frequency::parse("sqrt2"), 1000000));
        auto h = std::abs(
            hardy_sum({hardy_exponent::parse("3/2")}, {frequency::parse("sqrt2")}, 1000000));
        auto p0 =
            prime_weighted_sum(int_poly::parse("n"), frequency::rational(0, 1), 1000000).real();
        char buf[160];
        std::snprintf(buf, sizeof buf, "weyl %.4f prime %.4f hardy %.4f prime0 %.4f", w, p, h, p0);
        detail = buf;
        return w < 0.05 && p < 0.05 && h < 0.05 && p0 >= 0.95 && p0 <= 1.15;
    });

    // 9. Herglotz round trip + positive definiteness
    run_criterion(9, "Herglotz: 100 random cyclic sets reconstruct phi within 1e-9; PD form >= -1e-9",
                  [](std::string& detail) {
        std::mt19937_64 rng(99);
        double worst = 0;
        for (int t = 0; t < 100; ++t) {
            std::int64_t n = std::int64_t{1} << (6 + t % 9); // 64 .. 2^14
            auto a = cyclic_set::random_density(n, 0.05 + 0.9 * (t % 10) / 10.0, rng());
            if (a.cardinality() == 0) a.insert(0);
            auto phi = correlation_phi(a);
            auto sigma = herglotz_cyclic(phi);
            for (std::int64_t g = 0; g < n; g += std::max<std::int64_t>(1, n / 128))
                worst = std::max(worst, std::abs(fourier(sigma, g) -
                                                 phi.values[static_cast<std::size_t>(g)]));
            if (worst >= 1e-9) break;
        }
        if (worst >= 1e-9) {
            detail = "roundtrip error " + std::to_string(worst);
            return false;
        }
        auto a = cyclic_set::random_density(512, 0.4, 123);
        auto phi = correlation_phi(a);
        std::uniform_real_distribution<double> ur(-1, 1);
        std::uniform_int_distribution<std::int64_t> ug(0, 511);
        double min_form = 1e9;
        for (int t = 0; t < 1000; ++t) {
            std::vector<std::pair<std::int64_t, std::complex<double>>> c;
            for (int i = 0; i < 6; ++i)
                c.emplace_back(ug(rng), std::complex<double>(ur(rng), ur(rng)));
            std::complex<double> form = 0.0;
            for (auto& [g, cg] : c)
                for (auto& [h, ch] : c) {
                    std::int64_t d = ((g - h) % 512 + 512) % 512;
                    form += cg * std::conj(ch) * phi.values[static_cast<std::size_t>(d)];
                }
            min_form = std::min(min_form, form.real());
        }
        detail = "worst roundtrip " + std::to_string(worst) + ", min form " +
                 std::to_string(min_form);
        return min_form >= -1e-9;
    });

    // 10. uniform-mean convergence to the zero-atom mass
    run_criterion(10, "uniform-mean(sigma_hat) -> sigma({0}): error at 1e5 < error at 1e3 and < 0.05",
                  [](std::string& detail) {
        torus_measure mix;
        mix.atoms = {{frequency::rational(0, 1), 0.5}};
        mix.cantors = {cantor_part{40, 0.5}};
        double e3 = std::abs(mean_of_fourier(weighted_mean::uniform(1, 1000), mix) - 0.5);
        double e5 = std::abs(mean_of_fourier(weighted_mean::uniform(1, 100000), mix) - 0.5);
        char buf[96];
        std::snprintf(buf, sizeof buf, "e(1e3) %.6f e(1e5) %.6f", e3, e5);
        detail = buf;
        return e5 < e3 && e5 < 0.05;
    });

    // 11. spectrum / annihilation / accumulation probes for the squares mean
    run_criterion(11, "squares mean N=1e4: spectrum flags 1/4 in [0.6,0.8], no sqrt2-grid flag; "
                      "annihilation vs Cantor < 0.05; accumulation over 1/4-family positive",
                  [](std::string& detail) {
        std::vector<std::int64_t> sq;
        for (std::int64_t n = 1; n <= 10000; ++n) sq.push_back(n * n);
        auto m = weighted_mean::uniform_on(sq);
        auto rep = spectrum_scan(m, 8, {frequency::parse("sqrt2"), frequency::parse("sqrt3"),
                                        frequency::parse("sqrt5"), frequency::parse("golden")});
        double quarter = 0;
        for (const auto& e : rep.rational)
            if (e.freq == frequency::rational(1, 4)) quarter = std::abs(e.value);
        if (!(quarter >= 0.6 && quarter <= 0.8)) {
            detail = "mhat(1/4) modulus " + std::to_string(quarter);
            return false;
        }
        if (!rep.real.empty()) {
            detail = "a real grid point exceeded the threshold";
            return false;
        }
        auto ann = annihilation_probe(m, {torus_measure::cantor(40)});
        if (!(ann.max_value < 0.05)) {
            detail = "annihilation " + std::to_string(ann.max_value);
            return false;
        }
        std::vector<bohr_spec> family{
            bohr_spec{{frequency::rational(1, 4)}, 0.1},
            bohr_spec{{frequency::rational(1, 4), frequency::rational(1, 2)}, 0.3}};
        auto acc = massive_accumulation_probe(m, family);
        detail = "accumulation min " + std::to_string(acc.min_value) + ", annihilation " +
                 std::to_string(ann.max_value);
        return acc.min_value > 0;
    });

    // 12. skew-product return-set suite
    run_criterion(12, "thmI: certificate None (exact); S+qZ covers q<=20; sup scan < 0.1 at 1e5; "
                      "gap evidence for g <= 50",
                  [](std::string& detail) {
        thmi_config cfg; // the pinned fixture
        auto rep = thmi_suite(cfg, 42);
        for (const auto& v : rep.verdicts)
            if (!v.at("pass").get<bool>()) {
                detail = "failed: " + v.at("name").get<std::string>();
                if (v.contains("detail")) detail += " (" + v.at("detail").get<std::string>() + ")";
                return false;
            }
        detail = "max gap " + std::to_string(rep.params.at("max_gap_S").get<std::int64_t>());
        return true;
    });

    // 13. prime tower
    run_criterion(13, "prime tower: growth rule exact; no 4-chain (exhaustive); abb proxy positive",
                  [](std::string& detail) {
        tower_config cfg;
        auto rep = prime_tower_scan(cfg, 42);
        for (const auto& v : rep.verdicts)
            if (!v.at("pass").get<bool>()) {
                detail = "failed: " + v.at("name").get<std::string>();
                return false;
            }
        return true;
    });

    // 14. convolution-support inclusion + k-Bohr density of the Bohr-Hamming ball
    run_criterion(14, "convolution-support inclusion and BH triple-sum exact; "
                      "BH((s2,s3,s5);1,0.05) meets all 50 rank-1 neighborhoods on [-1e5,1e5]",
                  [](std::string& detail) {
        weighted_mean m({{4, 0.5}, {9, 0.3}, {20, 0.2}});
        auto f = [](std::int64_t n) {
            return std::complex<double>((n == 1 || n == -3) ? 1.0 : 0.0, 0.0);
        };
        for (std::int64_t g = -60; g <= 60; ++g) {
            if (m.convolve(f, g).real() > 0) {
                bool in_diff = false;
                for (auto [s, w] : m.support())
                    if (g == s - 1 || g == s + 3) in_diff = true;
                if (!in_diff) {
                    detail = "inclusion failed at g=" + std::to_string(g);
                    return false;
                }
            }
        }
        bohr_hamming_spec small;
        small.alpha = {frequency::parse("sqrt2"), frequency::parse("sqrt3"),
                       frequency::parse("sqrt5")};
        small.k = 1;
        small.eps = 0.05;
        bohr_hamming_spec big = small;
        big.k = 3;
        big.eps = 0.15;
        auto a = enumerate_bh(small, window(-300, 300));
        auto sum3 = sumset(sumset(a, a), a);
        bool ok = true;
        sum3.for_each([&](std::int64_t n) {
            if (!bh_member(n, big)) ok = false;
        });
        if (!ok) { detail = "triple-sum inclusion failed"; return false; }

        auto x = enumerate_bh(small, window(-100000, 100000));
        auto rep = k_bohr_dense_probe(x, 1, 50, 4242, 10000);
        detail = "fraction " + std::to_string(rep.fraction);
        return rep.fraction == 1.0;
    });

    std::printf("%s: %d/14 criteria passed\n",
                g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", 14 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
