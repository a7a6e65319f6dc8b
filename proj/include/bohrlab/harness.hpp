#ifndef BOHRLAB_HARNESS_HPP
#define BOHRLAB_HARNESS_HPP

#include "bohrlab/bohr.hpp"
#include "bohrlab/generators.hpp"
#include "bohrlab/io.hpp"
#include "bohrlab/window_set.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>

namespace bohrlab {

// One scenario run: identical (name, params, seed) produce identical bytes.
struct scenario_report {
    std::string scenario;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::uint64_t seed = 0;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();

    void add_verdict(const std::string& name, bool pass, const std::string& detail = "");
    bool all_pass() const;
    std::string to_json() const;
};

// deterministic per-trial RNG streams
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// global worker cap for trial parallelism (default: hardware concurrency)
void set_thread_cap(unsigned n);
unsigned thread_cap();

// runs fn(0..n-1) across workers, results collected in index order
void parallel_trials(std::size_t n, const std::function<void(std::size_t)>& fn);

// --- random / structured A generators -----------------------------------------

window_set random_window_set(window w, double density, std::uint64_t seed);
// { n in w : floor(n * (theta_int + frac)) is even }; the frequency carries
// the fractional part, e.g. sqrt2 with theta_int = 1
window_set floor_theta_even_set(window w, const frequency& theta, std::int64_t theta_int = 1);

// --- scenarios ------------------------------------------------------------------

// Bogolyubov: random A of density delta in Z_N; Lambda from the rho-grid
// large spectrum; reports max_radius_inside(Lambda, 2A-2A) per trial.
// The variant uses independent A, B and A - A + B - B.
scenario_report bogolyubov_scan(std::int64_t n_modulus, double delta, std::int64_t trials,
                                std::uint64_t seed, bool two_set_variant = false);

// Folner: density of Bohr(Lambda, eta) \ (A - A) in Z_N across moduli.
scenario_report folner_residual(const std::vector<std::int64_t>& moduli, double delta,
                                std::int64_t trials, std::uint64_t seed, double eta = 1.0);

struct thmb_config {
    std::string a_kind = "evens";     // evens | random | floor_theta_even
    double a_density = 0.1;
    std::int64_t a_hi = 20000;
    std::string s_kind = "squares";   // squares | intersective | prime | correlated
    std::string poly = "n^2";         // P for intersective/prime/correlated
    std::vector<std::string> q_polys; // correlation arguments (correlated)
    std::int64_t s_max_n = 140;       // n (or p) ranges over [1, s_max_n]
    std::int64_t probe_lo = -5000, probe_hi = 5000;
    std::int64_t k_max = 20;
    std::int64_t trials = 1;          // > 1 only meaningful for random A
    double b_density = 0.5;           // correlated variant: random B in its box
    std::int64_t b_hi = 999;
};

// minimal k with kZ ∩ probe ⊆ A - A + S
scenario_report thmb_subgroup_scan(const thmb_config& cfg, std::uint64_t seed);

struct hardy_cover_config {
    std::string c = "3/2";
    double a_density = 0.1;
    std::int64_t a_hi = 50000;
    std::int64_t m = 10000; // S = { floor(n^c) : n <= m }
    std::int64_t probe_lo = -10000, probe_hi = 10000;
    std::int64_t trials = 10;
};

scenario_report hardy_cover_scan(const hardy_cover_config& cfg, std::uint64_t seed);

// min over sampled Bohr sets of the upper-density proxy of S ∩ B
scenario_report abb_probe(const window_set& s, const std::vector<bohr_spec>& samples,
                          std::int64_t scale);

struct homomorphism_config {
    std::string c_kind = "multiples";   // multiples | rotation_return | ip_prefix
    std::int64_t c_modulus = 3;         // multiples: C = c_modulus * Z ∩ window
    std::string alpha = "sqrt2";        // rotation_return
    double u_hi = 0.3;                  // rotation_return: U = [0, u_hi)
    std::vector<std::int64_t> generators{1, 10, 100, 1000}; // ip_prefix
    std::int64_t c_hi = 20000;
    std::int64_t s1 = 1, s2 = 2;
    std::int64_t probe_lo = -2000, probe_hi = 2000;
    std::int64_t k_max = 24;
};

scenario_report homomorphism_sumset_scan(const homomorphism_config& cfg);

struct thmi_config {
    std::string alpha = "sqrt2";    // the rotation; value enters as frac(alpha)
    std::string x1 = "0.2547756364723";
    std::string y1 = "0.0314159265"; // ||y1|| < 1/8 required
    // fat Cantor target V: ambient [a/den, b/den], removals scale/scale_den * L / 4^k
    std::int64_t v_a = 9, v_b = 11, v_den = 20;
    std::int64_t v_scale = 1, v_scale_den = 2;
    int v_depth = 12;
    std::int64_t n = 1000000;
    std::int64_t q_max = 20;
    std::int64_t g_max = 50;
    std::int64_t sup_scan_n = 100000;
    double eps = 1.0 / 16.0;        // two-recurrence tolerance
    std::int64_t bohr_samples = 5;  // (S + Bohr) coverage probes
};

scenario_report thmi_suite(const thmi_config& cfg, std::uint64_t seed);

// prime-tower checks: growth rule, chain-freeness, abb positivity
struct tower_config {
    std::vector<std::int64_t> primes{3, 5, 7, 11, 13};
    std::vector<std::int64_t> lengths{100, 100, 100, 100, 100};
    std::int64_t first_start = 200;
    std::int64_t chain_len = 4;
    std::int64_t scale = 300; // abb proxy scale
};

scenario_report prime_tower_scan(const tower_config& cfg, std::uint64_t seed);

} // namespace bohrlab

#endif
