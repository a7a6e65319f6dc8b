#ifndef BOHRLAB_MEANS_HPP
#define BOHRLAB_MEANS_HPP

#include "bohrlab/arith.hpp"
#include "bohrlab/bohr.hpp"
#include "bohrlab/frequency.hpp"
#include "bohrlab/measures.hpp"
#include "bohrlab/window_set.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace bohrlab {

// A finitely supported mean on Z: nonnegative weights summing to 1.
// Duplicate support points merge by weight addition at construction.
class weighted_mean {
public:
    weighted_mean() = default;
    // merges duplicates, checks nonnegativity, normalizes
    explicit weighted_mean(std::vector<std::pair<std::int64_t, double>> support);

    static weighted_mean uniform(std::int64_t from, std::int64_t to);
    static weighted_mean uniform_on(const std::vector<std::int64_t>& points);
    static weighted_mean point(std::int64_t at);

    const std::vector<std::pair<std::int64_t, double>>& support() const { return support_; }

    std::complex<double> evaluate(const std::function<std::complex<double>(std::int64_t)>& f) const;
    double evaluate_indicator(const std::function<bool(std::int64_t)>& f) const;

    // (m * f)(g) = m(tau_g f) = sum w_i f(s_i - g)
    std::complex<double> convolve(const std::function<std::complex<double>(std::int64_t)>& f,
                                  std::int64_t g) const;

    // m_hat(alpha) = m(conj chi_alpha) = sum w_i e(-s_i alpha)
    std::complex<double> mhat(const frequency& alpha) const;

    void write_csv(std::ostream& os) const; // columns point, weight
    static weighted_mean read_csv(std::istream& is);

private:
    std::vector<std::pair<std::int64_t, double>> support_;
};

// --- constructions ------------------------------------------------------------

enum class mean_index_kind { integers, primes, hardy };

struct polynomial_mean_params {
    int_poly p;                          // support points P(n)
    std::vector<int_poly> qs;            // correlation arguments
    mean_index_kind index = mean_index_kind::integers;
    hardy_exponent hardy_c;              // used when index == hardy (support floor(n^c))
};

// m_N: support P(n) (or P(prime), or floor(n^c)), weights proportional to
// the correlation density of B at Q(n).  Throws when the total weight
// vanishes.
weighted_mean build_polynomial_mean(const polynomial_mean_params& params, const grid_set& b,
                                    std::int64_t n_max);

// --- diagnostics ----------------------------------------------------------------

struct spectrum_entry {
    frequency freq;
    std::complex<double> value;
};

struct spectrum_report {
    std::vector<spectrum_entry> rational; // |mhat| above threshold, sorted by |value| desc
    std::vector<spectrum_entry> real;
    double threshold = 0.05;
};

// Scans mhat over reduced rationals p/q (q <= q_max) and the provided real
// grid, reporting entries above the threshold.  Rationals are reported
// separately: a rational spectrum is what forces the finite-index-subgroup
// conclusions.
spectrum_report spectrum_scan(const weighted_mean& m, std::int64_t q_max,
                              const std::vector<frequency>& real_grid, double threshold = 0.05);

// min over the specs of m(1_Bohr); per-spec values included
struct accumulation_report {
    std::vector<double> per_spec;
    double min_value = 0.0;
};
accumulation_report massive_accumulation_probe(const weighted_mean& m,
                                               const std::vector<bohr_spec>& specs);

// max over the catalog of m(|sigma_hat|^2); measures must be continuous
struct annihilation_report {
    std::vector<double> per_measure;
    double max_value = 0.0;
};
annihilation_report annihilation_probe(const weighted_mean& m,
                                       const std::vector<torus_measure>& sigmas);

// Constructive core of the convolution lemma: produces a Bohr spec with
// frequencies in spec(m) whose enumeration is contained in
// { g : (m * 1_U)(g) > 0 } on every window.  `spectrum_threshold` is the
// cutoff below which mhat values count as zero (subject to an internal
// safety budget that keeps the containment guarantee valid).
bohr_spec bohr_in_convolution(const weighted_mean& m, const bohr_spec& u,
                              double spectrum_threshold);

// (m * 1_U)(g) for a Bohr set U, exposed for containment checks
double convolve_bohr_indicator(const weighted_mean& m, const bohr_spec& u, std::int64_t g);

} // namespace bohrlab

#endif
