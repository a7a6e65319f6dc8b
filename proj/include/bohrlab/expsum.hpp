#ifndef BOHRLAB_EXPSUM_HPP
#define BOHRLAB_EXPSUM_HPP

#include "bohrlab/arith.hpp"
#include "bohrlab/frequency.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace bohrlab {

// Phase n -> frac(P(n) * alpha) or frac(floor(n^c) * alpha).  Polynomial
// values are computed in exact 128-bit arithmetic and multiplied into the
// frequency's fixed-point representation, so the phase survives degree >= 3
// and n up to 10^7 where naive doubles are hopeless.
struct phase_spec {
    enum class kind { polynomial, hardy };
    kind which = kind::polynomial;
    int_poly poly;
    hardy_exponent c;
    frequency alpha;

    static phase_spec polynomial(int_poly p, frequency a);
    static phase_spec hardy(hardy_exponent c, frequency a);

    double frac_at(std::int64_t n) const;
};

// (1/N) sum_{n=1..N} e(phase(n))
std::complex<double> weyl_sum(const phase_spec& phase, std::int64_t n_max);

// (1/N) sum e(P(n) alpha) w(n), weights indexed from n = 1
std::complex<double> weighted_sum(const int_poly& p, const frequency& alpha,
                                  const std::vector<double>& weights);

// (log N / N) sum_{p <= N prime} e(P(p) alpha) w(p); default weights 1
std::complex<double> prime_weighted_sum(const int_poly& p, const frequency& alpha,
                                        std::int64_t n_max,
                                        const std::function<double(std::int64_t)>& weight = {});

// (1/N) sum e( sum_i floor(n^{c_i}) alpha_i )
std::complex<double> hardy_sum(const std::vector<hardy_exponent>& cs,
                               const std::vector<frequency>& alphas, std::int64_t n_max);

// max over a frequency grid of size >= grid_size (zero-padded FFT) of
// |(1/N) sum f_n e(n t)|.  A lower bound for the true sup, within
// O(1/grid) of a grid point.
struct sup_scan_result {
    double value = 0.0;
    double at_frequency = 0.0;
    std::size_t grid = 0;
};
sup_scan_result sup_frequency_scan(const std::vector<double>& samples, std::size_t grid_size);

} // namespace bohrlab

#endif
