#include "bohrlab/expsum.hpp"

#include "bohrlab/errors.hpp"
#include "bohrlab/fft.hpp"

#include <cmath>

namespace bohrlab {

namespace {
constexpr double kTau = 2.0 * 3.14159265358979323846;

std::complex<double> e_of(double frac)
{
    return {std::cos(kTau * frac), std::sin(kTau * frac)};
}
} // namespace

phase_spec phase_spec::polynomial(int_poly p, frequency a)
{
    if (p.is_zero()) throw precondition_error("phase_spec: zero polynomial");
    phase_spec s;
    s.which = kind::polynomial;
    s.poly = std::move(p);
    s.alpha = std::move(a);
    return s;
}

phase_spec phase_spec::hardy(hardy_exponent c, frequency a)
{
    phase_spec s;
    s.which = kind::hardy;
    s.c = c;
    s.alpha = std::move(a);
    return s;
}

double phase_spec::frac_at(std::int64_t n) const
{
    __int128 v = which == kind::polynomial ? poly.eval(n)
                                           : static_cast<__int128>(hardy_floor(n, c));
    return alpha.times_frac_i128(v);
}

std::complex<double> weyl_sum(const phase_spec& phase, std::int64_t n_max)
{
    if (n_max < 1) throw precondition_error("weyl_sum: N must be >= 1");
    std::complex<double> acc = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n) acc += e_of(phase.frac_at(n));
    return acc / static_cast<double>(n_max);
}

std::complex<double> weighted_sum(const int_poly& p, const frequency& alpha,
                                  const std::vector<double>& weights)
{
    for (double w : weights)
        if (w < 0) throw precondition_error("weighted_sum: negative weight");
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] == 0.0) continue;
        std::int64_t n = static_cast<std::int64_t>(i) + 1;
        acc += weights[i] * e_of(alpha.times_frac_i128(p.eval(n)));
    }
    return acc / static_cast<double>(weights.size());
}

std::complex<double> prime_weighted_sum(const int_poly& p, const frequency& alpha,
                                        std::int64_t n_max,
                                        const std::function<double(std::int64_t)>& weight)
{
    if (n_max < 2) throw precondition_error("prime_weighted_sum: N must be >= 2");
    std::complex<double> acc = 0.0;
    for (auto q : primes_upto(n_max)) {
        double w = weight ? weight(q) : 1.0;
        if (w == 0.0) continue;
        acc += w * e_of(alpha.times_frac_i128(p.eval(q)));
    }
    return acc * (std::log(static_cast<double>(n_max)) / static_cast<double>(n_max));
}

std::complex<double> hardy_sum(const std::vector<hardy_exponent>& cs,
                               const std::vector<frequency>& alphas, std::int64_t n_max)
{
    if (cs.size() != alphas.size())
        throw precondition_error("hardy_sum: exponent/frequency length mismatch");
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j)
            if (cs[i].value == cs[j].value)
                throw precondition_error("hardy_sum: exponents must be distinct");
    std::complex<double> acc = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        double frac = 0.0;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            frac += alphas[i].times_frac_i128(hardy_floor(n, cs[i]));
            if (frac >= 1.0) frac -= 1.0;
        }
        acc += e_of(frac);
    }
    return acc / static_cast<double>(n_max);
}

sup_scan_result sup_frequency_scan(const std::vector<double>& samples, std::size_t grid_size)
{
    const std::size_t n = samples.size();
    if (n == 0) throw precondition_error("sup_frequency_scan: no samples");
    if (grid_size < n) throw precondition_error("sup_frequency_scan: grid must be >= N");
    std::size_t m = next_pow2(std::max(grid_size, 4 * n));
    std::vector<std::complex<double>> a(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) a[i] = samples[i];
    fft(a, false);
    sup_scan_result r;
    r.grid = m;
    for (std::size_t j = 0; j < m; ++j) {
        double v = std::abs(a[j]) / static_cast<double>(n);
        if (v > r.value) {
            r.value = v;
            r.at_frequency = static_cast<double>(j) / static_cast<double>(m);
        }
    }
    return r;
}

} // namespace bohrlab
