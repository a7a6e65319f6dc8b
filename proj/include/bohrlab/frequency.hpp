#ifndef BOHRLAB_FREQUENCY_HPP
#define BOHRLAB_FREQUENCY_HPP

#include "bohrlab/frac192.hpp"

#include <complex>
#include <cstdint>
#include <string>

namespace bohrlab {

// A character of Z, i.e. a frequency alpha with chi(n) = e(n*alpha).
//
// Two modes:
//   - exact rational p/q (reduced, 0 <= p < q): membership decisions that
//     depend only on n mod q are decided exactly;
//   - real, held as a 192-bit fixed-point fraction so n*alpha mod 1 stays
//     accurate for |n| up to ~2^127.
class frequency {
public:
    frequency() : rational_(true), p_(0), q_(1) {}

    static frequency rational(std::int64_t p, std::int64_t q);
    static frequency real(frac192 v, std::string label = "");
    static frequency real_from_double(double v);

    // Accepts "p/q", decimal literals, and the named quadratic irrationals
    // sqrt2, sqrt3, sqrt5, golden.
    static frequency parse(const std::string& text);

    bool is_rational() const { return rational_; }
    std::int64_t num() const { return p_; }
    std::int64_t den() const { return q_; }
    const frac192& frac() const { return frac_; }
    const std::string& label() const { return label_; }

    // frac(n * alpha) in [0,1)
    double times_frac(std::int64_t n) const;
    double times_frac_i128(__int128 n) const;
    frac192 times_frac192(__int128 n) const;

    // || n*alpha ||, distance to the nearest integer
    double torus_norm(std::int64_t n) const;

    // |e(n*alpha) - 1| = 2|sin(pi n alpha)|
    double char_dist(std::int64_t n) const;

    // e(s * n * alpha) for s = +-1
    std::complex<double> character(std::int64_t n, int sign = +1) const;

    double value() const; // alpha itself as a double in [0,1)

    std::string display() const;

    bool operator==(const frequency& o) const;

private:
    bool rational_;
    std::int64_t p_ = 0, q_ = 1;
    frac192 frac_;
    std::string label_;
};

// Exact |e(x)-1| for x given as distance-to-integer t in [0, 1/2].
inline double char_dist_from_norm(double t)
{
    return 2.0 * std::sin(3.14159265358979323846 * t);
}

} // namespace bohrlab

#endif
