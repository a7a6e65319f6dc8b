#ifndef BOHRLAB_FRAC192_HPP
#define BOHRLAB_FRAC192_HPP

#include <array>
#include <cstdint>
#include <string>

namespace bohrlab {

// A point of the torus R/Z held as a 192-bit fixed-point fraction:
// value = (limb[2]*2^128 + limb[1]*2^64 + limb[0]) / 2^192  in [0,1).
//
// Addition and multiplication by integers are exact modulo 1, so phases
// like frac(n^2 * sqrt2) keep ~2^-64 absolute accuracy even after
// multiplying by 128-bit integers.  Plain doubles lose everything there:
// ulp(10^12 * sqrt2) ~ 2e-4.
struct frac192 {
    std::array<std::uint64_t, 3> limb{0, 0, 0}; // little-endian

    static frac192 zero() { return {}; }

    // Exact p/q for 0 <= p < q (floor of the scaled quotient; error < 2^-192).
    static frac192 from_rational(std::int64_t p, std::int64_t q);

    // Exact value of a double in [0,1) (doubles are dyadic).
    static frac192 from_double(double x);

    // frac(sqrt(k)) for a small positive integer k, correct to the last bit.
    static frac192 sqrt_of(std::uint64_t k);

    // frac((sqrt5 - 1)/2), the golden rotation.
    static frac192 golden();

    bool is_zero() const { return limb[0] == 0 && limb[1] == 0 && limb[2] == 0; }

    frac192 add(const frac192& o) const;     // mod 1
    frac192 sub(const frac192& o) const;     // mod 1
    frac192 negate() const;                  // (1 - x) mod 1
    frac192 mul_u64(std::uint64_t m) const;  // frac(m * x)
    frac192 mul_i128(__int128 m) const;      // frac(m * x), any sign, |m| < 2^127

    // Splits m*x into integer and fractional parts, for m small enough that
    // the integer part fits a u64 (m <= 2^63 and x < 1 suffice).
    std::pair<std::uint64_t, frac192> mul_u64_full(std::uint64_t m) const;

    // floor((int_part + f) / d) at 2^-192 resolution; requires the quotient
    // to be < 1, i.e. int_part + f < d.
    static frac192 div_u64(std::uint64_t int_part, const frac192& f, std::uint64_t d);

    double to_double() const;                // value in [0,1)
    double torus_norm() const;               // distance to nearest integer

    bool operator==(const frac192&) const = default;
    bool operator<(const frac192& o) const;

    std::string hex() const;                 // debugging aid
};

} // namespace bohrlab

#endif
