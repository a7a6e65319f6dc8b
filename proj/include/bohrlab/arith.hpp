#ifndef BOHRLAB_ARITH_HPP
#define BOHRLAB_ARITH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bohrlab {

// Exact integer-coefficient polynomial, coefficients in ascending degree.
class int_poly {
public:
    int_poly() = default;
    explicit int_poly(std::vector<std::int64_t> coeffs);

    static int_poly constant(std::int64_t c) { return int_poly({c}); }
    static int_poly monomial(std::int64_t c, int degree);

    // Grammar: expr := term (('+'|'-') term)*, term := factor ('*' factor)*,
    // factor := '(' expr ')' | 'n' | integer, optionally followed by '^' int.
    static int_poly parse(const std::string& text);

    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
    int degree() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    std::int64_t coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }

    __int128 eval(__int128 n) const;             // overflow-checked
    std::int64_t eval_mod(std::int64_t n, std::int64_t m) const; // in [0, m)
    int_poly derivative() const;

    int_poly operator+(const int_poly& o) const;
    int_poly operator-(const int_poly& o) const;
    int_poly operator*(const int_poly& o) const;
    bool operator==(const int_poly&) const = default;

    std::string to_string() const;

private:
    std::vector<std::int64_t> coeffs_;
    void normalize();
};

// --- intersectivity -----------------------------------------------------------

// m -> r_m with r_m in (-m, 0] and m | Q_i(r_m) for every polynomial in the
// family; second_kind additionally has gcd(r_m, m) = 1.  Built so that
// r_{mq} = r_m (mod m) for every stored pair: per prime the witnesses come
// from one coherent chain of roots mod p, p^2, ...
struct witness_table {
    std::map<std::int64_t, std::int64_t> entries;
    bool second_kind = false;

    void write_csv(std::ostream& os) const; // columns m, r_m, gcd(m, |r_m|)
};

struct intersectivity_verdict {
    bool pass = false;
    std::int64_t verified_up_to = 0;  // PASS means "verified up to M", never a proof
    std::int64_t first_failure = 0;   // the m0 lacking a root, when !pass
    witness_table table;
};

// Canonical per-m witness: factor m into prime powers, take the smallest
// nonnegative simultaneous root mod each p^k (Hensel lifting at simple
// roots, bounded exhaustive scan otherwise), CRT-combine, map into (-m, 0].
// nullopt iff no simultaneous root exists.
std::optional<std::int64_t> find_root_mod(const std::vector<int_poly>& polys, std::int64_t m,
                                          bool second_kind);

intersectivity_verdict intersective_upto(const std::vector<int_poly>& polys, std::int64_t M,
                                         bool second_kind);

// (1/m) Q(m n + r) with exact integer coefficients; requires m | Q(r).
int_poly shift_scale(const int_poly& q, std::int64_t m, std::int64_t r);

// Exact rank of the coefficient matrix over Q (fraction-free elimination).
int rational_rank(const std::vector<int_poly>& polys);
bool in_span(const int_poly& p, const std::vector<int_poly>& polys);

// --- primes and Hardy floors ----------------------------------------------------

std::vector<std::int64_t> primes_upto(std::int64_t n);
std::vector<std::int64_t> primes_in_ap(std::int64_t q, std::int64_t a, std::int64_t n);

// Exponent for floor sequences.  Rational p/q inputs take an exact integer
// root path; other inputs use long double with an ambiguity check.
struct hardy_exponent {
    std::int64_t p = 1, q = 1; // exact when `exact`
    double value = 1.0;
    bool exact = false;

    static hardy_exponent parse(const std::string& text); // "3/2" or "1.5"
    static hardy_exponent from_rational(std::int64_t p, std::int64_t q);
};

// floor(n^c), exact for rational exponents whenever n^p fits in 128 bits;
// otherwise long double with a flagged recomputation when the value sits
// within 1e-9 of an integer.
std::int64_t hardy_floor(std::int64_t n, const hardy_exponent& c);
std::vector<std::int64_t> hardy_floor_seq(const hardy_exponent& c, std::int64_t n);

std::int64_t scan_budget(); // BOHRLAB_BUDGET env var, default 2'000'000

} // namespace bohrlab

#endif
