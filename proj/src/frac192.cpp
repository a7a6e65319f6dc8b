#include "bohrlab/frac192.hpp"

#include "bohrlab/errors.hpp"

#include <cmath>
#include <cstdio>

namespace bohrlab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

frac192 frac192::from_rational(std::int64_t p, std::int64_t q)
{
    if (q <= 0) throw arithmetic_error("frac192::from_rational: q must be positive");
    p %= q;
    if (p < 0) p += q;
    // long division of p * 2^192 by q, one 64-bit digit at a time
    frac192 r;
    u128 rem = static_cast<u64>(p);
    for (int i = 2; i >= 0; --i) {
        u128 cur = rem << 64;
        r.limb[i] = static_cast<u64>(cur / static_cast<u64>(q));
        rem = cur % static_cast<u64>(q);
    }
    return r;
}

frac192 frac192::from_double(double x)
{
    x -= std::floor(x);
    if (x >= 1.0) x = 0.0;
    // doubles have 53 mantissa bits; two ldexp extractions capture all of them
    frac192 r;
    double t = std::ldexp(x, 64);
    u64 top = static_cast<u64>(t);
    r.limb[2] = top;
    t = std::ldexp(t - static_cast<double>(top), 64);
    r.limb[1] = static_cast<u64>(t);
    return r;
}

frac192 frac192::add(const frac192& o) const
{
    frac192 r;
    u128 c = 0;
    for (int i = 0; i < 3; ++i) {
        u128 s = static_cast<u128>(limb[i]) + o.limb[i] + c;
        r.limb[i] = static_cast<u64>(s);
        c = s >> 64;
    }
    // carry out of the top limb is the integer part: discarded mod 1
    return r;
}

frac192 frac192::sub(const frac192& o) const
{
    frac192 r;
    u128 borrow = 0;
    for (int i = 0; i < 3; ++i) {
        u128 d = static_cast<u128>(limb[i]) - o.limb[i] - borrow;
        r.limb[i] = static_cast<u64>(d);
        borrow = (d >> 64) ? 1 : 0;
    }
    return r;
}

frac192 frac192::negate() const
{
    if (is_zero()) return *this;
    return frac192::zero().sub(*this);
}

frac192 frac192::mul_u64(std::uint64_t m) const
{
    frac192 r;
    u128 carry = 0;
    for (int i = 0; i < 3; ++i) {
        u128 p = static_cast<u128>(limb[i]) * m + carry;
        r.limb[i] = static_cast<u64>(p);
        carry = p >> 64;
    }
    // carry = integer part, dropped
    return r;
}

std::pair<std::uint64_t, frac192> frac192::mul_u64_full(std::uint64_t m) const
{
    frac192 r;
    u128 carry = 0;
    for (int i = 0; i < 3; ++i) {
        u128 p = static_cast<u128>(limb[i]) * m + carry;
        r.limb[i] = static_cast<u64>(p);
        carry = p >> 64;
    }
    return {static_cast<u64>(carry), r};
}

frac192 frac192::mul_i128(__int128 m) const
{
    bool neg = m < 0;
    u128 a = neg ? static_cast<u128>(-m) : static_cast<u128>(m);
    u64 lo = static_cast<u64>(a);
    u64 hi = static_cast<u64>(a >> 64);
    // m*x mod 1 = lo*x + hi*(2^64 x) mod 1, and 2^64*x mod 1 is a limb shift
    frac192 r = mul_u64(lo);
    if (hi) {
        frac192 shifted; // frac(2^64 * x)
        shifted.limb[0] = 0;
        shifted.limb[1] = limb[0];
        shifted.limb[2] = limb[1];
        r = r.add(shifted.mul_u64(hi));
    }
    return neg ? r.negate() : r;
}

frac192 frac192::div_u64(std::uint64_t int_part, const frac192& f, std::uint64_t d)
{
    if (d == 0) throw arithmetic_error("frac192::div_u64: divide by zero");
    if (int_part >= d) throw arithmetic_error("frac192::div_u64: quotient would be >= 1");
    frac192 q;
    u128 rem = int_part;
    for (int i = 2; i >= 0; --i) {
        u128 cur = (rem << 64) | f.limb[i];
        q.limb[i] = static_cast<u64>(cur / d);
        rem = cur % d;
    }
    return q;
}

double frac192::to_double() const
{
    return std::ldexp(static_cast<double>(limb[2]), -64) +
           std::ldexp(static_cast<double>(limb[1]), -128);
}

double frac192::torus_norm() const
{
    double v = to_double();
    return v <= 0.5 ? v : 1.0 - v;
}

bool frac192::operator<(const frac192& o) const
{
    for (int i = 2; i >= 0; --i) {
        if (limb[i] != o.limb[i]) return limb[i] < o.limb[i];
    }
    return false;
}

std::string frac192::hex() const
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%016llx%016llx%016llx",
                  static_cast<unsigned long long>(limb[2]),
                  static_cast<unsigned long long>(limb[1]),
                  static_cast<unsigned long long>(limb[0]));
    return buf;
}

namespace {

// Minimal fixed-width unsigned integer for the one-off square roots below.
struct u448 {
    std::array<u64, 7> w{};

    static u448 from_u64(u64 v) { u448 r; r.w[0] = v; return r; }

    int cmp(const u448& o) const
    {
        for (int i = 6; i >= 0; --i) {
            if (w[i] != o.w[i]) return w[i] < o.w[i] ? -1 : 1;
        }
        return 0;
    }
    u448 sub(const u448& o) const
    {
        u448 r;
        u128 borrow = 0;
        for (int i = 0; i < 7; ++i) {
            u128 d = static_cast<u128>(w[i]) - o.w[i] - borrow;
            r.w[i] = static_cast<u64>(d);
            borrow = (d >> 64) ? 1 : 0;
        }
        return r;
    }
    u448 shl(unsigned s) const
    {
        u448 r;
        unsigned word = s / 64, bit = s % 64;
        for (int i = 6; i >= 0; --i) {
            u64 v = 0;
            int src = i - static_cast<int>(word);
            if (src >= 0) v = w[src] << bit;
            if (bit && src - 1 >= 0) v |= w[src - 1] >> (64 - bit);
            r.w[i] = v;
        }
        return r;
    }
    void set_bit(unsigned b) { w[b / 64] |= (u64{1} << (b % 64)); }
    bool get_bit(unsigned b) const { return (w[b / 64] >> (b % 64)) & 1; }
};

// floor(sqrt(n)) by the classical bit-pair method.
u448 isqrt448(const u448& n)
{
    u448 x;       // running root
    u448 rem;     // running remainder
    for (int b = 222; b >= 0; --b) { // sqrt of a 448-bit number has <= 224 bits
        rem = rem.shl(2);
        // bring down the next two bits of n
        if (n.get_bit(2 * b + 1)) rem.set_bit(1);
        if (n.get_bit(2 * b)) rem.set_bit(0);
        // candidate digit: trial = (x << 2) + 1
        u448 trial = x.shl(2);
        trial.w[0] |= 1;
        x = x.shl(1);
        if (rem.cmp(trial) >= 0) {
            rem = rem.sub(trial);
            x.w[0] |= 1;
        }
    }
    return x;
}

frac192 frac_from_scaled_root(const u448& root, u64 int_part)
{
    // root = floor(sqrt(k) * 2^192); subtract the integer part
    u448 scaled_int;
    scaled_int.w[3] = int_part; // int_part * 2^192
    u448 f = root.sub(scaled_int);
    frac192 r;
    r.limb[0] = f.w[0];
    r.limb[1] = f.w[1];
    r.limb[2] = f.w[2];
    return r;
}

} // namespace

frac192 frac192::sqrt_of(std::uint64_t k)
{
    if (k == 0) return frac192::zero();
    // sqrt(k) * 2^192 = sqrt(k * 2^384)
    u448 n;
    n.w[6] = k; // k * 2^384
    u448 root = isqrt448(n);
    u64 ip = static_cast<u64>(std::floor(std::sqrt(static_cast<double>(k))));
    while (static_cast<u64>(ip + 1) * (ip + 1) <= k) ++ip;
    while (ip * ip > k) --ip;
    return frac_from_scaled_root(root, ip);
}

frac192 frac192::golden()
{
    // (sqrt5 - 1)/2: floor(sqrt5 * 2^192) minus 2^192 is (sqrt5 - 1) scaled
    // (193 bits), and halving lands in (1/2, 1).
    u448 n;
    n.w[6] = 5;
    u448 root = isqrt448(n);
    u448 one;
    one.w[3] = 1;
    u448 f = root.sub(one);
    // divide by 2
    u64 carry = 0;
    u448 h;
    for (int i = 3; i >= 0; --i) {
        h.w[i] = (f.w[i] >> 1) | (carry << 63);
        carry = f.w[i] & 1;
    }
    frac192 r;
    r.limb[0] = h.w[0];
    r.limb[1] = h.w[1];
    r.limb[2] = h.w[2];
    return r;
}

} // namespace bohrlab
