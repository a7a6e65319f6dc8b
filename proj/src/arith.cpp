#include "bohrlab/arith.hpp"

#include "bohrlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <ostream>

namespace bohrlab {

namespace {

std::int64_t checked_i64(__int128 v, const char* where)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw arithmetic_error(std::string(where) + ": 64-bit overflow");
    return static_cast<std::int64_t>(v);
}

__int128 checked_mul(__int128 a, __int128 b, const char* where)
{
    __int128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw arithmetic_error(std::string(where) + ": 128-bit overflow");
    return r;
}

__int128 checked_add(__int128 a, __int128 b, const char* where)
{
    __int128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw arithmetic_error(std::string(where) + ": 128-bit overflow");
    return r;
}

} // namespace

int_poly::int_poly(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs))
{
    normalize();
}

void int_poly::normalize()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

int_poly int_poly::monomial(std::int64_t c, int degree)
{
    std::vector<std::int64_t> v(static_cast<std::size_t>(degree) + 1, 0);
    v.back() = c;
    return int_poly(std::move(v));
}

__int128 int_poly::eval(__int128 n) const
{
    __int128 acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        acc = checked_mul(acc, n, "int_poly::eval");
        acc = checked_add(acc, coeffs_[i], "int_poly::eval");
    }
    return acc;
}

std::int64_t int_poly::eval_mod(std::int64_t n, std::int64_t m) const
{
    if (m <= 0) throw arithmetic_error("eval_mod: modulus must be positive");
    __int128 nr = n % m;
    if (nr < 0) nr += m;
    __int128 acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        acc = (acc * nr) % m;
        __int128 c = coeffs_[i] % m;
        if (c < 0) c += m;
        acc = (acc + c) % m;
    }
    return static_cast<std::int64_t>(acc);
}

int_poly int_poly::derivative() const
{
    if (coeffs_.size() <= 1) return int_poly();
    std::vector<std::int64_t> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = checked_i64(checked_mul(coeffs_[i], static_cast<__int128>(i), "derivative"),
                               "derivative");
    return int_poly(std::move(d));
}

int_poly int_poly::operator+(const int_poly& o) const
{
    std::vector<std::int64_t> r(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = checked_i64(static_cast<__int128>(coeff(i)) + o.coeff(i), "poly add");
    return int_poly(std::move(r));
}

int_poly int_poly::operator-(const int_poly& o) const
{
    std::vector<std::int64_t> r(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = checked_i64(static_cast<__int128>(coeff(i)) - o.coeff(i), "poly sub");
    return int_poly(std::move(r));
}

int_poly int_poly::operator*(const int_poly& o) const
{
    if (is_zero() || o.is_zero()) return int_poly();
    std::vector<__int128> acc(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            acc[i + j] = checked_add(acc[i + j],
                                     checked_mul(coeffs_[i], o.coeffs_[j], "poly mul"),
                                     "poly mul");
    std::vector<std::int64_t> r(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) r[i] = checked_i64(acc[i], "poly mul");
    return int_poly(std::move(r));
}

// --- parser --------------------------------------------------------------------

namespace {

struct poly_parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit poly_parser(const std::string& text) : s(text) {}

    void skip_ws()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c)
    {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c)
    {
        if (peek(c)) { ++pos; return true; }
        return false;
    }

    int_poly parse_expr()
    {
        int_poly acc = eat('-') ? int_poly() - parse_term() : parse_term();
        for (;;) {
            if (eat('+')) acc = acc + parse_term();
            else if (eat('-')) acc = acc - parse_term();
            else break;
        }
        return acc;
    }
    int_poly parse_term()
    {
        int_poly acc = parse_power();
        for (;;) {
            skip_ws();
            if (eat('*')) acc = acc * parse_power();
            else if (peek('(') || (pos < s.size() && (s[pos] == 'n' || s[pos] == 'x')))
                acc = acc * parse_power(); // implicit multiplication: 2n, 3(n+1)
            else break;
        }
        return acc;
    }
    int_poly parse_power()
    {
        int_poly base = parse_factor();
        if (eat('^')) {
            std::int64_t e = parse_int();
            if (e < 0) throw config_error("polynomial parse: negative exponent");
            int_poly acc = int_poly::constant(1);
            for (std::int64_t i = 0; i < e; ++i) acc = acc * base;
            return acc;
        }
        return base;
    }
    int_poly parse_factor()
    {
        skip_ws();
        if (eat('(')) {
            int_poly e = parse_expr();
            if (!eat(')')) throw config_error("polynomial parse: missing ')'");
            return e;
        }
        if (pos < s.size() && (s[pos] == 'n' || s[pos] == 'x')) {
            ++pos;
            return int_poly({0, 1});
        }
        return int_poly::constant(parse_int());
    }
    std::int64_t parse_int()
    {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw config_error("polynomial parse: expected integer at '" +
                                             s.substr(start, 8) + "'");
        return std::stoll(s.substr(start, pos - start));
    }
};

} // namespace

int_poly int_poly::parse(const std::string& text)
{
    poly_parser p(text);
    int_poly r = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw config_error("polynomial parse: trailing input at '" + text.substr(p.pos) + "'");
    return r;
}

std::string int_poly::to_string() const
{
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        std::int64_t c = coeffs_[i];
        if (c == 0) continue;
        if (!out.empty()) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        std::int64_t a = std::llabs(c);
        if (i == 0) out += std::to_string(a);
        else {
            if (a != 1) out += std::to_string(a) + "*";
            out += "n";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

// --- root finding mod prime powers -----------------------------------------------

std::int64_t scan_budget()
{
    if (const char* env = std::getenv("BOHRLAB_BUDGET")) {
        std::int64_t v = std::atoll(env);
        if (v > 0) return v;
    }
    return 2'000'000;
}

namespace {

bool all_vanish(const std::vector<int_poly>& polys, std::int64_t n, std::int64_t m)
{
    for (const auto& q : polys)
        if (q.eval_mod(n, m) != 0) return false;
    return true;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p)
{
    // extended Euclid; p prime, a not divisible by p
    std::int64_t t = 0, newt = 1, r = p, newr = ((a % p) + p) % p;
    while (newr != 0) {
        std::int64_t qq = r / newr;
        std::tie(t, newt) = std::make_pair(newt, t - qq * newt);
        std::tie(r, newr) = std::make_pair(newr, r - qq * newr);
    }
    if (r != 1) throw arithmetic_error("mod_inverse: not invertible");
    return ((t % p) + p) % p;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t m)
{
    std::vector<std::pair<std::int64_t, int>> f;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            int k = 0;
            while (m % p == 0) { m /= p; ++k; }
            f.emplace_back(p, k);
        }
    }
    if (m > 1) f.emplace_back(m, 1);
    return f;
}

// All simultaneous roots mod p^k, sorted.  Hensel lifting where some family
// member has a simple root; branching with a work budget otherwise; full
// scan as the fallback while p^k stays scannable.
std::vector<std::int64_t> roots_mod_prime_power(const std::vector<int_poly>& polys,
                                                std::int64_t p, int k, bool units_only)
{
    const std::int64_t budget = scan_budget();
    std::int64_t work = 0;

    std::vector<std::int64_t> roots;
    for (std::int64_t r = 0; r < p; ++r) {
        ++work;
        if (all_vanish(polys, r, p)) roots.push_back(r);
    }
    std::int64_t mod = p;
    for (int level = 1; level < k; ++level) {
        std::int64_t next_mod = mod * p;
        std::vector<std::int64_t> lifted;
        for (std::int64_t r : roots) {
            // a simple root of any family member lifts uniquely
            const int_poly* simple = nullptr;
            for (const auto& q : polys) {
                if (q.derivative().eval_mod(r, p) != 0) { simple = &q; break; }
            }
            if (simple) {
                // r' = r - Q(r) * Q'(r)^{-1}  (computed mod next_mod)
                std::int64_t qr = simple->eval_mod(r, next_mod);
                std::int64_t inv = mod_inverse(simple->derivative().eval_mod(r, p), p);
                __int128 t = (static_cast<__int128>(qr / mod) * inv) % p;
                std::int64_t cand =
                    static_cast<std::int64_t>((r + ((next_mod - (t * mod) % next_mod) % next_mod)) %
                                              next_mod);
                ++work;
                if (all_vanish(polys, cand, next_mod)) lifted.push_back(cand);
            } else {
                for (std::int64_t t = 0; t < p; ++t) {
                    std::int64_t cand = r + t * mod;
                    ++work;
                    if (all_vanish(polys, cand, next_mod)) lifted.push_back(cand);
                }
            }
            if (work > budget) {
                if (next_mod <= budget) {
                    // abandon lifting, scan the full ring once
                    lifted.clear();
                    std::int64_t full = mod;
                    for (int l = level; l < k; ++l) full *= p;
                    std::vector<std::int64_t> out;
                    for (std::int64_t n = 0; n < full; ++n)
                        if (all_vanish(polys, n, full)) out.push_back(n);
                    if (units_only) {
                        std::erase_if(out, [&](std::int64_t n) { return n % p == 0; });
                    }
                    return out;
                }
                throw budget_error("roots_mod_prime_power: budget exceeded at p=" +
                                   std::to_string(p) + "^" + std::to_string(k));
            }
        }
        std::sort(lifted.begin(), lifted.end());
        lifted.erase(std::unique(lifted.begin(), lifted.end()), lifted.end());
        roots = std::move(lifted);
        mod = next_mod;
        if (roots.empty()) break;
    }
    if (units_only) {
        std::erase_if(roots, [&](std::int64_t n) { return n % p == 0; });
    }
    return roots;
}

std::int64_t crt_pair(std::int64_t r1, std::int64_t m1, std::int64_t r2, std::int64_t m2)
{
    // m1, m2 coprime; result in [0, m1*m2)
    __int128 m = static_cast<__int128>(m1) * m2;
    std::int64_t inv = mod_inverse(m1 % m2, m2);
    __int128 diff = ((r2 - r1) % m2 + m2) % m2;
    __int128 x = r1 + static_cast<__int128>(m1) * ((diff * inv) % m2);
    x %= m;
    if (x < 0) x += m;
    return static_cast<std::int64_t>(x);
}

std::int64_t pow_i64(std::int64_t p, int k)
{
    std::int64_t v = 1;
    for (int i = 0; i < k; ++i) v *= p;
    return v;
}

} // namespace

std::optional<std::int64_t> find_root_mod(const std::vector<int_poly>& polys, std::int64_t m,
                                          bool second_kind)
{
    if (m < 1) throw precondition_error("find_root_mod: m must be >= 1");
    if (polys.empty()) throw precondition_error("find_root_mod: empty family");
    if (m == 1) return 0;
    std::int64_t res = 0, mod = 1;
    for (auto [p, k] : factorize(m)) {
        auto roots = roots_mod_prime_power(polys, p, k, second_kind);
        if (roots.empty()) return std::nullopt;
        std::int64_t r = roots.front(); // smallest nonnegative
        std::int64_t pk = pow_i64(p, k);
        res = crt_pair(res, mod, r, pk);
        mod *= pk;
    }
    // map [0, m) into (-m, 0]
    return res == 0 ? 0 : res - m;
}

intersectivity_verdict intersective_upto(const std::vector<int_poly>& polys, std::int64_t M,
                                         bool second_kind)
{
    if (M < 1) throw precondition_error("intersective_upto: M must be >= 1");
    if (polys.empty()) throw precondition_error("intersective_upto: empty family");

    intersectivity_verdict v;
    v.table.second_kind = second_kind;

    // Per prime p <= M: one coherent chain of roots mod p^j, all reductions
    // of the smallest root at the top power.  This is what makes the stored
    // witnesses satisfy r_{mq} = r_m (mod m).
    std::map<std::int64_t, std::vector<std::int64_t>> chain; // p -> value mod p^j at index j-1
    std::vector<char> sieve(static_cast<std::size_t>(M) + 1, 1);
    for (std::int64_t p = 2; p <= M; ++p) {
        if (!sieve[static_cast<std::size_t>(p)]) continue;
        for (std::int64_t q = p * p; q <= M; q += p) sieve[static_cast<std::size_t>(q)] = 0;
        int kmax = 0;
        std::int64_t pk = 1;
        while (pk <= M / p) { pk *= p; ++kmax; }
        // find the first failing power, if any
        int kgood = kmax;
        std::vector<std::int64_t> top;
        for (int k = kmax; k >= 1; --k) {
            top = roots_mod_prime_power(polys, p, k, second_kind);
            if (!top.empty()) { kgood = k; break; }
            if (k == 1) kgood = 0;
        }
        if (kgood < kmax) {
            // p^(kgood+1) has no root: that is the smallest failing modulus
            // at this prime; overall first failure is the min across primes
            std::int64_t failing = pow_i64(p, kgood + 1);
            if (v.first_failure == 0 || failing < v.first_failure) v.first_failure = failing;
            continue;
        }
        std::int64_t r_top = top.front();
        std::vector<std::int64_t> levels(static_cast<std::size_t>(kmax));
        std::int64_t mod = 1;
        for (int j = 1; j <= kmax; ++j) {
            mod *= p;
            levels[static_cast<std::size_t>(j - 1)] = r_top % mod;
        }
        chain[p] = std::move(levels);
    }

    if (v.first_failure != 0 && v.first_failure <= M) {
        v.pass = false;
        return v;
    }

    for (std::int64_t m = 1; m <= M; ++m) {
        std::int64_t res = 0, mod = 1;
        for (auto [p, k] : factorize(m)) {
            const auto& lv = chain.at(p);
            std::int64_t pk = pow_i64(p, k);
            res = crt_pair(res, mod, lv[static_cast<std::size_t>(k - 1)], pk);
            mod *= pk;
        }
        v.table.entries[m] = res == 0 ? 0 : res - m;
    }
    v.pass = true;
    v.verified_up_to = M;
    return v;
}

void witness_table::write_csv(std::ostream& os) const
{
    os << "m,r_m,gcd\n";
    for (auto [m, r] : entries)
        os << m << ',' << r << ',' << std::gcd(m, std::llabs(r)) << '\n';
}

int_poly shift_scale(const int_poly& q, std::int64_t m, std::int64_t r)
{
    if (m <= 0) throw precondition_error("shift_scale: m must be positive");
    if (q.eval_mod(r, m) != 0)
        throw precondition_error("shift_scale: m does not divide Q(r)");
    // expand Q(m n + r) by composing with (r + m n)
    int_poly comp; // result accumulator
    int_poly base({r, m});
    int_poly power = int_poly::constant(1);
    for (std::size_t i = 0; i < q.coeffs().size(); ++i) {
        comp = comp + power * int_poly::constant(q.coeffs()[i]);
        if (i + 1 < q.coeffs().size()) power = power * base;
    }
    std::vector<std::int64_t> divided(comp.coeffs().size());
    for (std::size_t i = 0; i < comp.coeffs().size(); ++i) {
        std::int64_t c = comp.coeffs()[i];
        if (c % m != 0)
            throw arithmetic_error("shift_scale: coefficient " + std::to_string(c) +
                                   " of n^" + std::to_string(i) + " not divisible by m");
        divided[i] = c / m;
    }
    return int_poly(std::move(divided));
}

int rational_rank(const std::vector<int_poly>& polys)
{
    if (polys.empty()) return 0;
    std::size_t cols = 0;
    for (const auto& p : polys) cols = std::max(cols, p.coeffs().size());
    if (cols == 0) return 0;
    std::vector<std::vector<__int128>> m(polys.size(), std::vector<__int128>(cols, 0));
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = 0; j < polys[i].coeffs().size(); ++j)
            m[i][j] = polys[i].coeffs()[j];

    // fraction-free Gaussian elimination (Bareiss)
    int rank = 0;
    __int128 prev = 1;
    for (std::size_t col = 0; col < cols && rank < static_cast<int>(m.size()); ++col) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[static_cast<std::size_t>(rank)], m[piv]);
        for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < m.size(); ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                __int128 num = checked_mul(m[static_cast<std::size_t>(rank)][col], m[i][j],
                                           "rational_rank") -
                               checked_mul(m[i][col], m[static_cast<std::size_t>(rank)][j],
                                           "rational_rank");
                m[i][j] = num / prev;
            }
            m[i][col] = 0;
        }
        prev = m[static_cast<std::size_t>(rank)][col];
        ++rank;
    }
    return rank;
}

bool in_span(const int_poly& p, const std::vector<int_poly>& polys)
{
    int base = rational_rank(polys);
    auto extended = polys;
    extended.push_back(p);
    return rational_rank(extended) == base;
}

// --- primes / Hardy ---------------------------------------------------------------

std::vector<std::int64_t> primes_upto(std::int64_t n)
{
    if (n < 2) throw precondition_error("primes_upto: n must be >= 2");
    std::vector<char> sieve(static_cast<std::size_t>(n) + 1, 1);
    sieve[0] = sieve[1] = 0;
    for (std::int64_t i = 2; i * i <= n; ++i)
        if (sieve[static_cast<std::size_t>(i)])
            for (std::int64_t j = i * i; j <= n; j += i) sieve[static_cast<std::size_t>(j)] = 0;
    std::vector<std::int64_t> out;
    for (std::int64_t i = 2; i <= n; ++i)
        if (sieve[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

std::vector<std::int64_t> primes_in_ap(std::int64_t q, std::int64_t a, std::int64_t n)
{
    auto all = primes_upto(n);
    std::vector<std::int64_t> out;
    std::int64_t ar = ((a % q) + q) % q;
    for (auto p : all)
        if (p % q == ar) out.push_back(p);
    return out;
}

hardy_exponent hardy_exponent::from_rational(std::int64_t p, std::int64_t q)
{
    if (p <= 0 || q <= 0) throw precondition_error("hardy_exponent: must be positive");
    std::int64_t g = std::gcd(p, q);
    hardy_exponent c;
    c.p = p / g;
    c.q = q / g;
    c.value = static_cast<double>(p) / static_cast<double>(q);
    c.exact = true;
    return c;
}

hardy_exponent hardy_exponent::parse(const std::string& text)
{
    auto slash = text.find('/');
    if (slash != std::string::npos)
        return from_rational(std::stoll(text.substr(0, slash)),
                             std::stoll(text.substr(slash + 1)));
    double v = std::stod(text);
    if (!(v > 0)) throw precondition_error("hardy_exponent: must be positive");
    // decimals are exact rationals over a power of ten
    auto dot = text.find('.');
    if (dot != std::string::npos && text.find('e') == std::string::npos &&
        text.find('E') == std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::int64_t den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        std::int64_t num = std::stoll(digits);
        if (num > 0 && den <= 1'000'000) return from_rational(num, den);
    }
    hardy_exponent c;
    c.value = v;
    c.exact = false;
    return c;
}

namespace {

// floor of the q-th root of v (v >= 0)
std::int64_t iroot(__int128 v, std::int64_t q)
{
    if (v < 0) throw arithmetic_error("iroot: negative");
    if (q == 1) return checked_i64(v, "iroot");
    std::int64_t lo = 0, hi = 2;
    auto pow_le = [&](std::int64_t base, __int128 bound) {
        __int128 acc = 1;
        for (std::int64_t i = 0; i < q; ++i) {
            if (__builtin_mul_overflow(acc, static_cast<__int128>(base), &acc)) return false;
            if (acc > bound) return false;
        }
        return true;
    };
    while (pow_le(hi, v)) hi *= 2;
    while (lo + 1 < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (pow_le(mid, v)) lo = mid;
        else hi = mid;
    }
    return lo;
}

} // namespace

std::int64_t hardy_floor(std::int64_t n, const hardy_exponent& c)
{
    if (n < 1) throw precondition_error("hardy_floor: n must be >= 1");
    if (c.exact) {
        // floor(n^{p/q}) = floor((n^p)^{1/q}) whenever n^p is exact
        __int128 np = 1;
        bool fits = true;
        for (std::int64_t i = 0; i < c.p; ++i) {
            if (__builtin_mul_overflow(np, static_cast<__int128>(n), &np)) { fits = false; break; }
        }
        if (fits) return iroot(np, c.q);
    }
    long double v = powl(static_cast<long double>(n), static_cast<long double>(c.value));
    long double fl = floorl(v);
    long double dist = std::min(static_cast<long double>(v - fl),
                                static_cast<long double>(fl + 1 - v));
    if (dist < 1e-9L) {
        // flagged ambiguity; retry at rational precision if possible
        if (c.exact)
            throw arithmetic_error("hardy_floor: ambiguous floor beyond 128-bit range");
        throw arithmetic_error("hardy_floor: floor within 1e-9 of an integer for irrational "
                               "exponent; supply the exponent as a fraction");
    }
    return static_cast<std::int64_t>(fl);
}

std::vector<std::int64_t> hardy_floor_seq(const hardy_exponent& c, std::int64_t n)
{
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i) out.push_back(hardy_floor(i, c));
    return out;
}

} // namespace bohrlab
