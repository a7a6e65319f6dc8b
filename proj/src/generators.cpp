#include "bohrlab/generators.hpp"

#include "bohrlab/arith.hpp"
#include "bohrlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bohrlab {

// --- fat Cantor -----------------------------------------------------------------

fat_cantor_set::fat_cantor_set(std::int64_t a_num, std::int64_t b_num, std::int64_t den,
                               std::int64_t scale_num, std::int64_t scale_den, int depth)
    : depth_(depth)
{
    if (den <= 0 || den > 1'000'000 || a_num < 0 || b_num > den || a_num >= b_num)
        throw precondition_error("fat_cantor_set: ambient must satisfy 0 <= a < b <= 1, den <= 1e6");
    if (scale_num < 0 || scale_den <= 0 || scale_den > 1'000'000)
        throw precondition_error("fat_cantor_set: bad removal scale");
    if (depth < 0 || depth > 24) throw precondition_error("fat_cantor_set: depth must be 0..24");

    // common denominator D = den * scale_den * 4^depth * 2^(depth+1):
    // stage-k removals have absolute length c L / 4^k and midpoints add one
    // halving per level, so every endpoint is an integer multiple of 1/D
    den_ = static_cast<__int128>(den) * scale_den;
    for (int i = 0; i < depth; ++i) den_ *= 4;
    for (int i = 0; i < depth + 1; ++i) den_ *= 2;
    if (den_ > (static_cast<__int128>(1) << 100))
        throw precondition_error("fat_cantor_set: denominator too large");

    const __int128 scale = den_ / den; // 1/den in units of 1/den_
    __int128 lo0 = static_cast<__int128>(a_num) * scale;
    __int128 hi0 = static_cast<__int128>(b_num) * scale;
    const __int128 ambient_len = hi0 - lo0;

    lo_ = {lo0};
    hi_ = {hi0};
    // removal at stage k: c * L / 4^k, with c = scale_num / scale_den
    __int128 removed_if_infinite = 0; // sum over all k of 2^{k-1} c L 4^{-k} = c L / 2
    {
        __int128 clen = ambient_len / scale_den * scale_num; // c * L in 1/den_ units
        if ((ambient_len % scale_den) != 0) {
            // den_ contains scale_den as a factor, so this cannot happen
            throw arithmetic_error("fat_cantor_set: internal denominator mismatch");
        }
        if (clen >= 2 * ambient_len)
            throw precondition_error("fat_cantor_set: removal scale would erase the set");
        removed_if_infinite = clen / 2;
    }

    __int128 pow4 = 1;
    for (int k = 1; k <= depth; ++k) {
        pow4 *= 4;
        __int128 a_k = ambient_len / scale_den * scale_num / pow4; // exact: den_ has the factors
        std::vector<__int128> nlo, nhi;
        nlo.reserve(lo_.size() * 2);
        nhi.reserve(lo_.size() * 2);
        for (std::size_t i = 0; i < lo_.size(); ++i) {
            __int128 mid2 = lo_[i] + hi_[i]; // 2 * midpoint, even in 1/den_ units
            __int128 mid = mid2 / 2;
            if (mid2 % 2 != 0) throw arithmetic_error("fat_cantor_set: midpoint not exact");
            __int128 half = a_k / 2;
            if (a_k % 2 != 0) throw arithmetic_error("fat_cantor_set: removal not exact");
            if (mid - half <= lo_[i] || mid + half >= hi_[i])
                throw precondition_error("fat_cantor_set: removal exceeds interval at stage " +
                                         std::to_string(k));
            nlo.push_back(lo_[i]);
            nhi.push_back(mid - half);
            nlo.push_back(mid + half);
            nhi.push_back(hi_[i]);
        }
        lo_ = std::move(nlo);
        hi_ = std::move(nhi);
    }
    surviving_ = 0;
    for (std::size_t i = 0; i < lo_.size(); ++i) surviving_ += hi_[i] - lo_[i];

    // mass still to be removed beyond depth K: c L sum_{k>K} 2^{k-1} 4^{-k}
    //   = c L 2^{-K-1}
    __int128 tail = ambient_len / scale_den * scale_num;
    for (int i = 0; i < depth + 1; ++i) tail /= 2;
    tail_removed_ = tail;
    (void)removed_if_infinite;
    if (surviving_ - tail_removed_ <= 0)
        throw precondition_error("fat_cantor_set: parameters leave no measure");
}

bool fat_cantor_set::member(const frac192& theta) const
{
    // position p = theta * den_ compared against integer endpoints;
    // den_ may exceed 64 bits, so split den_ = d1 * 2^64 + d0 and
    // p = (theta * d1) * 2^64 + theta * d0
    const std::uint64_t d0 = static_cast<std::uint64_t>(den_);
    const std::uint64_t d1 = static_cast<std::uint64_t>(den_ >> 64);
    __int128 int_part = 0;
    frac192 frac_part = frac192::zero();
    if (d1) {
        auto [i1, f1] = theta.mul_u64_full(d1);
        // shift (i1 + f1) left by 64 bits: integer part gains i1 * 2^64 plus
        // the top limb of f1
        int_part += (static_cast<__int128>(i1) << 64);
        int_part += f1.limb[2];
        frac192 shifted;
        shifted.limb[2] = f1.limb[1];
        shifted.limb[1] = f1.limb[0];
        shifted.limb[0] = 0;
        frac_part = shifted;
    }
    auto [i0, f0] = theta.mul_u64_full(d0);
    int_part += i0;
    // frac_part + f0 may carry into the integer part
    frac192 sum = frac_part.add(f0);
    if (sum < frac_part && !f0.is_zero()) int_part += 1; // wrapped past 1

    // binary search: find the interval with lo <= p; p >= lo_[i] iff
    // int_part >= lo_[i]; p <= hi_[i] iff int_part < hi_[i] or
    // (int_part == hi_[i] and frac == 0)
    std::size_t lo = 0, hi = lo_.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (lo_[mid] <= int_part) lo = mid + 1;
        else hi = mid;
    }
    if (lo == 0) return false;
    std::size_t idx = lo - 1;
    if (int_part < hi_[idx]) return true;
    return int_part == hi_[idx] && sum.is_zero();
}

bool fat_cantor_set::member(double theta) const
{
    return member(frac192::from_double(theta));
}

std::pair<double, double> fat_cantor_set::measure_bounds() const
{
    double upper = static_cast<double>(surviving_) / static_cast<double>(den_);
    double lower = static_cast<double>(surviving_ - tail_removed_) / static_cast<double>(den_);
    return {lower, upper};
}

std::pair<std::int64_t, std::int64_t> fat_cantor_set::measure_bounds_num() const
{
    return {static_cast<std::int64_t>(surviving_ - tail_removed_),
            static_cast<std::int64_t>(surviving_)};
}

// --- skew orbit -----------------------------------------------------------------

frac192 skew_second_coord(const skew_orbit_spec& spec, std::int64_t n)
{
    frac192 y = spec.y1.times_frac192(1);
    y = y.add(spec.x1.times_frac192(2 * static_cast<__int128>(n)));
    y = y.add(spec.alpha.times_frac192(static_cast<__int128>(n) * n));
    return y;
}

window_set skew_orbit_set(const skew_orbit_spec& spec, const fat_cantor_set& v, std::int64_t n)
{
    if (n < 1) throw precondition_error("skew_orbit_set: N must be >= 1");
    window_set s{window(0, n)};
    // incremental exact iteration: y_{m+1} = y_m + d_m, d_{m+1} = d_m + 2 alpha
    frac192 y = spec.y1.times_frac192(1);
    frac192 d = spec.x1.times_frac192(2).add(spec.alpha.times_frac192(1));
    const frac192 dd = spec.alpha.times_frac192(2);
    for (std::int64_t m = 0; m <= n; ++m) {
        if (v.member(y)) s.insert(m);
        y = y.add(d);
        d = d.add(dd);
    }
    return s;
}

std::optional<std::int64_t> two_recurrence_certificate(const window_set& s,
                                                       const frequency& alpha,
                                                       const frequency& beta, double eps,
                                                       std::int64_t bound)
{
    if (!(eps > 0) || !(eps < 0.5))
        throw precondition_error("two_recurrence_certificate: eps must lie in (0, 1/2)");
    std::optional<std::int64_t> found;
    s.for_each([&](std::int64_t n) {
        if (found || n < 1 || n > bound) return;
        if (beta.times_frac192(n).torus_norm() < eps &&
            alpha.times_frac192(static_cast<__int128>(n) * n).torus_norm() < eps)
            found = n;
    });
    return found;
}

// --- prime tower ------------------------------------------------------------------

prime_tower prime_tower_set(const std::vector<std::int64_t>& primes,
                            const std::vector<std::int64_t>& lengths,
                            std::int64_t first_start)
{
    if (primes.size() != lengths.size() || primes.empty())
        throw precondition_error("prime_tower_set: primes/lengths mismatch");
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            if (primes[i] == primes[j]) throw precondition_error("prime_tower_set: repeated prime");

    prime_tower t;
    t.primes = primes;
    __int128 sum_max = 0;
    std::int64_t start = first_start;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        std::int64_t lo = i == 0 ? start : static_cast<std::int64_t>(2 * sum_max + 1);
        std::int64_t hi = lo + lengths[i] - 1;
        if (static_cast<__int128>(hi) > (static_cast<__int128>(1) << 62))
            throw arithmetic_error("prime_tower_set: positions exceed 64-bit range");
        t.intervals.emplace_back(lo, hi);
        sum_max += hi;
    }
    window_set s{window(0, t.intervals.back().second)};
    for (std::size_t i = 0; i < primes.size(); ++i) {
        auto [lo, hi] = t.intervals[i];
        for (std::int64_t n = lo; n <= hi; ++n)
            if (n % primes[i] == 1) s.insert(n);
    }
    t.set = std::move(s);
    return t;
}

bool growth_rule_holds(const prime_tower& t)
{
    __int128 sum_max = 0;
    for (std::size_t i = 0; i < t.intervals.size(); ++i) {
        if (i > 0 && !(sum_max < t.intervals[i].first)) return false;
        sum_max += t.intervals[i].second;
    }
    return true;
}

std::optional<std::vector<std::int64_t>> chain_search(const window_set& a, int m,
                                                      std::int64_t node_budget)
{
    if (m < 2) throw precondition_error("chain_search: m must be >= 2");
    if (node_budget <= 0) node_budget = scan_budget();
    auto members = a.members();
    std::int64_t visited = 0;

    // chain = (0, t_2, ..., t_m) with all pairwise differences in A; the
    // candidate set after fixing a prefix is the intersection of A with its
    // translates by the chosen points
    std::vector<std::int64_t> chain{0};
    std::function<std::optional<std::vector<std::int64_t>>(const std::vector<std::int64_t>&)>
        dfs = [&](const std::vector<std::int64_t>& candidates)
        -> std::optional<std::vector<std::int64_t>> {
        if (static_cast<int>(chain.size()) == m) return chain;
        for (auto t : candidates) {
            if (t <= chain.back()) continue;
            if (++visited > node_budget)
                throw budget_error("chain_search: node budget exceeded");
            std::vector<std::int64_t> next;
            for (auto c : candidates)
                if (c > t && a.contains(c - t)) next.push_back(c);
            chain.push_back(t);
            if (static_cast<int>(chain.size()) == m) return chain;
            if (auto r = dfs(next)) return r;
            chain.pop_back();
        }
        return std::nullopt;
    };
    return dfs(members);
}

// --- parity alternating / return times ----------------------------------------------

window_set parity_alternating_set(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& intervals, double min_growth_ratio)
{
    if (intervals.empty()) throw precondition_error("parity_alternating_set: no intervals");
    double prefix = 0;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        auto [lo, hi] = intervals[i];
        if (lo > hi) throw precondition_error("parity_alternating_set: bad interval");
        if (i > 0 && prefix > 0) {
            double len = static_cast<double>(hi - lo + 1);
            if (len < min_growth_ratio * prefix)
                throw precondition_error("parity_alternating_set: growth ratio violated at " +
                                         std::to_string(i));
        }
        if (i > 0 && lo <= intervals[i - 1].second)
            throw precondition_error("parity_alternating_set: intervals must be disjoint, sorted");
        prefix += static_cast<double>(hi - lo + 1);
    }
    window_set s{window(intervals.front().first, intervals.back().second)};
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        auto [lo, hi] = intervals[i];
        std::int64_t parity = static_cast<std::int64_t>(i % 2);
        for (std::int64_t n = lo; n <= hi; ++n)
            if (((n % 2) + 2) % 2 == parity) s.insert(n);
    }
    return s;
}

window_set rotation_return_times(const frequency& alpha, const frequency& x,
                                 const std::vector<torus_interval>& u, std::int64_t n)
{
    window_set s{window(0, n)};
    frac192 cur = x.times_frac192(1);
    const frac192 step = alpha.times_frac192(1);
    for (std::int64_t i = 0; i <= n; ++i) {
        double t = cur.to_double();
        for (const auto& iv : u) {
            if (iv.contains(t)) { s.insert(i); break; }
        }
        cur = cur.add(step);
    }
    return s;
}

window_set skew_return_times(const skew_orbit_spec& spec,
                             const std::vector<torus_interval>& u_second, std::int64_t n)
{
    window_set s{window(0, n)};
    frac192 y = spec.y1.times_frac192(1);
    frac192 d = spec.x1.times_frac192(2).add(spec.alpha.times_frac192(1));
    const frac192 dd = spec.alpha.times_frac192(2);
    for (std::int64_t m = 0; m <= n; ++m) {
        double t = y.to_double();
        for (const auto& iv : u_second) {
            if (iv.contains(t)) { s.insert(m); break; }
        }
        y = y.add(d);
        d = d.add(dd);
    }
    return s;
}

window_set ip_prefix_set(const std::vector<std::int64_t>& generators)
{
    if (generators.empty() || generators.size() > 20)
        throw precondition_error("ip_prefix_set: need 1..20 generators");
    std::vector<std::int64_t> sums;
    for (std::size_t mask = 1; mask < (std::size_t{1} << generators.size()); ++mask) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < generators.size(); ++i)
            if (mask & (std::size_t{1} << i)) s += generators[i];
        sums.push_back(s);
    }
    auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
    return window_set::from_members(window(std::min<std::int64_t>(0, *lo), *hi), sums);
}

} // namespace bohrlab
