#ifndef BOHRLAB_GENERATORS_HPP
#define BOHRLAB_GENERATORS_HPP

#include "bohrlab/frac192.hpp"
#include "bohrlab/frequency.hpp"
#include "bohrlab/window_set.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace bohrlab {

// Fat Cantor set inside an ambient interval of [0,1]: at stage k an open
// middle interval of absolute length scale * L / 4^k is removed from each of
// the 2^{k-1} surviving intervals (L = ambient length).  All endpoints are
// exact rationals over a fixed power-of-two-times-denominator grid, so
// membership and measure accounting are exact.
class fat_cantor_set {
public:
    // ambient [a_num/den, b_num/den], removal scale c = scale_num/den2
    // (total removed mass = c L / 2 < L required)
    fat_cantor_set(std::int64_t a_num, std::int64_t b_num, std::int64_t den,
                   std::int64_t scale_num, std::int64_t scale_den, int depth);

    int depth() const { return depth_; }
    std::size_t interval_count() const { return lo_.size(); }

    bool member(const frac192& theta) const;
    bool member(double theta) const;

    // exact [lower, upper] for the infinite-depth measure: upper is the
    // depth-K approximation, lower subtracts everything still to be removed
    std::pair<double, double> measure_bounds() const;
    // the same bounds as exact fractions over the common denominator
    std::pair<std::int64_t, std::int64_t> measure_bounds_num() const;
    __int128 common_den() const { return den_; }

private:
    int depth_;
    __int128 den_;                 // all endpoints are multiples of 1/den_
    std::vector<__int128> lo_, hi_; // closed surviving intervals, sorted
    __int128 surviving_ = 0;        // sum of (hi - lo)
    __int128 tail_removed_ = 0;     // total mass removed beyond depth K
};

// Orbit of the torus skew product T(x,y) = (x + alpha, y + 2x + alpha);
// the n-th second coordinate is y1 + 2 n x1 + n^2 alpha.
struct skew_orbit_spec {
    frequency alpha;
    frequency x1;
    frequency y1;
};

frac192 skew_second_coord(const skew_orbit_spec& spec, std::int64_t n);

// S_z = { n in [0, N] : second coordinate of T^n z lies in V }
window_set skew_orbit_set(const skew_orbit_spec& spec, const fat_cantor_set& v, std::int64_t n);

// smallest n in S ∩ [1, bound] with ||n beta|| < eps and ||n^2 alpha|| < eps
std::optional<std::int64_t> two_recurrence_certificate(const window_set& s,
                                                       const frequency& alpha,
                                                       const frequency& beta, double eps,
                                                       std::int64_t bound);

// --- prime tower -------------------------------------------------------------------

struct prime_tower {
    window_set set;                                      // the union of (p_i N + 1) ∩ I_i
    std::vector<std::pair<std::int64_t, std::int64_t>> intervals;
    std::vector<std::int64_t> primes;
};

// Intervals built greedily with min I_{i+1} > 2 * sum_j<=i max I_j, which
// implies the growth rule max{x_1+...+x_i} < min I_{i+1} with room to spare.
// Lengths below min I_1 keep every pairwise difference of members outside
// the set, so no finite chain survives.
prime_tower prime_tower_set(const std::vector<std::int64_t>& primes,
                            const std::vector<std::int64_t>& lengths,
                            std::int64_t first_start = 200);

// exact check of the growth rule on a built tower
bool growth_rule_holds(const prime_tower& t);

// t_1 < ... < t_m with every pairwise difference in A, or nullopt after an
// exhaustive DFS (t_1 may be taken as 0: only differences matter).
std::optional<std::vector<std::int64_t>> chain_search(const window_set& a, int m,
                                                      std::int64_t node_budget = 0);

// --- other constructions --------------------------------------------------------------

// Alternating-parity set: interval i (0-based) contributes its even numbers
// when i is even and its odd numbers when i is odd.  The interval lengths
// must grow: |I_i| >= ratio * (|I_0| + ... + |I_{i-1}|).
window_set parity_alternating_set(const std::vector<std::pair<std::int64_t, std::int64_t>>& intervals,
                                  double min_growth_ratio);

// return-time sets R(x, U) = { n : T^n x in U }
struct torus_interval {
    double lo = 0.0, hi = 0.0; // subinterval of [0,1); lo <= hi
    bool contains(double t) const { return t >= lo && t <= hi; }
};

window_set rotation_return_times(const frequency& alpha, const frequency& x,
                                 const std::vector<torus_interval>& u, std::int64_t n);

window_set skew_return_times(const skew_orbit_spec& spec, const std::vector<torus_interval>& u_second,
                             std::int64_t n);

// finite sums over nonempty subsets of the generators (an IP prefix)
window_set ip_prefix_set(const std::vector<std::int64_t>& generators);

} // namespace bohrlab

#endif
