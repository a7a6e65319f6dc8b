#ifndef BOHRLAB_MEASURES_HPP
#define BOHRLAB_MEASURES_HPP

#include "bohrlab/frequency.hpp"
#include "bohrlab/window_set.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bohrlab {

class weighted_mean; // defined in means.hpp

// Self-similar singular continuous component: the measure carried by the
// two-map IFS x -> r x, x -> r x + (1 - r).  r = 1/3 is the classical
// middle-thirds construction.  sigma_hat comes from the truncated
// self-similarity product with `depth` factors.
struct cantor_part {
    int depth = 40;
    double mass = 1.0;
    std::int64_t ratio_num = 1, ratio_den = 3; // contraction ratio r = num/den < 1/2
};

// Absolutely continuous component: density samples on a uniform grid stand
// for the band-limited density interpolating them, so sigma_hat vanishes
// beyond the Nyquist band |n| >= M/2 (no aliasing into a periodic comb).
struct ac_part {
    std::vector<double> grid; // nonnegative samples at j/M
    double mass = 1.0;
};

// A positive finite measure on the torus: atoms plus continuous components
// with a Fourier-coefficient oracle sigma_hat(n) = integral of e(-n theta).
struct torus_measure {
    std::vector<std::pair<frequency, double>> atoms; // (location, mass > 0)
    std::vector<cantor_part> cantors;
    std::vector<ac_part> acs;

    void validate() const;
    double total_mass() const;
    double atom_zero_mass() const; // mass of the atom at the trivial character
    bool is_continuous() const { return atoms.empty(); }

    static torus_measure point_mass(frequency at, double mass = 1.0);
    static torus_measure cantor(int depth, double mass = 1.0,
                                std::int64_t rnum = 1, std::int64_t rden = 3);

    std::string to_json() const;
    static torus_measure from_json(const std::string& text);
};

// sigma_hat(n); conjugate-symmetric, sigma_hat(0) = total mass
std::complex<double> fourier(const torus_measure& sigma, std::int64_t n);

// Fourier transform of a single cantor_part with unit mass (exposed for the
// two-oracle cross-check in tests)
std::complex<double> cantor_fourier(const cantor_part& c, __int128 n);

// --- the cyclic (exact) Herglotz model ------------------------------------------

// phi(0..N-1) with phi(-g) = conj phi(g) cyclically, phi(0) >= 0 real, and
// nonnegative cyclic DFT (positive definiteness).
struct correlation_seq {
    std::int64_t modulus = 0;
    std::vector<std::complex<double>> values;
};

// phi_A(g) = |A ∩ (A - g)| / N, exactly positive definite.
correlation_seq correlation_phi(const cyclic_set& a);

// Positive definite phi -> measure with atoms at j/N of mass DFT_j(phi)/N;
// rejects sequences whose DFT dips below -1e-9.  fourier() of the result
// reproduces phi within 1e-9.
torus_measure herglotz_cyclic(const correlation_seq& phi);

// smallest h in S ∩ [1, bound] with Re sigma_hat(h) > sigma({0}) - eps
struct recurrence_search_result {
    std::optional<std::int64_t> h;
    double best_value = 0.0; // max of Re sigma_hat over the scanned set
    std::int64_t best_h = 0;
};
recurrence_search_result nice_recurrence_search(const window_set& s, const torus_measure& sigma,
                                                double eps, std::int64_t bound);

// sum of w_i sigma_hat(s_i); the finite stand-in for m(sigma_hat)
std::complex<double> mean_of_fourier(const weighted_mean& m, const torus_measure& sigma);

} // namespace bohrlab

#endif
