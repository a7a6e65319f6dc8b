#ifndef BOHRLAB_BOHR_HPP
#define BOHRLAB_BOHR_HPP

#include "bohrlab/frequency.hpp"
#include "bohrlab/window_set.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bohrlab {

// B(Lambda; eta) = { n : |e(n a_j) - 1| < eta for every a_j in Lambda }.
// Rank 0 means all of Z.  Comparisons are strict; rational frequencies are
// decided by the reduced residue n mod q, so membership is boundary-exact.
struct bohr_spec {
    std::vector<frequency> freqs;
    double eta = 0.0;

    std::size_t rank() const { return freqs.size(); }
    std::string to_json() const;
    static bohr_spec from_json(const std::string& text);
};

bool bohr_member(std::int64_t n, const bohr_spec& spec);
window_set enumerate_bohr(const bohr_spec& spec, window w);

// Supremum eta with enumerate_bohr({freqs, eta}, X.window) contained in X,
// capped at 2 (the diameter of the unit circle).  Computed exactly as the
// min over window non-members of the max frequency distance; `attained`
// reports whether that min is realized by a window point (it always is
// unless the window complement is empty).
struct radius_result {
    double eta = 0.0;
    bool attained = false;      // some non-member realizes the bound
    std::int64_t witness = 0;   // that non-member, when attained
};
radius_result max_radius_inside(const std::vector<frequency>& freqs, const window_set& x);

// p(n) = sum c_j e(n a_j)
struct trig_poly {
    std::vector<std::pair<std::complex<double>, frequency>> terms;

    std::complex<double> eval(std::int64_t n) const;
};

// The constructive trig-polynomial -> Bohr-set bridge: returns a spec whose
// enumeration is contained in { n : Re p(n) > 0 } on every window.
// Frequencies are the nontrivial frequencies of p; the radius is
// Re p(0) / (1 + 2 d M) with M = 1 + max |c_j|.
bohr_spec bohr_from_trigpoly(const trig_poly& p);

// --- Bohr-Hamming balls ------------------------------------------------------

// BH(alpha; k, eps) = { n : at most k coordinates of n*alpha are eps-far
// from 0 in the torus metric }.
struct bohr_hamming_spec {
    std::vector<frequency> alpha; // dimension d
    std::int64_t k = 0;           // k < d
    double eps = 0.0;             // in (0, 1/2)

    void validate() const;
};

std::int64_t bh_weight(std::int64_t n, const bohr_hamming_spec& spec); // w_eps(n alpha)
bool bh_member(std::int64_t n, const bohr_hamming_spec& spec);
window_set enumerate_bh(const bohr_hamming_spec& spec, window w);

// --- probes ------------------------------------------------------------------

struct k_bohr_dense_report {
    std::int64_t trials = 0;
    std::int64_t hits = 0;
    double fraction = 0.0;
    std::vector<std::int64_t> missed_centers;
};

// Samples rank-k specs (random real frequencies, eta from a small grid) and
// random centers m, and reports the fraction of (spec, m) pairs for which
// (X - m) meets the Bohr set inside X's window.
k_bohr_dense_report k_bohr_dense_probe(const window_set& x, std::size_t rank,
                                       std::int64_t trials, std::uint64_t seed,
                                       std::int64_t center_bound = 10000);

// delta-nonrecurrence checker: density proxy of A above delta at scale L and
// (A - A) disjoint from S, both exact.
bool is_nonrecurrence_witness(const window_set& a, const window_set& s, double delta,
                              std::int64_t L);

// Heuristic searcher for a witness A (congruence classes and Bohr-set
// candidates); separate from the exact checker above.
std::optional<window_set> nonrecurrence_witness_search(const window_set& s, double delta,
                                                       std::int64_t L, window domain,
                                                       std::int64_t q_max = 64);

} // namespace bohrlab

#endif
