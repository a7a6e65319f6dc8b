#ifndef BOHRLAB_WINDOW_SET_HPP
#define BOHRLAB_WINDOW_SET_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <unordered_set>
#include <vector>

namespace bohrlab {

// Inclusive integer interval [lo, hi]; the finite truncation every set
// in this library lives on.
struct window {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    window() = default;
    window(std::int64_t l, std::int64_t h);

    std::int64_t length() const { return hi - lo + 1; }
    bool contains(std::int64_t n) const { return n >= lo && n <= hi; }
    bool contains(const window& o) const { return o.lo >= lo && o.hi <= hi; }
    bool operator==(const window&) const = default;
};

// A finite subset of Z on an explicit window, as a bit vector.
class window_set {
public:
    window_set() : win_(0, 0), bits_(1, 0) {}
    explicit window_set(window w);

    static window_set from_members(window w, const std::vector<std::int64_t>& members);
    static window_set from_predicate(window w, const std::function<bool(std::int64_t)>& pred);
    static window_set full(window w);

    const window& win() const { return win_; }
    bool contains(std::int64_t n) const;
    void insert(std::int64_t n);
    void erase(std::int64_t n);

    std::int64_t cardinality() const;
    bool empty() const { return cardinality() == 0; }
    std::vector<std::int64_t> members() const;
    void for_each(const std::function<void(std::int64_t)>& f) const;
    std::optional<std::int64_t> min_member() const;
    std::optional<std::int64_t> max_member() const;

    // set algebra on the intersection / union of the carriers
    window_set intersect(const window_set& o) const;
    window_set unite(const window_set& o) const;
    window_set setminus(const window_set& o) const;
    window_set restricted(window w) const; // view on a subwindow (clipped)
    bool is_subset_of(const window_set& o) const; // members(this) all in o

    bool operator==(const window_set& o) const; // same members (windows may differ)

    // --- the sumset engine -------------------------------------------------
    // Exact {x+y}; window bounds are the sums of bounds.  Shifted bit-vector
    // OR; identical to the naive double loop by construction.
    friend window_set sumset(const window_set& x, const window_set& y);
    // Exact {s*a}.  s = 0 gives {0} when the input is nonempty.
    friend window_set dilate(const window_set& a, std::int64_t s);
    // Exact {a-b : a,b in A} = A + (-1)A, on [min-max, max-min].
    friend window_set difference_set(const window_set& a);

    // True iff every multiple of k inside `probe` belongs to this set.
    bool contains_subgroup(std::int64_t k, window probe) const;

    // serialization: newline-delimited integers
    void write_text(std::ostream& os) const;
    static window_set read_text(std::istream& is);
    // compact binary: lo, hi as signed 64-bit little-endian, then the raw
    // bit vector, LSB-first within each byte
    void write_binary(std::ostream& os) const;
    static window_set read_binary(std::istream& is);

private:
    window win_;
    std::vector<std::uint64_t> bits_;

    std::size_t words() const { return bits_.size(); }
    void or_shifted(const window_set& src, std::int64_t offset);
};

window_set sumset(const window_set& x, const window_set& y);
window_set dilate(const window_set& a, std::int64_t s);
window_set difference_set(const window_set& a);

// ---------------------------------------------------------------------------

// Finite subset of Z^d, d <= 3.  Hash-backed: the toolkit only needs
// translate / intersect / count in higher dimension, not sumsets.
class grid_set {
public:
    grid_set(int dim, std::array<window, 3> box);

    int dim() const { return dim_; }
    const std::array<window, 3>& box() const { return box_; }

    void insert(std::array<std::int64_t, 3> v);
    bool contains(std::array<std::int64_t, 3> v) const;
    std::int64_t cardinality() const { return static_cast<std::int64_t>(keys_.size()); }
    std::int64_t box_volume() const;

    static grid_set random_density(int dim, std::array<window, 3> box, double density,
                                   std::uint64_t seed);
    static grid_set from_predicate_1d(window box,
                                      const std::function<bool(std::int64_t)>& pred);

    // |B ∩ (B - v) ∩ box| / |box|, the correlation weight nu(1_B 1_{B+v}).
    double correlation_density(std::array<std::int64_t, 3> v) const;

    void for_each(const std::function<void(std::array<std::int64_t, 3>)>& f) const;

private:
    int dim_;
    std::array<window, 3> box_;
    std::unordered_set<std::uint64_t> keys_;

    std::uint64_t pack(std::array<std::int64_t, 3> v) const;
    std::array<std::int64_t, 3> unpack(std::uint64_t k) const;
};

// ---------------------------------------------------------------------------

// Indicator on Z_N: the exactness model for Fourier / positive-definiteness.
class cyclic_set {
public:
    explicit cyclic_set(std::int64_t modulus);

    std::int64_t modulus() const { return n_; }
    bool contains(std::int64_t r) const;
    void insert(std::int64_t r);
    std::int64_t cardinality() const;
    std::vector<std::int64_t> members() const;

    static cyclic_set random_density(std::int64_t n, double density, std::uint64_t seed);

    // exact sumset via rotated bit-vector OR
    cyclic_set sum_shift(const cyclic_set& o) const;
    // sumset via FFT boolean convolution; must agree with sum_shift
    cyclic_set sum_fft(const cyclic_set& o) const;
    cyclic_set negate() const;

    // DFT of the indicator: A_hat[xi] = sum_{a in A} e(-a xi / N)
    std::vector<std::complex<double>> dft() const;

    // |A ∩ (A - g)| by word-level rotate-and-popcount
    std::int64_t intersect_shift_count(std::int64_t g) const;

    // view as a window_set on [0, N-1]
    window_set to_window_set() const;

    bool operator==(const cyclic_set& o) const { return n_ == o.n_ && bits_ == o.bits_; }

private:
    std::int64_t n_;
    std::vector<std::uint64_t> bits_;
};

} // namespace bohrlab

#endif
