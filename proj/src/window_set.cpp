#include "bohrlab/window_set.hpp"

#include "bohrlab/errors.hpp"
#include "bohrlab/fft.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <random>
#include <string>

namespace bohrlab {

window::window(std::int64_t l, std::int64_t h) : lo(l), hi(h)
{
    if (l > h) throw bounds_error("window: lo > hi");
}

window_set::window_set(window w) : win_(w)
{
    bits_.assign(static_cast<std::size_t>((w.length() + 63) / 64), 0);
}

window_set window_set::from_members(window w, const std::vector<std::int64_t>& members)
{
    window_set s(w);
    for (auto m : members) s.insert(m);
    return s;
}

window_set window_set::from_predicate(window w, const std::function<bool(std::int64_t)>& pred)
{
    window_set s(w);
    for (std::int64_t n = w.lo; n <= w.hi; ++n)
        if (pred(n)) s.insert(n);
    return s;
}

window_set window_set::full(window w)
{
    window_set s(w);
    for (auto& word : s.bits_) word = ~std::uint64_t{0};
    // clear bits beyond hi
    std::int64_t extra = static_cast<std::int64_t>(s.bits_.size()) * 64 - w.length();
    if (extra > 0) s.bits_.back() &= (~std::uint64_t{0}) >> extra;
    return s;
}

bool window_set::contains(std::int64_t n) const
{
    if (!win_.contains(n)) return false;
    std::uint64_t idx = static_cast<std::uint64_t>(n - win_.lo);
    return (bits_[idx >> 6] >> (idx & 63)) & 1;
}

void window_set::insert(std::int64_t n)
{
    if (!win_.contains(n)) throw bounds_error("window_set::insert: outside window");
    std::uint64_t idx = static_cast<std::uint64_t>(n - win_.lo);
    bits_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
}

void window_set::erase(std::int64_t n)
{
    if (!win_.contains(n)) return;
    std::uint64_t idx = static_cast<std::uint64_t>(n - win_.lo);
    bits_[idx >> 6] &= ~(std::uint64_t{1} << (idx & 63));
}

std::int64_t window_set::cardinality() const
{
    std::int64_t c = 0;
    for (auto w : bits_) c += std::popcount(w);
    return c;
}

std::vector<std::int64_t> window_set::members() const
{
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(cardinality()));
    for_each([&](std::int64_t n) { out.push_back(n); });
    return out;
}

void window_set::for_each(const std::function<void(std::int64_t)>& f) const
{
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word) {
            unsigned b = static_cast<unsigned>(std::countr_zero(word));
            f(win_.lo + static_cast<std::int64_t>(w * 64 + b));
            word &= word - 1;
        }
    }
}

std::optional<std::int64_t> window_set::min_member() const
{
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        if (bits_[w])
            return win_.lo + static_cast<std::int64_t>(w * 64 + std::countr_zero(bits_[w]));
    }
    return std::nullopt;
}

std::optional<std::int64_t> window_set::max_member() const
{
    for (std::size_t w = bits_.size(); w-- > 0;) {
        if (bits_[w])
            return win_.lo + static_cast<std::int64_t>(w * 64 + 63 - std::countl_zero(bits_[w]));
    }
    return std::nullopt;
}

window_set window_set::intersect(const window_set& o) const
{
    std::int64_t lo = std::max(win_.lo, o.win_.lo);
    std::int64_t hi = std::min(win_.hi, o.win_.hi);
    if (lo > hi) return window_set(window(0, 0));
    window_set r(( window(lo, hi) ));
    for (std::int64_t n = lo; n <= hi; ++n)
        if (contains(n) && o.contains(n)) r.insert(n);
    return r;
}

window_set window_set::unite(const window_set& o) const
{
    window w(std::min(win_.lo, o.win_.lo), std::max(win_.hi, o.win_.hi));
    window_set r(w);
    for_each([&](std::int64_t n) { r.insert(n); });
    o.for_each([&](std::int64_t n) { r.insert(n); });
    return r;
}

window_set window_set::setminus(const window_set& o) const
{
    window_set r(win_);
    for_each([&](std::int64_t n) {
        if (!o.contains(n)) r.insert(n);
    });
    return r;
}

window_set window_set::restricted(window w) const
{
    window clipped(std::max(w.lo, win_.lo), std::min(w.hi, win_.hi));
    window_set r(clipped);
    for (std::int64_t n = clipped.lo; n <= clipped.hi; ++n)
        if (contains(n)) r.insert(n);
    return r;
}

bool window_set::is_subset_of(const window_set& o) const
{
    bool ok = true;
    for_each([&](std::int64_t n) {
        if (!o.contains(n)) ok = false;
    });
    return ok;
}

bool window_set::operator==(const window_set& o) const
{
    if (cardinality() != o.cardinality()) return false;
    return is_subset_of(o);
}

void window_set::or_shifted(const window_set& src, std::int64_t offset)
{
    // dst |= (src bits) shifted so that src index 0 lands at dst index `offset`
    if (offset < 0) throw bounds_error("or_shifted: negative offset");
    std::size_t word_off = static_cast<std::size_t>(offset) >> 6;
    unsigned bit_off = static_cast<unsigned>(offset & 63);
    for (std::size_t i = 0; i < src.bits_.size(); ++i) {
        std::uint64_t w = src.bits_[i];
        if (!w) continue;
        if (word_off + i < bits_.size()) bits_[word_off + i] |= w << bit_off;
        if (bit_off && word_off + i + 1 < bits_.size())
            bits_[word_off + i + 1] |= w >> (64 - bit_off);
    }
}

window_set sumset(const window_set& x, const window_set& y)
{
    if (x.empty() || y.empty()) throw empty_set_error("sumset: empty input");
    window w(x.win_.lo + y.win_.lo, x.win_.hi + y.win_.hi);
    window_set r(w);
    // result index of (xv + y.lo) is xv - x.lo, so OR in y's bits there
    x.for_each([&](std::int64_t xv) { r.or_shifted(y, xv - x.win_.lo); });
    return r;
}

window_set dilate(const window_set& a, std::int64_t s)
{
    if (s == 0) {
        window_set r{window(0, 0)};
        if (!a.empty()) r.insert(0);
        return r;
    }
    std::int64_t b1 = a.win().lo * s, b2 = a.win().hi * s;
    window w(std::min(b1, b2), std::max(b1, b2));
    window_set r(w);
    a.for_each([&](std::int64_t n) { r.insert(n * s); });
    return r;
}

window_set difference_set(const window_set& a)
{
    if (a.empty()) throw empty_set_error("difference_set: empty input");
    return sumset(a, dilate(a, -1));
}

bool window_set::contains_subgroup(std::int64_t k, window probe) const
{
    if (k <= 0) throw precondition_error("contains_subgroup: k must be positive");
    if (!win_.contains(probe)) throw bounds_error("contains_subgroup: probe outside window");
    std::int64_t first = probe.lo % k == 0
                             ? probe.lo
                             : probe.lo + ((k - (probe.lo % k)) % k + k) % k;
    for (std::int64_t n = first; n <= probe.hi; n += k)
        if (!contains(n)) return false;
    return true;
}

void window_set::write_text(std::ostream& os) const
{
    for_each([&](std::int64_t n) { os << n << '\n'; });
}

window_set window_set::read_text(std::istream& is)
{
    std::vector<std::int64_t> mem;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue; // provenance headers
        mem.push_back(std::stoll(line));
    }
    if (mem.empty()) throw empty_set_error("read_text: no members");
    auto [lo, hi] = std::minmax_element(mem.begin(), mem.end());
    return from_members(window(*lo, *hi), mem);
}

namespace {
void put_i64_le(std::ostream& os, std::int64_t v)
{
    for (int i = 0; i < 8; ++i) os.put(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
}
std::int64_t get_i64_le(std::istream& is)
{
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        int c = is.get();
        if (c == EOF) throw bounds_error("read_binary: truncated");
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
    }
    return static_cast<std::int64_t>(v);
}
} // namespace

void window_set::write_binary(std::ostream& os) const
{
    put_i64_le(os, win_.lo);
    put_i64_le(os, win_.hi);
    std::int64_t nbytes = (win_.length() + 7) / 8;
    for (std::int64_t b = 0; b < nbytes; ++b) {
        unsigned char byte = 0;
        for (int bit = 0; bit < 8; ++bit) {
            std::int64_t n = win_.lo + b * 8 + bit;
            if (n <= win_.hi && contains(n)) byte |= static_cast<unsigned char>(1u << bit);
        }
        os.put(static_cast<char>(byte));
    }
}

window_set window_set::read_binary(std::istream& is)
{
    std::int64_t lo = get_i64_le(is);
    std::int64_t hi = get_i64_le(is);
    window_set s{window(lo, hi)};
    std::int64_t nbytes = (s.win_.length() + 7) / 8;
    for (std::int64_t b = 0; b < nbytes; ++b) {
        int c = is.get();
        if (c == EOF) throw bounds_error("read_binary: truncated");
        auto byte = static_cast<unsigned char>(c);
        for (int bit = 0; bit < 8; ++bit) {
            std::int64_t n = lo + b * 8 + bit;
            if (n <= hi && (byte & (1u << bit))) s.insert(n);
        }
    }
    return s;
}

// --- grid_set ---------------------------------------------------------------

grid_set::grid_set(int dim, std::array<window, 3> box) : dim_(dim), box_(box)
{
    if (dim < 1 || dim > 3) throw precondition_error("grid_set: dim must be 1..3");
}

std::uint64_t grid_set::pack(std::array<std::int64_t, 3> v) const
{
    std::uint64_t key = 0;
    for (int i = dim_ - 1; i >= 0; --i) {
        key = key * static_cast<std::uint64_t>(box_[i].length()) +
              static_cast<std::uint64_t>(v[i] - box_[i].lo);
    }
    return key;
}

std::array<std::int64_t, 3> grid_set::unpack(std::uint64_t k) const
{
    std::array<std::int64_t, 3> v{0, 0, 0};
    for (int i = 0; i < dim_; ++i) {
        auto len = static_cast<std::uint64_t>(box_[i].length());
        v[i] = box_[i].lo + static_cast<std::int64_t>(k % len);
        k /= len;
    }
    return v;
}

void grid_set::insert(std::array<std::int64_t, 3> v)
{
    for (int i = 0; i < dim_; ++i)
        if (!box_[i].contains(v[i])) throw bounds_error("grid_set::insert: outside box");
    keys_.insert(pack(v));
}

bool grid_set::contains(std::array<std::int64_t, 3> v) const
{
    for (int i = 0; i < dim_; ++i)
        if (!box_[i].contains(v[i])) return false;
    return keys_.count(pack(v)) > 0;
}

std::int64_t grid_set::box_volume() const
{
    std::int64_t vol = 1;
    for (int i = 0; i < dim_; ++i) vol *= box_[i].length();
    return vol;
}

grid_set grid_set::random_density(int dim, std::array<window, 3> box, double density,
                                  std::uint64_t seed)
{
    grid_set g(dim, box);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::array<std::int64_t, 3> v{0, 0, 0};
    std::function<void(int)> rec = [&](int axis) {
        if (axis == dim) {
            if (coin(rng) < density) g.insert(v);
            return;
        }
        for (std::int64_t x = box[axis].lo; x <= box[axis].hi; ++x) {
            v[axis] = x;
            rec(axis + 1);
        }
    };
    rec(0);
    return g;
}

grid_set grid_set::from_predicate_1d(window box, const std::function<bool(std::int64_t)>& pred)
{
    grid_set g(1, {box, window(0, 0), window(0, 0)});
    for (std::int64_t x = box.lo; x <= box.hi; ++x)
        if (pred(x)) g.insert({x, 0, 0});
    return g;
}

double grid_set::correlation_density(std::array<std::int64_t, 3> v) const
{
    std::int64_t count = 0;
    for (auto key : keys_) {
        auto x = unpack(key);
        std::array<std::int64_t, 3> y{0, 0, 0};
        bool inside = true;
        for (int i = 0; i < dim_; ++i) {
            y[i] = x[i] + v[i];
            if (!box_[i].contains(y[i])) { inside = false; break; }
        }
        if (!inside) continue;
        if (keys_.count(pack(y))) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(box_volume());
}

void grid_set::for_each(const std::function<void(std::array<std::int64_t, 3>)>& f) const
{
    for (auto key : keys_) f(unpack(key));
}

// --- cyclic_set --------------------------------------------------------------

cyclic_set::cyclic_set(std::int64_t modulus) : n_(modulus)
{
    if (modulus <= 0) throw precondition_error("cyclic_set: modulus must be positive");
    bits_.assign(static_cast<std::size_t>((modulus + 63) / 64), 0);
}

bool cyclic_set::contains(std::int64_t r) const
{
    r %= n_;
    if (r < 0) r += n_;
    return (bits_[static_cast<std::size_t>(r >> 6)] >> (r & 63)) & 1;
}

void cyclic_set::insert(std::int64_t r)
{
    r %= n_;
    if (r < 0) r += n_;
    bits_[static_cast<std::size_t>(r >> 6)] |= std::uint64_t{1} << (r & 63);
}

std::int64_t cyclic_set::cardinality() const
{
    std::int64_t c = 0;
    for (auto w : bits_) c += std::popcount(w);
    return c;
}

std::vector<std::int64_t> cyclic_set::members() const
{
    std::vector<std::int64_t> out;
    for (std::int64_t r = 0; r < n_; ++r)
        if (contains(r)) out.push_back(r);
    return out;
}

cyclic_set cyclic_set::random_density(std::int64_t n, double density, std::uint64_t seed)
{
    cyclic_set s(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::int64_t r = 0; r < n; ++r)
        if (coin(rng) < density) s.insert(r);
    return s;
}

cyclic_set cyclic_set::sum_shift(const cyclic_set& o) const
{
    if (n_ != o.n_) throw precondition_error("cyclic sumset: modulus mismatch");
    if (cardinality() == 0 || o.cardinality() == 0)
        throw empty_set_error("cyclic sumset: empty input");
    cyclic_set r(n_);
    const bool word_aligned = (n_ % 64) == 0;
    for (std::int64_t a = 0; a < n_; ++a) {
        if (!contains(a)) continue;
        if (word_aligned) {
            // OR in o's bits rotated left by a
            const std::size_t nw = o.bits_.size();
            const std::size_t wsh = static_cast<std::size_t>(a) >> 6;
            const unsigned bsh = static_cast<unsigned>(a & 63);
            for (std::size_t i = 0; i < nw; ++i) {
                std::uint64_t w = o.bits_[i];
                if (!w) continue;
                std::size_t j = (i + wsh) % nw;
                r.bits_[j] |= w << bsh;
                if (bsh) r.bits_[(j + 1) % nw] |= w >> (64 - bsh);
            }
        } else {
            for (std::int64_t b = 0; b < n_; ++b)
                if (o.contains(b)) r.insert(a + b >= n_ ? a + b - n_ : a + b);
        }
    }
    return r;
}

cyclic_set cyclic_set::sum_fft(const cyclic_set& o) const
{
    if (n_ != o.n_) throw precondition_error("cyclic sumset: modulus mismatch");
    if (cardinality() == 0 || o.cardinality() == 0)
        throw empty_set_error("cyclic sumset: empty input");
    // boolean convolution: pad to 2*next_pow2 and fold back mod N
    std::size_t m = next_pow2(static_cast<std::size_t>(2 * n_));
    std::vector<std::complex<double>> fa(m, 0.0), fb(m, 0.0);
    for (std::int64_t r = 0; r < n_; ++r) {
        if (contains(r)) fa[static_cast<std::size_t>(r)] = 1.0;
        if (o.contains(r)) fb[static_cast<std::size_t>(r)] = 1.0;
    }
    fft(fa, false);
    fft(fb, false);
    for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
    fft(fa, true);
    cyclic_set r(n_);
    for (std::size_t i = 0; i < m; ++i) {
        if (fa[i].real() > 0.5) r.insert(static_cast<std::int64_t>(i % static_cast<std::size_t>(n_)));
    }
    return r;
}

cyclic_set cyclic_set::negate() const
{
    cyclic_set r(n_);
    for (std::int64_t a = 0; a < n_; ++a)
        if (contains(a)) r.insert(-a);
    return r;
}

std::vector<std::complex<double>> cyclic_set::dft() const
{
    // N need not be a power of two in general; for power-of-two N use FFT,
    // otherwise fall back to the direct sum (small N only)
    std::size_t n = static_cast<std::size_t>(n_);
    if ((n & (n - 1)) == 0) {
        std::vector<std::complex<double>> f(n, 0.0);
        for (std::int64_t r = 0; r < n_; ++r)
            if (contains(r)) f[static_cast<std::size_t>(r)] = 1.0;
        fft(f, false);
        return f;
    }
    std::vector<std::complex<double>> out(n, 0.0);
    constexpr double kTau = 2.0 * 3.14159265358979323846;
    for (std::size_t xi = 0; xi < n; ++xi) {
        std::complex<double> acc = 0.0;
        for (std::int64_t r = 0; r < n_; ++r) {
            if (!contains(r)) continue;
            double ang = -kTau * static_cast<double>((static_cast<__int128>(r) * xi) % n_) /
                         static_cast<double>(n_);
            acc += std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[xi] = acc;
    }
    return out;
}

std::int64_t cyclic_set::intersect_shift_count(std::int64_t g) const
{
    g %= n_;
    if (g < 0) g += n_;
    if ((n_ % 64) != 0) {
        std::int64_t c = 0;
        for (std::int64_t a = 0; a < n_; ++a)
            if (contains(a) && contains(a + g)) ++c;
        return c;
    }
    // count bits of A & rot(A, -g): bit a set in rot iff bit (a+g) mod N in A
    const std::size_t nw = bits_.size();
    const std::size_t wsh = static_cast<std::size_t>(g) >> 6;
    const unsigned bsh = static_cast<unsigned>(g & 63);
    std::int64_t c = 0;
    for (std::size_t i = 0; i < nw; ++i) {
        std::uint64_t rot = bits_[(i + wsh) % nw] >> bsh;
        if (bsh) rot |= bits_[(i + wsh + 1) % nw] << (64 - bsh);
        c += std::popcount(bits_[i] & rot);
    }
    return c;
}

window_set cyclic_set::to_window_set() const
{
    window_set s{window(0, n_ - 1)};
    for (std::int64_t r = 0; r < n_; ++r)
        if (contains(r)) s.insert(r);
    return s;
}

} // namespace bohrlab
