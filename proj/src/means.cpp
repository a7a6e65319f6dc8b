#include "bohrlab/means.hpp"

#include "bohrlab/errors.hpp"
#include "bohrlab/fft.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <string>

namespace bohrlab {

namespace {
constexpr double kTau = 2.0 * 3.14159265358979323846;
}

weighted_mean::weighted_mean(std::vector<std::pair<std::int64_t, double>> support)
{
    std::map<std::int64_t, double> merged;
    double total = 0.0;
    for (auto [pt, w] : support) {
        if (w < 0) throw precondition_error("weighted_mean: negative weight");
        if (w == 0) continue;
        merged[pt] += w;
        total += w;
    }
    if (!(total > 0)) throw precondition_error("weighted_mean: zero total weight");
    support_.reserve(merged.size());
    for (auto [pt, w] : merged) support_.emplace_back(pt, w / total);
}

weighted_mean weighted_mean::uniform(std::int64_t from, std::int64_t to)
{
    if (from > to) throw precondition_error("weighted_mean::uniform: empty range");
    std::vector<std::pair<std::int64_t, double>> s;
    s.reserve(static_cast<std::size_t>(to - from + 1));
    for (std::int64_t n = from; n <= to; ++n) s.emplace_back(n, 1.0);
    return weighted_mean(std::move(s));
}

weighted_mean weighted_mean::uniform_on(const std::vector<std::int64_t>& points)
{
    std::vector<std::pair<std::int64_t, double>> s;
    s.reserve(points.size());
    for (auto p : points) s.emplace_back(p, 1.0);
    return weighted_mean(std::move(s));
}

weighted_mean weighted_mean::point(std::int64_t at)
{
    return weighted_mean({{at, 1.0}});
}

std::complex<double> weighted_mean::evaluate(
    const std::function<std::complex<double>(std::int64_t)>& f) const
{
    std::complex<double> acc = 0.0;
    for (auto [pt, w] : support_) acc += w * f(pt);
    return acc;
}

double weighted_mean::evaluate_indicator(const std::function<bool(std::int64_t)>& f) const
{
    double acc = 0.0;
    for (auto [pt, w] : support_)
        if (f(pt)) acc += w;
    return acc;
}

std::complex<double> weighted_mean::convolve(
    const std::function<std::complex<double>(std::int64_t)>& f, std::int64_t g) const
{
    std::complex<double> acc = 0.0;
    for (auto [pt, w] : support_) acc += w * f(pt - g);
    return acc;
}

std::complex<double> weighted_mean::mhat(const frequency& alpha) const
{
    std::complex<double> acc = 0.0;
    for (auto [pt, w] : support_) {
        double t = alpha.times_frac(pt);
        acc += w * std::complex<double>(std::cos(-kTau * t), std::sin(-kTau * t));
    }
    return acc;
}

void weighted_mean::write_csv(std::ostream& os) const
{
    os << "point,weight\n";
    char buf[64];
    for (auto [pt, w] : support_) {
        std::snprintf(buf, sizeof buf, "%lld,%.17g\n", static_cast<long long>(pt), w);
        os << buf;
    }
}

weighted_mean weighted_mean::read_csv(std::istream& is)
{
    std::vector<std::pair<std::int64_t, double>> s;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line.rfind("point", 0) == 0) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw config_error("weighted_mean csv: missing comma");
        s.emplace_back(std::stoll(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return weighted_mean(std::move(s));
}

// --- constructions ----------------------------------------------------------------

weighted_mean build_polynomial_mean(const polynomial_mean_params& params, const grid_set& b,
                                    std::int64_t n_max)
{
    if (n_max < 1) throw precondition_error("build_polynomial_mean: N must be >= 1");
    std::vector<std::int64_t> indices;
    switch (params.index) {
    case mean_index_kind::integers:
        for (std::int64_t n = 1; n <= n_max; ++n) indices.push_back(n);
        break;
    case mean_index_kind::primes:
        indices = primes_upto(n_max);
        break;
    case mean_index_kind::hardy:
        for (std::int64_t n = 1; n <= n_max; ++n) indices.push_back(n);
        break;
    }
    std::vector<std::pair<std::int64_t, double>> support;
    support.reserve(indices.size());
    double total = 0.0;
    for (auto n : indices) {
        std::array<std::int64_t, 3> v{0, 0, 0};
        for (std::size_t i = 0; i < params.qs.size() && i < 3; ++i)
            v[i] = static_cast<std::int64_t>(params.qs[i].eval(n));
        double w = b.correlation_density(v);
        if (w <= 0) continue;
        std::int64_t pt = params.index == mean_index_kind::hardy
                              ? hardy_floor(n, params.hardy_c)
                              : static_cast<std::int64_t>(params.p.eval(n));
        support.emplace_back(pt, w);
        total += w;
    }
    if (!(total > 0))
        throw precondition_error("build_polynomial_mean: zero total weight (no correlation)");
    return weighted_mean(std::move(support));
}

// --- diagnostics --------------------------------------------------------------------

spectrum_report spectrum_scan(const weighted_mean& m, std::int64_t q_max,
                              const std::vector<frequency>& real_grid, double threshold)
{
    if (q_max < 1) throw precondition_error("spectrum_scan: q_max must be >= 1");
    spectrum_report rep;
    rep.threshold = threshold;
    for (std::int64_t q = 1; q <= q_max; ++q) {
        for (std::int64_t p = 0; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            frequency f = frequency::rational(p, q);
            auto v = m.mhat(f);
            if (std::abs(v) > threshold) rep.rational.push_back({f, v});
        }
    }
    for (const auto& f : real_grid) {
        auto v = m.mhat(f);
        if (std::abs(v) > threshold) rep.real.push_back({f, v});
    }
    auto by_modulus = [](const spectrum_entry& a, const spectrum_entry& b) {
        return std::abs(a.value) > std::abs(b.value);
    };
    std::stable_sort(rep.rational.begin(), rep.rational.end(), by_modulus);
    std::stable_sort(rep.real.begin(), rep.real.end(), by_modulus);
    return rep;
}

accumulation_report massive_accumulation_probe(const weighted_mean& m,
                                               const std::vector<bohr_spec>& specs)
{
    if (specs.empty()) throw precondition_error("massive_accumulation_probe: no specs");
    accumulation_report rep;
    rep.min_value = 2.0;
    for (const auto& spec : specs) {
        double v = m.evaluate_indicator([&](std::int64_t n) { return bohr_member(n, spec); });
        rep.per_spec.push_back(v);
        rep.min_value = std::min(rep.min_value, v);
    }
    return rep;
}

annihilation_report annihilation_probe(const weighted_mean& m,
                                       const std::vector<torus_measure>& sigmas)
{
    annihilation_report rep;
    for (const auto& sigma : sigmas) {
        if (!sigma.is_continuous())
            throw precondition_error("annihilation_probe: measure has atoms");
        double v = 0.0;
        for (auto [pt, w] : m.support()) v += w * std::norm(fourier(sigma, pt));
        rep.per_measure.push_back(v);
        rep.max_value = std::max(rep.max_value, v);
    }
    return rep;
}

// --- Bohr structure inside m * 1_U, constructively --------------------------------------

namespace {

// The bump carried by a Bohr set U = B(Lambda; eta):
//   f(g) = max(0, 1 - sum_j |chi_j(g) - 1|^2 / eta^2),
// so 0 <= f <= 1_U, f(0) = 1, and f is a function of the phase vector
// (g a_1, ..., g a_k) on the torus.
double bump_from_phases(const std::vector<double>& phases, double eta)
{
    double s = 0.0;
    for (double t : phases) {
        double d = 2.0 * std::sin(3.14159265358979323846 * (t <= 0.5 ? t : 1.0 - t));
        s += d * d;
    }
    return std::max(0.0, 1.0 - s / (eta * eta));
}

double bump_at(const bohr_spec& u, std::int64_t n)
{
    std::vector<double> ph;
    ph.reserve(u.freqs.size());
    for (const auto& f : u.freqs) ph.push_back(f.times_frac(n));
    return bump_from_phases(ph, u.eta);
}

} // namespace

double convolve_bohr_indicator(const weighted_mean& m, const bohr_spec& u, std::int64_t g)
{
    return m.evaluate_indicator([&](std::int64_t n) { return bohr_member(n - g, u); });
}

bohr_spec bohr_in_convolution(const weighted_mean& m, const bohr_spec& u,
                              double spectrum_threshold)
{
    const std::size_t k = u.freqs.size();
    if (k == 0) {
        // U is all of Z, so m * 1_U is identically 1
        return bohr_spec{{}, 2.0};
    }
    if (k > 3)
        throw precondition_error("bohr_in_convolution: rank of U limited to 3");

    // a = (m * f)(0) = sum w_i f(s_i), computed on the exact bump
    double a = 0.0;
    for (auto [pt, w] : m.support()) a += w * bump_at(u, pt);
    if (!(a > 0))
        throw precondition_error("bohr_in_convolution: m * 1_U vanishes at 0 "
                                 "(accumulation failure)");

    // Fejer approximation of F(theta) = bump on T^k: coefficients from a
    // size-G^k sample DFT, cutoff K, sup error certified on a 4x-oversampled
    // grid plus a Lipschitz slack for off-grid points.
    const std::size_t grid = k == 1 ? 4096 : (k == 2 ? 512 : 32);
    const std::size_t fine = 4 * grid;
    const double target_err = a / 8.0;

    auto pow_k = [k](std::size_t g) {
        std::size_t t = 1;
        for (std::size_t i = 0; i < k; ++i) t *= g;
        return t;
    };
    const std::size_t total = pow_k(grid);
    const std::size_t fine_total = pow_k(fine);

    // k-dimensional FFT by axis passes
    auto fft_axes = [&](std::vector<std::complex<double>>& data, std::size_t g, bool inverse) {
        std::vector<std::complex<double>> line(g);
        std::size_t stride = 1;
        std::size_t n = data.size();
        for (std::size_t ax = 0; ax < k; ++ax) {
            const std::size_t outer = n / g;
            for (std::size_t o = 0; o < outer; ++o) {
                std::size_t base = (o / stride) * stride * g + (o % stride);
                for (std::size_t j = 0; j < g; ++j) line[j] = data[base + j * stride];
                fft(line, inverse);
                for (std::size_t j = 0; j < g; ++j) data[base + j * stride] = line[j];
            }
            stride *= g;
        }
    };

    auto bump_at_index = [&](std::size_t idx, std::size_t g) {
        std::vector<double> ph(k);
        std::size_t rest = idx;
        for (std::size_t ax = 0; ax < k; ++ax) {
            ph[ax] = static_cast<double>(rest % g) / static_cast<double>(g);
            rest /= g;
        }
        return bump_from_phases(ph, u.eta);
    };

    std::vector<std::complex<double>> coef(total);
    for (std::size_t idx = 0; idx < total; ++idx) coef[idx] = bump_at_index(idx, grid);
    fft_axes(coef, grid, false);
    for (auto& c : coef) c /= static_cast<double>(total);

    std::vector<double> bump_fine(fine_total);
    for (std::size_t idx = 0; idx < fine_total; ++idx) bump_fine[idx] = bump_at_index(idx, fine);

    std::vector<std::pair<std::array<int, 3>, std::complex<double>>> terms;
    double achieved_err = 0.0;
    bool certified = false;
    for (std::size_t cutoff = 4; cutoff <= grid / 4 && !certified; cutoff *= 2) {
        terms.clear();
        std::array<int, 3> l{0, 0, 0};
        std::function<void(std::size_t)> collect = [&](std::size_t ax) {
            if (ax == k) {
                std::size_t idx = 0, mul = 1;
                for (std::size_t i = 0; i < k; ++i) {
                    std::size_t li = l[i] >= 0 ? static_cast<std::size_t>(l[i])
                                               : grid - static_cast<std::size_t>(-l[i]);
                    idx += li * mul;
                    mul *= grid;
                }
                double fejer = 1.0;
                for (std::size_t i = 0; i < k; ++i)
                    fejer *= 1.0 - std::abs(l[i]) / static_cast<double>(cutoff + 1);
                auto c = coef[idx] * fejer;
                if (std::abs(c) > 1e-15) terms.emplace_back(l, c);
                return;
            }
            for (int v = -static_cast<int>(cutoff); v <= static_cast<int>(cutoff); ++v) {
                l[ax] = v;
                collect(ax + 1);
            }
        };
        collect(0);

        // evaluate the approximant on the fine grid by zero-padded inverse FFT
        std::vector<std::complex<double>> padded(fine_total, 0.0);
        for (const auto& [ll, cc] : terms) {
            std::size_t idx = 0, mul = 1;
            for (std::size_t i = 0; i < k; ++i) {
                std::size_t li = ll[i] >= 0 ? static_cast<std::size_t>(ll[i])
                                            : fine - static_cast<std::size_t>(-ll[i]);
                idx += li * mul;
                mul *= fine;
            }
            padded[idx] = cc * static_cast<double>(fine_total);
        }
        fft_axes(padded, fine, true);

        double max_err = 0.0;
        for (std::size_t idx = 0; idx < fine_total; ++idx)
            max_err = std::max(max_err, std::abs(padded[idx] - bump_fine[idx]));

        double lip_f = static_cast<double>(k) * 4.0 * 3.14159265358979 / (u.eta * u.eta);
        double lip_p = 0.0;
        for (const auto& [ll, cc] : terms) {
            double absl = 0.0;
            for (std::size_t i = 0; i < k; ++i) absl += std::abs(ll[i]);
            lip_p += kTau * absl * std::abs(cc);
        }
        achieved_err = max_err + (lip_f + lip_p) * (0.5 / static_cast<double>(fine));
        certified = achieved_err <= target_err;
    }
    if (!certified)
        throw precondition_error("bohr_in_convolution: trig approximation cannot reach the "
                                 "required accuracy (rank too high or eta too small)");

    // group terms by the actual frequency l . alpha and weight by mhat
    struct grouped {
        frequency freq;
        std::complex<double> t = 0.0;
        bool trivial = false;
    };
    std::vector<grouped> groups;
    for (const auto& [l, c] : terms) {
        // build l . alpha exactly
        bool all_rational = true;
        for (std::size_t i = 0; i < k; ++i)
            if (!u.freqs[i].is_rational()) all_rational = false;
        frequency f;
        if (all_rational) {
            __int128 num = 0, den = 1;
            for (std::size_t i = 0; i < k; ++i) den *= u.freqs[i].den();
            for (std::size_t i = 0; i < k; ++i) {
                __int128 factor = den / u.freqs[i].den();
                num += static_cast<__int128>(l[i]) * u.freqs[i].num() * factor;
            }
            num %= den;
            if (num < 0) num += den;
            f = frequency::rational(static_cast<std::int64_t>(num),
                                    static_cast<std::int64_t>(den));
        } else {
            frac192 acc = frac192::zero();
            for (std::size_t i = 0; i < k; ++i)
                acc = acc.add(u.freqs[i].times_frac192(l[i]));
            f = frequency::real(acc);
        }
        bool trivial = f.is_rational() ? f.num() == 0 : f.frac().is_zero();
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const grouped& g) { return g.freq == f; });
        if (it == groups.end()) {
            groups.push_back({f, c * m.mhat(f), trivial});
        } else {
            it->t += c * m.mhat(f);
        }
    }

    // drop small terms while the dropped total stays within a/8; never drop
    // the trivial frequency (it is a constant, not a constraint)
    std::sort(groups.begin(), groups.end(),
              [](const grouped& x, const grouped& y) { return std::abs(x.t) < std::abs(y.t); });
    double dropped = 0.0;
    std::vector<grouped> kept;
    for (const auto& g : groups) {
        if (!g.trivial && std::abs(g.t) < spectrum_threshold &&
            dropped + std::abs(g.t) <= a / 8.0) {
            dropped += std::abs(g.t);
        } else {
            kept.push_back(g);
        }
    }

    double kept_sum = 0.0;
    std::vector<frequency> freqs;
    for (const auto& g : kept) {
        if (g.trivial) continue;
        kept_sum += std::abs(g.t);
        freqs.push_back(g.freq);
    }
    // budget: 2*(a/8) approximation + 2*(a/8) dropped + eta_out * kept_sum < a
    double eta_out = kept_sum > 0 ? 0.99 * (a / 2.0) / kept_sum : 2.0;
    eta_out = std::min(eta_out, 2.0);
    return bohr_spec{std::move(freqs), eta_out};
}

} // namespace bohrlab
