#include "bohrlab/measures.hpp"

#include "bohrlab/errors.hpp"
#include "bohrlab/fft.hpp"
#include "bohrlab/means.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace bohrlab {

namespace {
constexpr double kTau = 2.0 * 3.14159265358979323846;

std::complex<double> e_of(double frac)
{
    return {std::cos(kTau * frac), std::sin(kTau * frac)};
}
} // namespace

void torus_measure::validate() const
{
    for (const auto& [loc, mass] : atoms) {
        if (!(mass > 0)) throw precondition_error("torus_measure: atom mass must be positive");
    }
    for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = i + 1; j < atoms.size(); ++j)
            if (atoms[i].first == atoms[j].first)
                throw precondition_error("torus_measure: duplicate atom location");
    for (const auto& c : cantors) {
        if (!(c.mass > 0) || c.depth < 1) throw precondition_error("torus_measure: bad cantor part");
        if (!(c.ratio_num > 0) || !(2 * c.ratio_num < c.ratio_den))
            throw precondition_error("torus_measure: cantor ratio must lie in (0, 1/2)");
    }
    for (const auto& a : acs) {
        if (!(a.mass > 0) || a.grid.empty()) throw precondition_error("torus_measure: bad ac part");
        for (double g : a.grid)
            if (g < 0) throw precondition_error("torus_measure: negative density sample");
    }
}

double torus_measure::total_mass() const
{
    double t = 0;
    for (const auto& [loc, mass] : atoms) t += mass;
    for (const auto& c : cantors) t += c.mass;
    for (const auto& a : acs) t += a.mass;
    return t;
}

double torus_measure::atom_zero_mass() const
{
    for (const auto& [loc, mass] : atoms) {
        bool zero = loc.is_rational() ? loc.num() == 0 : loc.frac().is_zero();
        if (zero) return mass;
    }
    return 0.0;
}

torus_measure torus_measure::point_mass(frequency at, double mass)
{
    torus_measure m;
    m.atoms.emplace_back(std::move(at), mass);
    return m;
}

torus_measure torus_measure::cantor(int depth, double mass, std::int64_t rnum, std::int64_t rden)
{
    torus_measure m;
    m.cantors.push_back(cantor_part{depth, mass, rnum, rden});
    return m;
}

std::complex<double> cantor_fourier(const cantor_part& c, __int128 n)
{
    // mu_hat(n) = prod_{k=1..depth} (1 + e(-n rho_k)) / 2 with
    // rho_k = (1-r) r^{k-1} = (b-a) a^{k-1} / b^k.  rho_k always lies in
    // (0,1), so it is held directly in fixed point and only the final
    // product n * rho_k is reduced mod 1; accumulated error stays below
    // depth * |n| * 2^-192.
    const auto a = static_cast<std::uint64_t>(c.ratio_num);
    const auto b = static_cast<std::uint64_t>(c.ratio_den);
    std::complex<double> prod = 1.0;
    frac192 rho = frac192::from_rational(static_cast<std::int64_t>(b - a),
                                         static_cast<std::int64_t>(b));
    for (int k = 1; k <= c.depth; ++k) {
        double theta = rho.mul_i128(n).to_double();
        prod *= 0.5 * (1.0 + e_of(-theta));
        auto [ip, fp] = rho.mul_u64_full(a);
        rho = frac192::div_u64(ip, fp, b);
    }
    return prod;
}

std::complex<double> fourier(const torus_measure& sigma, std::int64_t n)
{
    std::complex<double> acc = 0.0;
    for (const auto& [loc, mass] : sigma.atoms) acc += mass * e_of(-loc.times_frac(n));
    for (const auto& c : sigma.cantors) acc += c.mass * cantor_fourier(c, n);
    for (const auto& a : sigma.acs) {
        const auto m = static_cast<std::int64_t>(a.grid.size());
        // the samples stand for the band-limited density interpolating them,
        // so the transform vanishes beyond the Nyquist band; without the
        // cutoff the grid would alias into a periodic (non-continuous) comb
        if (std::llabs(n) >= (m + 1) / 2) continue;
        double total = 0;
        for (double g : a.grid) total += g;
        if (total <= 0) continue;
        std::complex<double> s = 0.0;
        for (std::int64_t j = 0; j < m; ++j) {
            if (a.grid[static_cast<std::size_t>(j)] == 0.0) continue;
            std::int64_t r = ((-n % m) * j) % m;
            if (r < 0) r += m;
            s += a.grid[static_cast<std::size_t>(j)] *
                 e_of(static_cast<double>(r) / static_cast<double>(m));
        }
        acc += a.mass * s / total;
    }
    return acc;
}

correlation_seq correlation_phi(const cyclic_set& a)
{
    const std::int64_t n = a.modulus();
    correlation_seq phi;
    phi.modulus = n;
    phi.values.resize(static_cast<std::size_t>(n));
    for (std::int64_t g = 0; g < n; ++g)
        phi.values[static_cast<std::size_t>(g)] =
            static_cast<double>(a.intersect_shift_count(g)) / static_cast<double>(n);
    return phi;
}

torus_measure herglotz_cyclic(const correlation_seq& phi)
{
    const std::int64_t n = phi.modulus;
    if (n <= 0 || static_cast<std::int64_t>(phi.values.size()) != n)
        throw precondition_error("herglotz_cyclic: bad correlation sequence");
    constexpr double kTol = 1e-9;
    if (!(phi.values[0].real() >= -kTol) || std::abs(phi.values[0].imag()) > kTol)
        throw not_positive_definite_error("herglotz_cyclic: phi(0) must be real nonnegative");
    for (std::int64_t g = 1; g < n; ++g) {
        auto diff = phi.values[static_cast<std::size_t>(g)] -
                    std::conj(phi.values[static_cast<std::size_t>(n - g)]);
        if (std::abs(diff) > 1e-7)
            throw not_positive_definite_error("herglotz_cyclic: phi(-g) != conj phi(g)");
    }
    // masses are the inverse DFT values: c_j = (1/N) sum_g phi(g) e(+ g j / N)
    std::vector<std::complex<double>> c;
    std::size_t un = static_cast<std::size_t>(n);
    if ((un & (un - 1)) == 0) {
        c = phi.values;
        fft(c, true);
    } else {
        c.assign(un, 0.0);
        for (std::size_t j = 0; j < un; ++j) {
            std::complex<double> s = 0.0;
            for (std::size_t g = 0; g < un; ++g)
                s += phi.values[g] *
                     e_of(static_cast<double>(g) * static_cast<double>(j) / static_cast<double>(n));
            c[j] = s / static_cast<double>(n);
        }
    }
    torus_measure out;
    for (std::size_t j = 0; j < un; ++j) {
        if (c[j].real() < -kTol)
            throw not_positive_definite_error("herglotz_cyclic: DFT component " +
                                              std::to_string(j) + " is negative");
        if (c[j].real() > 1e-12)
            out.atoms.emplace_back(frequency::rational(static_cast<std::int64_t>(j), n),
                                   c[j].real());
    }
    return out;
}

recurrence_search_result nice_recurrence_search(const window_set& s, const torus_measure& sigma,
                                                double eps, std::int64_t bound)
{
    if (!(eps > 0)) throw precondition_error("nice_recurrence_search: eps must be positive");
    recurrence_search_result res;
    res.best_value = -2.0 * sigma.total_mass();
    const double target = sigma.atom_zero_mass() - eps;
    bool done = false;
    s.for_each([&](std::int64_t h) {
        if (done || h < 1 || h > bound) return;
        double v = fourier(sigma, h).real();
        if (v > res.best_value) {
            res.best_value = v;
            res.best_h = h;
        }
        if (v > target) {
            res.h = h;
            done = true;
        }
    });
    return res;
}

std::complex<double> mean_of_fourier(const weighted_mean& m, const torus_measure& sigma)
{
    std::complex<double> acc = 0.0;
    for (const auto& [pt, w] : m.support())
        acc += w * fourier(sigma, pt);
    return acc;
}

// schema: {atoms:[{loc, mass}], cantor:{depth, mass, ratio}, ac:{grid:[...], mass}};
// cantor/ac accept a single object or an array; loc is "p/q", a named
// irrational, or a plain number
std::string torus_measure::to_json() const
{
    nlohmann::ordered_json j;
    j["atoms"] = nlohmann::ordered_json::array();
    for (const auto& [loc, mass] : atoms) {
        nlohmann::ordered_json e;
        if (loc.is_rational() || !loc.label().empty())
            e["loc"] = loc.display();
        else
            e["loc"] = loc.value(); // full double precision for plain reals
        e["mass"] = mass;
        j["atoms"].push_back(e);
    }
    for (const auto& c : cantors) {
        nlohmann::ordered_json e;
        e["depth"] = c.depth;
        e["mass"] = c.mass;
        e["ratio"] = std::to_string(c.ratio_num) + "/" + std::to_string(c.ratio_den);
        j["cantor"].push_back(e);
    }
    for (const auto& a : acs) {
        nlohmann::ordered_json e;
        e["grid"] = a.grid;
        e["mass"] = a.mass;
        j["ac"].push_back(e);
    }
    return j.dump();
}

torus_measure torus_measure::from_json(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    torus_measure m;
    if (j.contains("atoms")) {
        for (const auto& e : j["atoms"]) {
            frequency loc;
            const auto& l = e.at("loc");
            if (l.is_string()) loc = frequency::parse(l.get<std::string>());
            else loc = frequency::real_from_double(l.get<double>());
            m.atoms.emplace_back(loc, e.at("mass").get<double>());
        }
    }
    auto each = [](const nlohmann::json& node, const std::function<void(const nlohmann::json&)>& f) {
        if (node.is_array())
            for (const auto& e : node) f(e);
        else
            f(node);
    };
    if (j.contains("cantor")) {
        each(j["cantor"], [&](const nlohmann::json& e) {
            cantor_part c;
            c.depth = e.value("depth", 40);
            c.mass = e.value("mass", 1.0);
            if (e.contains("ratio")) {
                std::string r = e["ratio"].get<std::string>();
                auto slash = r.find('/');
                c.ratio_num = std::stoll(r.substr(0, slash));
                c.ratio_den = std::stoll(r.substr(slash + 1));
            }
            m.cantors.push_back(c);
        });
    }
    if (j.contains("ac")) {
        each(j["ac"], [&](const nlohmann::json& e) {
            ac_part a;
            a.grid = e.at("grid").get<std::vector<double>>();
            a.mass = e.value("mass", 1.0);
            m.acs.push_back(a);
        });
    }
    m.validate();
    return m;
}

} // namespace bohrlab
