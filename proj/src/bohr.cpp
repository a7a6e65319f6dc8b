#include "bohrlab/bohr.hpp"

#include "bohrlab/densities.hpp"
#include "bohrlab/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace bohrlab {

bool bohr_member(std::int64_t n, const bohr_spec& spec)
{
    for (const auto& f : spec.freqs)
        if (!(f.char_dist(n) < spec.eta)) return false;
    return true;
}

window_set enumerate_bohr(const bohr_spec& spec, window w)
{
    window_set out(w);
    if (spec.freqs.empty()) return window_set::full(w);

    // rational frequencies: decide once per residue class
    struct rat_table {
        std::int64_t q;
        std::vector<char> ok;
    };
    std::vector<rat_table> tables;
    std::vector<const frequency*> reals;
    for (const auto& f : spec.freqs) {
        if (f.is_rational()) {
            rat_table t;
            t.q = f.den();
            t.ok.resize(static_cast<std::size_t>(t.q));
            for (std::int64_t r = 0; r < t.q; ++r)
                t.ok[static_cast<std::size_t>(r)] = f.char_dist(r) < spec.eta;
            tables.push_back(std::move(t));
        } else {
            reals.push_back(&f);
        }
    }
    // real frequencies walk the window with exact fixed-point increments
    std::vector<frac192> cur, step;
    for (auto* f : reals) {
        cur.push_back(f->times_frac192(w.lo));
        step.push_back(f->frac());
    }
    for (std::int64_t n = w.lo; n <= w.hi; ++n) {
        bool in = true;
        for (const auto& t : tables) {
            std::int64_t r = n % t.q;
            if (r < 0) r += t.q;
            if (!t.ok[static_cast<std::size_t>(r)]) { in = false; break; }
        }
        if (in) {
            for (std::size_t i = 0; i < cur.size(); ++i) {
                if (!(char_dist_from_norm(cur[i].torus_norm()) < spec.eta)) { in = false; break; }
            }
        }
        if (in) out.insert(n);
        for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = cur[i].add(step[i]);
    }
    return out;
}

radius_result max_radius_inside(const std::vector<frequency>& freqs, const window_set& x)
{
    if (!x.contains(0))
        throw precondition_error("max_radius_inside: 0 not in X, no Bohr set is possible");
    radius_result res;
    double min_val = 3.0; // above the max possible |e(x)-1|
    const window w = x.win();
    // same walking scheme as enumerate_bohr
    std::vector<const frequency*> rats, reals;
    for (const auto& f : freqs)
        (f.is_rational() ? rats : reals).push_back(&f);
    std::vector<frac192> cur, step;
    for (auto* f : reals) {
        cur.push_back(f->times_frac192(w.lo));
        step.push_back(f->frac());
    }
    for (std::int64_t n = w.lo; n <= w.hi; ++n) {
        if (!x.contains(n)) {
            double m = 0.0;
            for (auto* f : rats) m = std::max(m, f->char_dist(n));
            for (auto& c : cur) m = std::max(m, char_dist_from_norm(c.torus_norm()));
            if (m < min_val) {
                min_val = m;
                res.witness = n;
            }
        }
        for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = cur[i].add(step[i]);
    }
    res.attained = min_val <= 2.0;
    res.eta = std::min(min_val, 2.0);
    return res;
}

std::complex<double> trig_poly::eval(std::int64_t n) const
{
    std::complex<double> acc = 0.0;
    for (const auto& [c, f] : terms) acc += c * f.character(n);
    return acc;
}

bohr_spec bohr_from_trigpoly(const trig_poly& p)
{
    std::complex<double> p0 = p.eval(0);
    if (!(p0.real() > 0.0))
        throw precondition_error("bohr_from_trigpoly: Re p(0) must be positive");

    double max_c = 0.0;
    std::vector<frequency> freqs;
    for (const auto& [c, f] : p.terms) {
        max_c = std::max(max_c, std::abs(c));
        bool trivial = f.is_rational() && f.num() == 0;
        if (trivial) continue;
        if (std::find(freqs.begin(), freqs.end(), f) == freqs.end()) freqs.push_back(f);
    }
    const double d = static_cast<double>(freqs.size());
    const double big_m = 1.0 + max_c;
    // Radius from the proof recipe, run on Re p (which fixes p(0) real): the
    // frequency list is unchanged because |e(-x)-1| = |e(x)-1|.
    const double eta = p0.real() / (1.0 + 2.0 * d * big_m);
    return bohr_spec{std::move(freqs), eta};
}

// --- Bohr-Hamming -------------------------------------------------------------

void bohr_hamming_spec::validate() const
{
    if (alpha.empty()) throw precondition_error("bohr_hamming_spec: empty frequency vector");
    if (k < 0 || static_cast<std::size_t>(k) >= alpha.size())
        throw precondition_error("bohr_hamming_spec: need 0 <= k < dim");
    if (!(eps > 0.0) || !(eps < 0.5))
        throw precondition_error("bohr_hamming_spec: eps must lie in (0, 1/2)");
}

std::int64_t bh_weight(std::int64_t n, const bohr_hamming_spec& spec)
{
    std::int64_t w = 0;
    for (const auto& f : spec.alpha)
        if (f.torus_norm(n) >= spec.eps) ++w;
    return w;
}

bool bh_member(std::int64_t n, const bohr_hamming_spec& spec)
{
    return bh_weight(n, spec) <= spec.k;
}

window_set enumerate_bh(const bohr_hamming_spec& spec, window w)
{
    spec.validate();
    window_set out(w);
    std::vector<frac192> cur, step;
    for (const auto& f : spec.alpha) {
        cur.push_back(f.times_frac192(w.lo));
        step.push_back(f.is_rational() ? frac192::from_rational(f.num(), f.den()) : f.frac());
    }
    for (std::int64_t n = w.lo; n <= w.hi; ++n) {
        std::int64_t cnt = 0;
        for (auto& c : cur)
            if (c.torus_norm() >= spec.eps) ++cnt;
        if (cnt <= spec.k) out.insert(n);
        for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = cur[i].add(step[i]);
    }
    return out;
}

// --- probes --------------------------------------------------------------------

k_bohr_dense_report k_bohr_dense_probe(const window_set& x, std::size_t rank,
                                       std::int64_t trials, std::uint64_t seed,
                                       std::int64_t center_bound)
{
    if (trials < 1) throw precondition_error("k_bohr_dense_probe: trials must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> uc(-center_bound, center_bound);
    static const double eta_grid[] = {0.2, 0.35, 0.5};

    k_bohr_dense_report rep;
    rep.trials = trials;
    auto mem = x.members();
    for (std::int64_t t = 0; t < trials; ++t) {
        bohr_spec spec;
        spec.eta = eta_grid[static_cast<std::size_t>(t) % 3];
        for (std::size_t j = 0; j < rank; ++j)
            spec.freqs.push_back(frequency::real_from_double(ur(rng)));
        std::int64_t m = uc(rng);
        bool hit = false;
        for (auto v : mem) {
            if (bohr_member(v - m, spec)) { hit = true; break; }
        }
        if (hit) ++rep.hits;
        else rep.missed_centers.push_back(m);
    }
    rep.fraction = static_cast<double>(rep.hits) / static_cast<double>(trials);
    return rep;
}

bool is_nonrecurrence_witness(const window_set& a, const window_set& s, double delta,
                              std::int64_t L)
{
    if (a.empty()) return false;
    if (!(upper_density_proxy(a, L) > delta)) return false;
    auto d = difference_set(a);
    bool disjoint = true;
    s.for_each([&](std::int64_t n) {
        if (d.contains(n)) disjoint = false;
    });
    return disjoint;
}

std::optional<window_set> nonrecurrence_witness_search(const window_set& s, double delta,
                                                       std::int64_t L, window domain,
                                                       std::int64_t q_max)
{
    // congruence-class candidates: A = { n : n ≡ r (mod q) }
    for (std::int64_t q = 2; q <= q_max; ++q) {
        if (1.0 / static_cast<double>(q) <= delta) break; // density too small from here on
        // A - A = qZ; need S to miss all multiples of q
        bool ok = true;
        s.for_each([&](std::int64_t n) {
            if (n % q == 0) ok = false;
        });
        if (!ok) continue;
        window_set a = window_set::from_predicate(
            domain, [&](std::int64_t n) { return ((n % q) + q) % q == 0; });
        if (is_nonrecurrence_witness(a, s, delta, L)) return a;
    }
    // Bohr-set candidates: A = B(alpha; eta) has A - A inside B(alpha; 2 eta),
    // which dodges S when S sits at far phases
    static const char* irrationals[] = {"sqrt2", "sqrt3", "golden"};
    for (const char* name : irrationals) {
        for (double eta : {0.3, 0.6, 1.0}) {
            bohr_spec spec{{frequency::parse(name)}, eta};
            auto a = enumerate_bohr(spec, domain);
            if (a.empty()) continue;
            if (is_nonrecurrence_witness(a, s, delta, L)) return a;
        }
    }
    return std::nullopt;
}

// --- serialization --------------------------------------------------------------

std::string bohr_spec::to_json() const
{
    nlohmann::ordered_json j;
    j["freqs"] = nlohmann::ordered_json::array();
    for (const auto& f : freqs) {
        nlohmann::ordered_json e;
        if (f.is_rational()) {
            e["p"] = f.num();
            e["q"] = f.den();
        } else {
            e["real"] = f.value();
            if (!f.label().empty()) e["label"] = f.label();
        }
        j["freqs"].push_back(e);
    }
    j["eta"] = eta;
    return j.dump();
}

bohr_spec bohr_spec::from_json(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    bohr_spec spec;
    spec.eta = j.at("eta").get<double>();
    for (const auto& e : j.at("freqs")) {
        if (e.contains("p")) {
            spec.freqs.push_back(frequency::rational(e.at("p").get<std::int64_t>(),
                                                     e.at("q").get<std::int64_t>()));
        } else if (e.contains("label")) {
            spec.freqs.push_back(frequency::parse(e.at("label").get<std::string>()));
        } else {
            spec.freqs.push_back(frequency::real_from_double(e.at("real").get<double>()));
        }
    }
    return spec;
}

} // namespace bohrlab
