#include "bohrlab/densities.hpp"

#include "bohrlab/errors.hpp"

#include <json.hpp>

#include <algorithm>

namespace bohrlab {

double window_density(const window_set& a)
{
    return static_cast<double>(a.cardinality()) / static_cast<double>(a.win().length());
}

double upper_density_proxy(const window_set& a, std::int64_t L)
{
    const auto len = a.win().length();
    if (L < 1 || L > len) throw bounds_error("upper_density_proxy: L out of range");
    // prefix counts, then slide
    std::vector<std::int64_t> prefix(static_cast<std::size_t>(len) + 1, 0);
    std::int64_t idx = 0;
    for (std::int64_t n = a.win().lo; n <= a.win().hi; ++n, ++idx)
        prefix[static_cast<std::size_t>(idx) + 1] =
            prefix[static_cast<std::size_t>(idx)] + (a.contains(n) ? 1 : 0);
    std::int64_t best = 0;
    for (std::int64_t start = 0; start + L <= len; ++start)
        best = std::max(best, prefix[static_cast<std::size_t>(start + L)] -
                                  prefix[static_cast<std::size_t>(start)]);
    return static_cast<double>(best) / static_cast<double>(L);
}

std::int64_t max_gap(const window_set& a)
{
    if (a.empty()) throw empty_set_error("max_gap: empty set");
    std::int64_t gap = 0;
    std::int64_t prev = a.win().lo; // distance from the window start counts
    bool first = true;
    a.for_each([&](std::int64_t n) {
        gap = std::max(gap, first ? n - a.win().lo : n - prev);
        prev = n;
        first = false;
    });
    gap = std::max(gap, a.win().hi - prev);
    return gap;
}

bool syndetic_on(const window_set& a, std::int64_t g)
{
    return max_gap(a) <= g;
}

bool piecewise_syndetic_proxy(const window_set& a, std::int64_t g, std::int64_t L)
{
    const auto& w = a.win();
    if (L < 1 || L > w.length()) throw bounds_error("piecewise_syndetic_proxy: L out of range");
    for (std::int64_t lo = w.lo; lo + L - 1 <= w.hi; ++lo) {
        window sub(lo, lo + L - 1);
        auto piece = a.restricted(sub);
        if (!piece.empty() && max_gap(piece) <= g) return true;
    }
    return false;
}

density_report make_density_report(const window_set& a, std::int64_t L)
{
    density_report r;
    r.window_density = window_density(a);
    r.upper_proxy = a.empty() ? 0.0 : upper_density_proxy(a, L);
    r.scale = L;
    r.max_gap = a.empty() ? a.win().length() : max_gap(a);
    return r;
}

std::string density_report::to_json() const
{
    nlohmann::ordered_json j;
    j["window_density"] = window_density;
    j["upper_proxy"] = upper_proxy;
    j["scale"] = scale;
    j["max_gap"] = max_gap;
    return j.dump();
}

} // namespace bohrlab
