#ifndef BOHRLAB_DENSITIES_HPP
#define BOHRLAB_DENSITIES_HPP

#include "bohrlab/window_set.hpp"

#include <cstdint>
#include <string>

namespace bohrlab {

// Finite proxies for upper Banach density and syndeticity.  The window
// density is what we can see; the sliding-window maximum at scale L is the
// standard finitary surrogate for d*.  Every report carries its scale so
// no value overclaims.
struct density_report {
    double window_density = 0.0;
    double upper_proxy = 0.0;
    std::int64_t scale = 0;
    std::int64_t max_gap = 0;

    std::string to_json() const;
};

double window_density(const window_set& a);

// max over length-L subwindows I of |A ∩ I| / L; always >= window_density
double upper_density_proxy(const window_set& a, std::int64_t L);

// largest difference between consecutive members, including the distances
// from the window ends to the first and last member
std::int64_t max_gap(const window_set& a);

bool syndetic_on(const window_set& a, std::int64_t g);

// true iff some length-L subwindow of A is syndetic with gap bound g
bool piecewise_syndetic_proxy(const window_set& a, std::int64_t g, std::int64_t L);

density_report make_density_report(const window_set& a, std::int64_t L);

} // namespace bohrlab

#endif
