#include "bohrlab/frequency.hpp"

#include "bohrlab/errors.hpp"

#include <cmath>
#include <numeric>

namespace bohrlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

frequency frequency::rational(std::int64_t p, std::int64_t q)
{
    if (q <= 0) throw arithmetic_error("frequency::rational: q must be positive");
    p %= q;
    if (p < 0) p += q;
    std::int64_t g = std::gcd(p, q);
    if (g > 1) { p /= g; q /= g; }
    frequency f;
    f.rational_ = true;
    f.p_ = p;
    f.q_ = q;
    return f;
}

frequency frequency::real(frac192 v, std::string label)
{
    frequency f;
    f.rational_ = false;
    f.frac_ = v;
    f.label_ = std::move(label);
    return f;
}

frequency frequency::real_from_double(double v)
{
    return real(frac192::from_double(v));
}

frequency frequency::parse(const std::string& text)
{
    if (text == "sqrt2") return real(frac192::sqrt_of(2), "sqrt2");
    if (text == "sqrt3") return real(frac192::sqrt_of(3), "sqrt3");
    if (text == "sqrt5") return real(frac192::sqrt_of(5), "sqrt5");
    if (text == "golden") return real(frac192::golden(), "golden");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            std::int64_t p = std::stoll(text.substr(0, slash));
            std::int64_t q = std::stoll(text.substr(slash + 1));
            return rational(p, q);
        }
        if (text.find('.') != std::string::npos || text.find('e') != std::string::npos) {
            return real_from_double(std::stod(text));
        }
        return rational(std::stoll(text), 1);
    } catch (const std::exception&) {
        throw config_error("cannot parse frequency '" + text + "'");
    }
}

double frequency::times_frac(std::int64_t n) const
{
    return times_frac_i128(n);
}

double frequency::times_frac_i128(__int128 n) const
{
    if (rational_) {
        __int128 r = n % q_;
        if (r < 0) r += q_;
        r = (r * (p_ % q_)) % q_;
        return static_cast<double>(static_cast<std::int64_t>(r)) / static_cast<double>(q_);
    }
    return frac_.mul_i128(n).to_double();
}

frac192 frequency::times_frac192(__int128 n) const
{
    if (rational_) {
        __int128 r = n % q_;
        if (r < 0) r += q_;
        r = (r * (p_ % q_)) % q_;
        return frac192::from_rational(static_cast<std::int64_t>(r), q_);
    }
    return frac_.mul_i128(n);
}

double frequency::torus_norm(std::int64_t n) const
{
    double t = times_frac(n);
    return t <= 0.5 ? t : 1.0 - t;
}

double frequency::char_dist(std::int64_t n) const
{
    return char_dist_from_norm(torus_norm(n));
}

std::complex<double> frequency::character(std::int64_t n, int sign) const
{
    double t = times_frac(n);
    double ang = 2.0 * kPi * t * sign;
    return {std::cos(ang), std::sin(ang)};
}

double frequency::value() const
{
    if (rational_) return static_cast<double>(p_) / static_cast<double>(q_);
    return frac_.to_double();
}

std::string frequency::display() const
{
    if (!label_.empty()) return label_;
    if (rational_) return std::to_string(p_) + "/" + std::to_string(q_);
    return std::to_string(value());
}

bool frequency::operator==(const frequency& o) const
{
    if (rational_ != o.rational_) return false;
    if (rational_) return p_ == o.p_ && q_ == o.q_;
    return frac_ == o.frac_;
}

} // namespace bohrlab
