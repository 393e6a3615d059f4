#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace zonoset {

/// Closed real interval [lo, hi]. Arithmetic is plain double arithmetic
/// without directed rounding.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    constexpr Interval() = default;
    constexpr explicit Interval(double v) : lo(v), hi(v) {}
    constexpr Interval(double l, double h) : lo(l), hi(h) {}

    static Interval checked(double l, double h) {
        if (!(l <= h)) throw std::invalid_argument("Interval: lower bound exceeds upper bound");
        return {l, h};
    }

    constexpr double width() const { return hi - lo; }
    constexpr double mid() const { return 0.5 * (lo + hi); }
    constexpr double rad() const { return 0.5 * (hi - lo); }
    constexpr double mag() const { return std::max(std::abs(lo), std::abs(hi)); }
    constexpr bool contains(double x) const { return lo <= x && x <= hi; }
    constexpr bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    constexpr bool is_point() const { return lo == hi; }

    friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

inline Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
inline Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
    // [0,0] times anything finite stays exactly [0,0]
    if ((a.lo == 0.0 && a.hi == 0.0) || (b.lo == 0.0 && b.hi == 0.0)) return {0.0, 0.0};
    const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

inline Interval operator*(double k, const Interval& a) {
    return k >= 0 ? Interval{k * a.lo, k * a.hi} : Interval{k * a.hi, k * a.lo};
}

inline Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

/// Intersection of two intervals known to overlap.
inline Interval intersect(const Interval& a, const Interval& b) {
    const double l = std::max(a.lo, b.lo), h = std::min(a.hi, b.hi);
    if (l > h) throw std::domain_error("Interval: empty intersection");
    return {l, h};
}

inline Interval pow(const Interval& a, unsigned k) {
    if (k == 0) return {1.0, 1.0};
    const double l = std::pow(a.lo, static_cast<double>(k));
    const double h = std::pow(a.hi, static_cast<double>(k));
    if (k % 2 == 1) return {l, h};
    if (a.lo >= 0) return {l, h};
    if (a.hi <= 0) return {h, l};
    return {0.0, std::max(l, h)};
}

namespace detail {

// true iff some point x0 + 2*pi*j lies in [lo, hi]
inline bool contains_periodic(double lo, double hi, double x0) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double j = std::ceil((lo - x0) / two_pi);
    return x0 + j * two_pi <= hi;
}

}  // namespace detail

/// Exact range of sin over the interval via critical-point analysis.
inline Interval sin(const Interval& a) {
    constexpr double pi = std::numbers::pi;
    if (a.width() >= 2.0 * pi) return {-1.0, 1.0};
    const double sl = std::sin(a.lo), sh = std::sin(a.hi);
    double lo = std::min(sl, sh), hi = std::max(sl, sh);
    if (detail::contains_periodic(a.lo, a.hi, 0.5 * pi)) hi = 1.0;
    if (detail::contains_periodic(a.lo, a.hi, -0.5 * pi)) lo = -1.0;
    return {lo, hi};
}

inline Interval cos(const Interval& a) {
    constexpr double pi = std::numbers::pi;
    if (a.width() >= 2.0 * pi) return {-1.0, 1.0};
    const double cl = std::cos(a.lo), ch = std::cos(a.hi);
    double lo = std::min(cl, ch), hi = std::max(cl, ch);
    if (detail::contains_periodic(a.lo, a.hi, 0.0)) hi = 1.0;
    if (detail::contains_periodic(a.lo, a.hi, pi)) lo = -1.0;
    return {lo, hi};
}

inline Interval exp(const Interval& a) { return {std::exp(a.lo), std::exp(a.hi)}; }

/// Widens both bounds by rel * max(|lo|, |hi|).
inline Interval inflate(const Interval& a, double rel) {
    const double pad = rel * a.mag();
    return {a.lo - pad, a.hi + pad};
}

inline std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << '[' << a.lo << ", " << a.hi << ']';
}

}  // namespace zonoset
