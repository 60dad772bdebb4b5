#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "hardykit/errors.hpp"

namespace hardykit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open interval (a,b) with possibly infinite endpoints, a in [-inf,inf), b in (-inf,inf].
struct Interval {
    double a = 0.0;
    double b = kInf;

    Interval() = default;
    Interval(double lo, double hi) : a(lo), b(hi) {
        if (!(a < b))
            throw ConfigInvalid("interval requires a < b, got [" + std::to_string(a) + ", " +
                                std::to_string(b) + "]");
        if (std::isnan(a) || std::isnan(b) || a == kInf || b == -kInf)
            throw ConfigInvalid("interval endpoints must satisfy a in [-inf,inf), b in (-inf,inf]");
    }

    bool lower_infinite() const { return std::isinf(a); }
    bool upper_infinite() const { return std::isinf(b); }
    bool bounded() const { return !lower_infinite() && !upper_infinite(); }

    /// Strict interior membership.
    bool contains(double x) const { return x > a && x < b; }

    /// Whether [lo,hi] (as an open interval) fits inside this one.
    bool covers(const Interval& sub) const { return sub.a >= a && sub.b <= b; }

    /// Midpoint-ish interior anchor usable even with infinite endpoints.
    double interior_point() const {
        if (bounded()) return 0.5 * (a + b);
        if (!lower_infinite()) return a + 1.0;
        if (!upper_infinite()) return b - 1.0;
        return 0.0;
    }
};

inline Interval intersect(const Interval& u, const Interval& v) {
    double lo = std::max(u.a, v.a);
    double hi = std::min(u.b, v.b);
    if (!(lo < hi)) throw ConfigInvalid("empty interval intersection");
    return {lo, hi};
}

}  // namespace hardykit
