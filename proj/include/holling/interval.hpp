#pragma once

// Interval numbers with endpoint-wise arithmetic and the geometric
// interval-valued function used to realize imprecise parameters.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "holling/error.hpp"

namespace holling {

/// Closed real interval [lo, hi] with lo <= hi. [c, c] stands for the real c.
class Interval {
public:
    constexpr Interval() = default;

    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi)) {
            std::ostringstream os;
            os << "interval [" << lo << ", " << hi << "] has lo > hi";
            throw Error(ErrorCode::InvalidInterval, os.str());
        }
    }

    static Interval point(double c) { return Interval(c, c); }

    constexpr double lo() const noexcept { return lo_; }
    constexpr double hi() const noexcept { return hi_; }
    constexpr bool degenerate() const noexcept { return lo_ == hi_; }
    constexpr bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
    constexpr bool contains_zero() const noexcept { return contains(0.0); }

    friend constexpr bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

/// Interval with strictly positive lower endpoint; the domain of realize().
class PositiveInterval {
public:
    explicit PositiveInterval(Interval inner) : inner_(inner) {
        if (!(inner.lo() > 0.0)) {
            std::ostringstream os;
            os << "interval [" << inner.lo() << ", " << inner.hi() << "] must have lo > 0";
            throw Error(ErrorCode::NonPositiveInterval, os.str());
        }
    }
    PositiveInterval(double lo, double hi) : PositiveInterval(Interval(lo, hi)) {}

    const Interval& inner() const noexcept { return inner_; }
    double lo() const noexcept { return inner_.lo(); }
    double hi() const noexcept { return inner_.hi(); }

private:
    Interval inner_;
};

inline Interval add(const Interval& a, const Interval& b) {
    return Interval(a.lo() + b.lo(), a.hi() + b.hi());
}

/// Endpoint-wise difference [a.lo - b.lo, a.hi - b.hi]. This is not the
/// inclusion-isotone interval difference; results with lo > hi are rejected.
inline Interval sub(const Interval& a, const Interval& b) {
    const double lo = a.lo() - b.lo();
    const double hi = a.hi() - b.hi();
    if (!(lo <= hi)) {
        std::ostringstream os;
        os << "endpoint-wise difference yields [" << lo << ", " << hi << "]";
        throw Error(ErrorCode::InvalidInterval, os.str());
    }
    return Interval(lo, hi);
}

inline Interval scalar_mul(double alpha, const Interval& a) {
    if (!(alpha > 0.0)) {
        throw Error(ErrorCode::NonPositiveScalar, "scalar must be a positive real");
    }
    return Interval(alpha * a.lo(), alpha * a.hi());
}

inline Interval mul(const Interval& a, const Interval& b) {
    const double p1 = a.lo() * b.lo();
    const double p2 = a.hi() * b.lo();
    const double p3 = a.lo() * b.hi();
    const double p4 = a.hi() * b.hi();
    return Interval(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

/// a * [1/b.hi, 1/b.lo]; the reciprocal is written in increasing order.
inline Interval div(const Interval& a, const Interval& b) {
    if (b.contains_zero()) {
        throw Error(ErrorCode::DivisionByZeroInterval, "divisor interval contains 0");
    }
    return mul(a, Interval(1.0 / b.hi(), 1.0 / b.lo()));
}

inline Interval operator+(const Interval& a, const Interval& b) { return add(a, b); }
inline Interval operator-(const Interval& a, const Interval& b) { return sub(a, b); }
inline Interval operator*(const Interval& a, const Interval& b) { return mul(a, b); }
inline Interval operator/(const Interval& a, const Interval& b) { return div(a, b); }
inline Interval operator*(double alpha, const Interval& a) { return scalar_mul(alpha, a); }

/// f(k) = lo^(1-k) * hi^k for k in [0, 1].
///
/// The endpoints are returned exactly at k = 0 and k = 1, and the result is
/// clamped into [lo, hi] so rounding in pow never leaves the interval.
inline double realize(const PositiveInterval& g, double k) {
    if (!(k >= 0.0 && k <= 1.0)) {
        std::ostringstream os;
        os << "precision level " << k << " outside [0, 1]";
        throw Error(ErrorCode::OutOfRange, os.str());
    }
    const double lo = g.lo();
    const double hi = g.hi();
    if (k == 0.0 || lo == hi) return lo;
    if (k == 1.0) return hi;
    // lo * (hi/lo)^k is monotone in k under round-to-nearest.
    const double v = lo * std::exp(k * std::log(hi / lo));
    return std::clamp(v, lo, hi);
}

inline std::string to_string(const Interval& a) {
    std::ostringstream os;
    os << '[' << a.lo() << ", " << a.hi() << ']';
    return os.str();
}

} // namespace holling
