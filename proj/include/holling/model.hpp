#pragma once

// One-predator two-prey Holling II model with interval parameters and
// compound-Poisson multiplicative jumps.

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "holling/error.hpp"
#include "holling/interval.hpp"

namespace holling {

/// Species index: two prey and one predator.
enum Species : std::size_t { Prey1 = 0, Prey2 = 1, Predator = 2 };

inline constexpr std::size_t kSpecies = 3;

inline const char* species_name(std::size_t s) {
    switch (s) {
    case Prey1: return "x1";
    case Prey2: return "x2";
    case Predator: return "y";
    }
    return "?";
}

using Vec3 = std::array<double, kSpecies>;
using Mat3 = std::array<Vec3, kSpecies>;

/// One mark of the atomic jump measure: its rate and the relative jump size
/// applied to each species (state -> state * (1 + c)).
struct JumpAtom {
    double weight = 0.0;
    Vec3 c{};
};

/// Finite atomic characteristic measure of the Poisson random measure.
class JumpMeasure {
public:
    JumpMeasure() = default;

    JumpMeasure(std::initializer_list<JumpAtom> atoms)
        : JumpMeasure(std::vector<JumpAtom>(atoms)) {}

    explicit JumpMeasure(std::vector<JumpAtom> atoms) : atoms_(std::move(atoms)) {
        for (std::size_t k = 0; k < atoms_.size(); ++k) {
            const auto& atom = atoms_[k];
            if (!(atom.weight > 0.0) || !std::isfinite(atom.weight)) {
                std::ostringstream os;
                os << "jump atom " << k << " weight must be finite and > 0";
                throw Error(ErrorCode::InvalidJumpMeasure, os.str());
            }
            for (std::size_t i = 0; i < kSpecies; ++i) {
                if (!(atom.c[i] > -1.0) || !std::isfinite(atom.c[i])) {
                    std::ostringstream os;
                    os << "jump atom " << k << " size c" << i + 1 << " = " << atom.c[i]
                       << " violates c > -1";
                    throw Error(ErrorCode::InvalidJumpMeasure, os.str());
                }
            }
        }
    }

    const std::vector<JumpAtom>& atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    bool empty() const noexcept { return atoms_.empty(); }

    /// Total mass of the measure; the rate of the jump process.
    double total_rate() const noexcept {
        double sum = 0.0;
        for (const auto& atom : atoms_) sum += atom.weight;
        return sum;
    }

    /// Integral of ln(1 + c_i(u)) against the measure.
    double log_jump_integral(std::size_t species) const noexcept {
        double sum = 0.0;
        for (const auto& atom : atoms_) sum += atom.weight * std::log1p(atom.c[species]);
        return sum;
    }

    /// Integrability conditions on |c| v |c|^2 and |ln(1+c)| v |ln(1+c)|^2.
    /// Always finite for a validated atomic measure.
    bool integrable() const noexcept {
        double h1 = 0.0;
        double h2 = 0.0;
        for (const auto& atom : atoms_) {
            for (double c : atom.c) {
                const double l = std::log1p(c);
                h1 += atom.weight * std::max(std::abs(c), c * c);
                h2 += atom.weight * std::max(std::abs(l), l * l);
            }
        }
        return std::isfinite(h1) && std::isfinite(h2);
    }

private:
    std::vector<JumpAtom> atoms_;
};

/// Coefficient intervals must have lo > 0, except that the exact zero [0, 0]
/// is admitted where allow_zero is set (noise intensities and interactions).
inline void validate_coefficient(const Interval& g, bool allow_zero, const std::string& name) {
    if (g.lo() > 0.0 && std::isfinite(g.hi())) return;
    if (allow_zero && g.lo() == 0.0 && g.hi() == 0.0) return;
    std::ostringstream os;
    os << name << " = " << to_string(g) << " must have lo > 0"
       << (allow_zero ? " or be exactly [0, 0]" : "");
    throw Error(ErrorCode::NonPositiveInterval, os.str());
}

/// realize() extended to the admitted zero interval.
inline double realize_coefficient(const Interval& g, double p) {
    if (g.lo() == 0.0 && g.hi() == 0.0) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw Error(ErrorCode::OutOfRange, "precision level outside [0, 1]");
        }
        return 0.0;
    }
    return realize(PositiveInterval(g), p);
}

/// Model with interval-valued growth rates, interactions and noise intensities.
struct ImpreciseModel {
    std::array<Interval, kSpecies> r_hat;
    std::array<std::array<Interval, kSpecies>, kSpecies> a_hat;
    std::array<Interval, kSpecies> sigma_hat;
    JumpMeasure jumps;

    void validate() const {
        for (std::size_t i = 0; i < kSpecies; ++i) {
            validate_coefficient(r_hat[i], false, "r" + std::to_string(i + 1));
            validate_coefficient(sigma_hat[i], true, "sigma" + std::to_string(i + 1));
            for (std::size_t j = 0; j < kSpecies; ++j) {
                validate_coefficient(a_hat[i][j], true,
                                     "a" + std::to_string(i + 1) + std::to_string(j + 1));
            }
        }
    }
};

/// Threshold coefficients: growth rate minus Ito correction plus the
/// log-jump integral. The predator uses -r3.
struct BCoefficients {
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;

    double operator[](std::size_t i) const noexcept { return i == 0 ? b1 : (i == 1 ? b2 : b3); }
};

/// Point-valued model at a fixed precision level p.
class CrispModel {
public:
    CrispModel(double p, const Vec3& r, const Mat3& a, const Vec3& sigma, JumpMeasure jumps)
        : p_(p), r_(r), a_(a), sigma_(sigma), jumps_(std::move(jumps)) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw Error(ErrorCode::OutOfRange, "precision level outside [0, 1]");
        }
        for (std::size_t i = 0; i < kSpecies; ++i) {
            if (!(r_[i] > 0.0) || !std::isfinite(r_[i])) {
                throw Error(ErrorCode::NonPositiveInterval, "rates r_i must be > 0");
            }
            if (!(sigma_[i] >= 0.0) || !std::isfinite(sigma_[i])) {
                throw Error(ErrorCode::NonPositiveInterval, "noise intensities must be >= 0");
            }
            for (std::size_t j = 0; j < kSpecies; ++j) {
                if (!(a_[i][j] >= 0.0) || !std::isfinite(a_[i][j])) {
                    throw Error(ErrorCode::NonPositiveInterval, "interactions must be >= 0");
                }
            }
            compensator_[i] = jumps_.log_jump_integral(i);
        }
        b_.b1 = r_[0] - 0.5 * sigma_[0] * sigma_[0] + compensator_[0];
        b_.b2 = r_[1] - 0.5 * sigma_[1] * sigma_[1] + compensator_[1];
        b_.b3 = -r_[2] - 0.5 * sigma_[2] * sigma_[2] + compensator_[2];
    }

    double p() const noexcept { return p_; }
    double r(std::size_t i) const noexcept { return r_[i]; }
    double a(std::size_t i, std::size_t j) const noexcept { return a_[i][j]; }
    double sigma(std::size_t i) const noexcept { return sigma_[i]; }
    const Vec3& r() const noexcept { return r_; }
    const Mat3& a() const noexcept { return a_; }
    const Vec3& sigma() const noexcept { return sigma_; }
    const JumpMeasure& jumps() const noexcept { return jumps_; }
    const BCoefficients& b() const noexcept { return b_; }

    /// Compensator of the log-jump integral, sum_k w_k ln(1 + c_i[k]).
    double log_jump_compensator(std::size_t i) const noexcept { return compensator_[i]; }

private:
    double p_;
    Vec3 r_;
    Mat3 a_;
    Vec3 sigma_;
    JumpMeasure jumps_;
    Vec3 compensator_{};
    BCoefficients b_;
};

/// Positive population sizes (x1, x2, y).
struct StateVector {
    double x1 = 1.0;
    double x2 = 1.0;
    double y = 1.0;

    double operator[](std::size_t i) const noexcept { return i == 0 ? x1 : (i == 1 ? x2 : y); }
    Vec3 as_array() const noexcept { return {x1, x2, y}; }

    void validate() const {
        for (std::size_t i = 0; i < kSpecies; ++i) {
            const double v = (*this)[i];
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw Error(ErrorCode::InvalidState,
                            std::string("state component ") + species_name(i) + " must be > 0");
            }
        }
    }
};

inline CrispModel realize_model(const ImpreciseModel& m, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << "precision level " << p << " outside [0, 1]";
        throw Error(ErrorCode::OutOfRange, os.str());
    }
    m.validate();
    Vec3 r{};
    Vec3 sigma{};
    Mat3 a{};
    for (std::size_t i = 0; i < kSpecies; ++i) {
        r[i] = realize_coefficient(m.r_hat[i], p);
        sigma[i] = realize_coefficient(m.sigma_hat[i], p);
        for (std::size_t j = 0; j < kSpecies; ++j) a[i][j] = realize_coefficient(m.a_hat[i][j], p);
    }
    return CrispModel(p, r, a, sigma, m.jumps);
}

inline BCoefficients b_coefficients(const CrispModel& m) { return m.b(); }

/// Drift of (x1, x2, y) with Holling II predation.
inline Vec3 drift(const CrispModel& m, const Vec3& s) {
    const double x1 = s[0];
    const double x2 = s[1];
    const double y = s[2];
    const double h1 = 1.0 + x1;
    const double h2 = 1.0 + x2;
    return {
        x1 * (m.r(0) - m.a(0, 0) * x1 - m.a(0, 1) * x2 - m.a(0, 2) * y / h1),
        x2 * (m.r(1) - m.a(1, 0) * x1 - m.a(1, 1) * x2 - m.a(1, 2) * y / h2),
        y * (-m.r(2) - m.a(2, 2) * y + m.a(2, 0) * x1 / h1 + m.a(2, 1) * x2 / h2),
    };
}

inline Vec3 drift(const CrispModel& m, const StateVector& s) { return drift(m, s.as_array()); }

/// Drift of (ln x1, ln x2, ln y) when jumps enter through the compensated
/// measure: b_i replaces the growth rate.
inline Vec3 log_drift(const CrispModel& m, const Vec3& s) {
    const double x1 = s[0];
    const double x2 = s[1];
    const double y = s[2];
    const double h1 = 1.0 + x1;
    const double h2 = 1.0 + x2;
    const auto& b = m.b();
    return {
        b.b1 - m.a(0, 0) * x1 - m.a(0, 1) * x2 - m.a(0, 2) * y / h1,
        b.b2 - m.a(1, 0) * x1 - m.a(1, 1) * x2 - m.a(1, 2) * y / h2,
        b.b3 - m.a(2, 2) * y + m.a(2, 0) * x1 / h1 + m.a(2, 1) * x2 / h2,
    };
}

inline Vec3 log_drift(const CrispModel& m, const StateVector& s) {
    return log_drift(m, s.as_array());
}

} // namespace holling
