#pragma once

// Long-run predictions (extinction rates, time-average limits and bounds)
// and their Monte Carlo estimators.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "holling/engine.hpp"
#include "holling/error.hpp"
#include "holling/interval.hpp"
#include "holling/model.hpp"
#include "holling/stats.hpp"

namespace holling {

enum class RegimeKind { AllExtinct, PreyOnePersists, AllPersistent, Indeterminate };

inline const char* to_string(RegimeKind k) {
    switch (k) {
    case RegimeKind::AllExtinct: return "AllExtinct";
    case RegimeKind::PreyOnePersists: return "PreyOnePersists";
    case RegimeKind::AllPersistent: return "AllPersistent";
    case RegimeKind::Indeterminate: return "Indeterminate";
    }
    return "?";
}

/// Predicted long-run behaviour. `bounds[i]` brackets lim inf / lim sup of
/// the time average of species i (a point interval for an exact limit);
/// `rates[i]` is an upper bound on lim sup ln(x_i)/t for an extinct species.
struct RegimeVerdict {
    RegimeKind kind = RegimeKind::Indeterminate;
    std::array<std::optional<Interval>, kSpecies> bounds{};
    std::array<std::optional<double>, kSpecies> rates{};

    bool extinct(std::size_t i) const noexcept { return rates[i].has_value(); }
};

/// Upper bound on the predator average, (b3 + a31 + a32) / a33, numerator only.
inline double predator_upper_numerator(const BCoefficients& b, const CrispModel& m) {
    return b.b3 + m.a(2, 0) + m.a(2, 1);
}

inline RegimeVerdict classify_regime(const BCoefficients& b, const CrispModel& m) {
    RegimeVerdict v;
    // Extinction follows from b_i < 0 (the signs used in the derivation of
    // lim sup ln x_i / t <= b_i).
    if (b.b1 < 0.0 && b.b2 < 0.0 && b.b3 < 0.0) {
        v.kind = RegimeKind::AllExtinct;
        v.rates = {b.b1, b.b2, b.b3};
        return v;
    }
    const double a11 = m.a(0, 0);
    const double a22 = m.a(1, 1);
    const double a33 = m.a(2, 2);
    if (b.b1 > 0.0 && b.b2 < 0.0 && b.b3 + m.a(2, 0) < 0.0 && a11 > 0.0) {
        v.kind = RegimeKind::PreyOnePersists;
        v.bounds[Prey1] = Interval::point(b.b1 / a11);
        v.rates[Prey2] = b.b2;
        v.rates[Predator] = b.b3 + m.a(2, 0);
        return v;
    }
    if (b.b3 > 0.0 && a11 > 0.0 && a22 > 0.0 && a33 > 0.0) {
        const double y_hi = predator_upper_numerator(b, m) / a33;
        const double need1 = m.a(0, 1) * b.b2 / a22 + m.a(0, 2) * y_hi;
        const double need2 = m.a(1, 0) * b.b1 / a11 + m.a(1, 2) * y_hi;
        if (b.b1 > std::max(0.0, need1) && b.b2 > std::max(0.0, need2)) {
            v.kind = RegimeKind::AllPersistent;
            v.bounds[Prey1] = Interval((b.b1 - need1) / a11, b.b1 / a11);
            v.bounds[Prey2] = Interval((b.b2 - need2) / a22, b.b2 / a22);
            v.bounds[Predator] = Interval(b.b3 / a33, y_hi);
            return v;
        }
    }
    return v;
}

/// Limit of the time average of a logistic jump-diffusion,
/// (rate - sigma^2/2 + sum w ln(1+c)) / self_interaction.
inline double logistic_time_average(double rate, double self_interaction, double sigma,
                                    const std::vector<ScalarJump>& jumps) {
    if (!(self_interaction > 0.0)) {
        throw Error(ErrorCode::HypothesisViolated, "self-interaction must be > 0");
    }
    double b = rate - 0.5 * sigma * sigma;
    for (const auto& j : jumps) b += j.weight * std::log1p(j.c);
    if (b < 0.0) {
        std::ostringstream os;
        os << "threshold " << b << " < 0; the process goes extinct";
        throw Error(ErrorCode::HypothesisViolated, os.str());
    }
    return b / self_interaction;
}

inline double logistic_time_average(const ComparisonSpec& spec) {
    return logistic_time_average(spec.rate, spec.self_interaction, spec.sigma, spec.jumps);
}

struct TimeWindow {
    double start = 0.0;
    double end = 0.0;
};

/// Window [T (1 - tail_fraction), T] of a path ending at T.
inline TimeWindow tail_window(double horizon, double tail_fraction) {
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "tail fraction must lie in (0, 1]");
    }
    return {horizon * (1.0 - tail_fraction), horizon};
}

struct TimeAverageEstimate {
    std::size_t species = 0;
    TimeWindow window;
    double value = 0.0;
    double std_error = 0.0;
};

/// Left-endpoint Riemann average of component i over the window.
template <std::size_t N>
double time_average(const BasicTrajectory<N>& traj, std::size_t i, TimeWindow w) {
    const double eps = 1e-9 * std::max(1.0, std::abs(w.end));
    if (!(w.start < w.end) || traj.size() < 2) {
        throw Error(ErrorCode::EmptyWindow, "time-average window is empty");
    }
    std::vector<double> terms;
    double length = 0.0;
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        const double t0 = traj.times[k];
        const double t1 = traj.times[k + 1];
        if (t0 + eps < w.start || t1 > w.end + eps) continue;
        terms.push_back(traj.state(k, i) * (t1 - t0));
        length += t1 - t0;
    }
    if (terms.empty()) throw Error(ErrorCode::EmptyWindow, "no recorded segment in window");
    return stats::pairwise_sum(terms) / length;
}

template <std::size_t N>
TimeAverageEstimate estimate_time_average(const BasicTrajectory<N>& traj, std::size_t i,
                                          TimeWindow w) {
    return {i, w, time_average(traj, i, w), 0.0};
}

/// Cross-path mean of per-path time averages with its standard error.
template <std::size_t N>
TimeAverageEstimate estimate_time_average(const std::vector<BasicTrajectory<N>>& ensemble,
                                          std::size_t i, TimeWindow w) {
    if (ensemble.empty()) throw Error(ErrorCode::EmptyWindow, "empty ensemble");
    std::vector<double> per_path;
    per_path.reserve(ensemble.size());
    for (const auto& traj : ensemble) per_path.push_back(time_average(traj, i, w));
    const auto est = stats::mean_estimate(per_path);
    return {i, w, est.mean, est.std_error};
}

/// Least-squares slope of ln(state_i) against t over the trailing
/// fraction of the path.
template <std::size_t N>
double estimate_log_slope(const BasicTrajectory<N>& traj, std::size_t i, double tail_fraction) {
    const TimeWindow w = tail_window(traj.final_time(), tail_fraction);
    const double eps = 1e-9 * std::max(1.0, w.end);
    std::vector<double> t;
    std::vector<double> u;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (traj.times[k] + eps < w.start) continue;
        t.push_back(traj.times[k]);
        u.push_back(traj.log_states[k][i]);
    }
    if (t.size() < 2) throw Error(ErrorCode::EmptyWindow, "fewer than two points in tail");
    return stats::ols_slope(t, u);
}

template <std::size_t N>
stats::MeanEstimate estimate_log_slope(const std::vector<BasicTrajectory<N>>& ensemble,
                                       std::size_t i, double tail_fraction) {
    std::vector<double> slopes;
    slopes.reserve(ensemble.size());
    for (const auto& traj : ensemble) slopes.push_back(estimate_log_slope(traj, i, tail_fraction));
    return stats::mean_estimate(slopes);
}

/// Fraction of paths whose final value of component i is below threshold.
template <std::size_t N>
double terminal_fraction_below(const std::vector<BasicTrajectory<N>>& ensemble, std::size_t i,
                               double threshold) {
    std::size_t count = 0;
    for (const auto& traj : ensemble) {
        if (traj.state(traj.size() - 1, i) < threshold) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(ensemble.size());
}

struct MomentReport {
    double k = 1.0;
    std::vector<double> times;
    /// Ensemble mean of x1^k + x2^k + y^k at each recorded time.
    std::vector<double> moments;
    double window_max = 0.0;
    double window_median = 0.0;
    /// Least-squares trend of the moment over the second half of the horizon.
    double window_trend = 0.0;
    bool plateau = false;
    bool nonincreasing = false;

    bool pass() const noexcept { return plateau || nonincreasing; }
};

/// Empirical check that E[x1^k + x2^k + y^k] stays bounded: over [T/2, T] its
/// maximum is within twice its median (a plateau) or its trend is flat or
/// decreasing.
inline MomentReport check_moment_bound(const std::vector<Trajectory>& ensemble, double k) {
    if (!(k > 0.0)) throw Error(ErrorCode::OutOfRange, "moment order must be > 0");
    if (ensemble.empty()) throw Error(ErrorCode::EmptyWindow, "empty ensemble");
    MomentReport rep;
    rep.k = k;
    const auto& grid = ensemble.front().times;
    rep.times = grid;
    rep.moments.resize(grid.size());
    std::vector<double> column(ensemble.size());
    for (std::size_t t = 0; t < grid.size(); ++t) {
        for (std::size_t p = 0; p < ensemble.size(); ++p) {
            double s = 0.0;
            for (std::size_t i = 0; i < kSpecies; ++i) s += std::exp(k * ensemble[p].log_states[t][i]);
            column[p] = s;
        }
        rep.moments[t] = stats::pairwise_sum(column) / static_cast<double>(ensemble.size());
    }
    const double half = 0.5 * grid.back();
    std::vector<double> wt;
    std::vector<double> wv;
    for (std::size_t t = 0; t < grid.size(); ++t) {
        if (grid[t] + 1e-9 < half) continue;
        wt.push_back(grid[t]);
        wv.push_back(rep.moments[t]);
    }
    rep.window_max = *std::max_element(wv.begin(), wv.end());
    std::vector<double> sorted = wv;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    rep.window_median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    rep.window_trend = wt.size() >= 2 ? stats::ols_slope(wt, wv) : 0.0;
    rep.plateau = rep.window_max <= 2.0 * rep.window_median;
    rep.nonincreasing = rep.window_trend <= 0.0 && wv.back() <= wv.front();
    return rep;
}

struct MartingaleDecay {
    std::string name;
    std::vector<double> horizons;
    /// Ensemble mean of |M(T)/T| at each horizon.
    std::vector<double> mean_abs;
    /// Fitted power-law exponent; NaN when the martingale is identically zero.
    double exponent = std::numeric_limits<double>::quiet_NaN();
};

/// Decay of |M_i(T)/T| and |Mtilde_i(T)/T| read off one ensemble at the
/// recorded times closest to each requested horizon.
inline std::vector<MartingaleDecay> martingale_decay(const std::vector<Trajectory>& ensemble,
                                                     const std::vector<double>& horizons) {
    if (ensemble.empty() || horizons.size() < 2) {
        throw Error(ErrorCode::EmptyWindow, "need an ensemble and at least two horizons");
    }
    const auto& grid = ensemble.front().times;
    std::vector<std::size_t> idx;
    for (double h : horizons) {
        const auto it = std::lower_bound(grid.begin(), grid.end(), h - 1e-9 * h);
        if (it == grid.end()) throw Error(ErrorCode::EmptyWindow, "horizon beyond simulated range");
        idx.push_back(static_cast<std::size_t>(it - grid.begin()));
    }
    std::vector<MartingaleDecay> out;
    for (int jump = 0; jump < 2; ++jump) {
        for (std::size_t i = 0; i < kSpecies; ++i) {
            MartingaleDecay d;
            d.name = std::string(jump ? "Mtilde" : "M") + std::to_string(i + 1);
            std::vector<double> column(ensemble.size());
            bool all_zero = true;
            for (std::size_t h = 0; h < idx.size(); ++h) {
                const double t = grid[idx[h]];
                for (std::size_t p = 0; p < ensemble.size(); ++p) {
                    const auto& track =
                        jump ? ensemble[p].jump_martingale : ensemble[p].diffusion_martingale;
                    column[p] = std::abs(track[idx[h]][i] / t);
                }
                const double mean = stats::pairwise_sum(column) / static_cast<double>(column.size());
                if (mean != 0.0) all_zero = false;
                d.horizons.push_back(t);
                d.mean_abs.push_back(mean);
            }
            if (!all_zero) {
                std::vector<double> lx;
                std::vector<double> ly;
                for (std::size_t h = 0; h < d.horizons.size(); ++h) {
                    lx.push_back(std::log(d.horizons[h]));
                    ly.push_back(std::log(d.mean_abs[h]));
                }
                d.exponent = stats::ols_slope(lx, ly);
            }
            out.push_back(std::move(d));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification of a predicted regime against an ensemble.

enum class Relation { AtMost, Within, Near };

struct CheckResult {
    std::string name;
    Relation relation = Relation::AtMost;
    double predicted_lo = 0.0;
    double predicted_hi = 0.0;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    std::string predicted() const {
        std::ostringstream os;
        os.precision(10);
        switch (relation) {
        case Relation::AtMost: os << "<=" << predicted_hi; break;
        case Relation::Within: os << '[' << predicted_lo << ';' << predicted_hi << ']'; break;
        case Relation::Near: os << predicted_lo; break;
        }
        return os.str();
    }
};

struct VerificationReport {
    RegimeKind regime = RegimeKind::Indeterminate;
    std::vector<CheckResult> checks;

    bool pass() const noexcept {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
    }
};

struct VerifyOptions {
    double tail_fraction = 0.5;
    double extinction_threshold = 1e-4;
    /// Fraction of paths that must fall below the threshold.
    double min_extinct_fraction = 0.95;
    double n_std_errors = 3.0;
    double tolerance_floor = 1e-3;
    /// Also check the universal bound lim sup ln x_i / t <= 0.
    bool log_slope_nonpositive = true;
};

inline CheckResult at_most(std::string name, double bound, double observed, double tol) {
    return {std::move(name), Relation::AtMost, bound, bound, observed, tol, observed <= bound + tol};
}

inline CheckResult within(std::string name, Interval iv, double observed, double tol) {
    const Relation rel = iv.degenerate() ? Relation::Near : Relation::Within;
    const bool ok = observed >= iv.lo() - tol && observed <= iv.hi() + tol;
    return {std::move(name), rel, iv.lo(), iv.hi(), observed, tol, ok};
}

inline VerificationReport verify_regime([[maybe_unused]] const CrispModel& m,
                                        const RegimeVerdict& verdict,
                                        const std::vector<Trajectory>& ensemble,
                                        const VerifyOptions& opt = {}) {
    if (ensemble.empty()) throw Error(ErrorCode::EmptyWindow, "empty ensemble");
    VerificationReport rep;
    rep.regime = verdict.kind;
    const double horizon = ensemble.front().final_time();
    const TimeWindow window = tail_window(horizon, opt.tail_fraction);
    auto tol = [&](double se) { return opt.n_std_errors * se + opt.tolerance_floor; };

    for (std::size_t i = 0; i < kSpecies; ++i) {
        const std::string sp = species_name(i);
        const auto slope = estimate_log_slope(ensemble, i, opt.tail_fraction);
        if (verdict.rates[i]) {
            const double frac = terminal_fraction_below(ensemble, i, opt.extinction_threshold);
            rep.checks.push_back({"extinct." + sp + ".terminal_fraction", Relation::Near,
                                  opt.min_extinct_fraction, opt.min_extinct_fraction, frac, 0.0,
                                  frac >= opt.min_extinct_fraction});
            rep.checks.push_back(
                at_most("extinct." + sp + ".log_slope", *verdict.rates[i], slope.mean,
                        tol(slope.std_error)));
        }
        if (verdict.bounds[i]) {
            const auto avg = estimate_time_average(ensemble, i, window);
            rep.checks.push_back(
                within("mean." + sp + ".time_average", *verdict.bounds[i], avg.value,
                       tol(avg.std_error)));
            rep.checks.push_back(within("mean." + sp + ".log_slope", Interval::point(0.0),
                                        slope.mean, tol(slope.std_error)));
        }
        if (opt.log_slope_nonpositive) {
            rep.checks.push_back(
                at_most("bound." + sp + ".log_slope", 0.0, slope.mean, tol(slope.std_error)));
        }
    }
    return rep;
}

} // namespace holling
