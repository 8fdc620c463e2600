#pragma once

// Log-space Euler-Maruyama with exact compound-Poisson jumps.
//
// Between jump events each log-state takes Euler steps on
//   d ln x_i = (r_i - sigma_i^2/2 - interactions) dt + sigma_i dB_i,
// and a jump of mark k adds ln(1 + c_i[k]). Grid steps that contain a jump
// are split at the jump time. States are exp(log-state) and so stay positive.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "holling/error.hpp"
#include "holling/model.hpp"
#include "holling/random.hpp"

namespace holling {

inline constexpr double kLogStateLimit = 700.0;
inline constexpr const char* kEngineVersion = "holling-engine/1.0";

struct SimulationConfig {
    double horizon = 1000.0;
    double dt = 1e-3;
    std::uint64_t seed = 0;
    std::size_t n_paths = 200;
    std::size_t record_stride = 100;
    /// Worker threads for ensembles; 0 picks the hardware concurrency.
    std::size_t threads = 0;

    void validate() const {
        if (!(horizon > 0.0) || !std::isfinite(horizon)) {
            throw Error(ErrorCode::InvalidConfig, "horizon must be finite and > 0");
        }
        if (!(dt > 0.0) || !(dt <= horizon)) {
            throw Error(ErrorCode::InvalidConfig, "dt must satisfy 0 < dt <= horizon");
        }
        if (n_paths < 1) throw Error(ErrorCode::InvalidConfig, "n_paths must be >= 1");
        if (record_stride < 1) throw Error(ErrorCode::InvalidConfig, "record_stride must be >= 1");
    }

    /// Steps coarser than 1e-2 are legal but under-resolve the drift scales.
    bool coarse_step() const noexcept { return dt > 1e-2; }

    std::size_t n_steps() const noexcept {
        return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(horizon / dt)));
    }
};

struct JumpEvent {
    double time = 0.0;
    std::size_t mark = 0;
};

/// Recorded log-state path of an N-dimensional system together with the
/// running diffusion martingales M_i(t) = int sigma_i dB_i and the
/// compensated jump martingales Mtilde_i(t) = int ln(1 + c_i) dNtilde.
template <std::size_t N>
struct BasicTrajectory {
    std::size_t path_index = 0;
    std::vector<double> times;
    std::vector<std::array<double, N>> log_states;
    std::vector<std::array<double, N>> diffusion_martingale;
    std::vector<std::array<double, N>> jump_martingale;
    std::vector<JumpEvent> jumps;

    std::size_t size() const noexcept { return times.size(); }
    double state(std::size_t k, std::size_t i) const noexcept { return std::exp(log_states[k][i]); }
    double final_time() const noexcept { return times.back(); }
};

using Trajectory = BasicTrajectory<kSpecies>;
using ScalarTrajectory = BasicTrajectory<1>;

/// Jump mark restricted to one species.
struct ScalarJump {
    double weight = 0.0;
    double c = 0.0;
};

namespace detail {

/// Generic integrator. `streams[i]` selects the Brownian stream that drives
/// component i, so a 1-D process can replay one component of a 3-D path.
/// `rate_drift(x)` returns the log-drift without the jump compensator.
template <std::size_t N, class RateDrift>
BasicTrajectory<N> integrate(const std::array<double, N>& init_log,
                             const std::array<Stream, N>& streams,
                             const std::array<double, N>& sigma,
                             const std::array<double, N>& compensator,
                             const std::vector<double>& jump_weights,
                             const std::vector<std::array<double, N>>& jump_log_sizes,
                             const SimulationConfig& cfg, std::size_t path_index,
                             RateDrift&& rate_drift) {
    cfg.validate();
    BasicTrajectory<N> out;
    out.path_index = path_index;

    std::array<Engine, N> brownian;
    for (std::size_t i = 0; i < N; ++i) brownian[i] = make_engine(cfg.seed, path_index, streams[i]);
    Engine jump_engine = make_engine(cfg.seed, path_index, Stream::Jumps);
    std::array<std::normal_distribution<double>, N> normal;

    double total_rate = 0.0;
    for (double w : jump_weights) total_rate += w;
    std::exponential_distribution<double> waiting(total_rate > 0.0 ? total_rate : 1.0);
    std::discrete_distribution<std::size_t> marks(jump_weights.begin(), jump_weights.end());
    constexpr double kInf = std::numeric_limits<double>::infinity();
    double next_jump = total_rate > 0.0 ? waiting(jump_engine) : kInf;

    const std::size_t n_steps = cfg.n_steps();
    const std::size_t n_records = n_steps / cfg.record_stride + 2;
    out.times.reserve(n_records);
    out.log_states.reserve(n_records);
    out.diffusion_martingale.reserve(n_records);
    out.jump_martingale.reserve(n_records);

    std::array<double, N> u = init_log;
    std::array<double, N> m{};
    std::array<double, N> mt{};
    std::array<double, N> x{};

    auto record = [&](double t) {
        out.times.push_back(t);
        out.log_states.push_back(u);
        out.diffusion_martingale.push_back(m);
        out.jump_martingale.push_back(mt);
    };

    auto check = [&](double t) {
        for (std::size_t i = 0; i < N; ++i) {
            if (!(std::abs(u[i]) <= kLogStateLimit)) {
                std::ostringstream os;
                os << "path " << path_index << ": log-state component " << i << " = " << u[i]
                   << " left [-" << kLogStateLimit << ", " << kLogStateLimit << "] at t = " << t;
                throw Error(ErrorCode::NonFiniteState, os.str());
            }
        }
    };

    auto diffuse = [&](double h) {
        for (std::size_t i = 0; i < N; ++i) x[i] = std::exp(u[i]);
        const std::array<double, N> mu = rate_drift(x);
        const double sqrt_h = std::sqrt(h);
        for (std::size_t i = 0; i < N; ++i) {
            const double dw = sigma[i] * sqrt_h * normal[i](brownian[i]);
            u[i] += mu[i] * h + dw;
            m[i] += dw;
            mt[i] -= compensator[i] * h;
        }
    };

    check(0.0);
    record(0.0);
    for (std::size_t k = 0; k < n_steps; ++k) {
        double t = static_cast<double>(k) * cfg.dt;
        const double t_end = static_cast<double>(k + 1) * cfg.dt;
        while (next_jump < t_end) {
            diffuse(next_jump - t);
            const std::size_t mark = marks(jump_engine);
            for (std::size_t i = 0; i < N; ++i) {
                u[i] += jump_log_sizes[mark][i];
                mt[i] += jump_log_sizes[mark][i];
            }
            out.jumps.push_back({next_jump, mark});
            t = next_jump;
            next_jump = t + waiting(jump_engine);
        }
        diffuse(t_end - t);
        check(t_end);
        if ((k + 1) % cfg.record_stride == 0 || k + 1 == n_steps) record(t_end);
    }
    return out;
}

inline std::array<double, kSpecies> log_init(const StateVector& s) {
    s.validate();
    return {std::log(s.x1), std::log(s.x2), std::log(s.y)};
}

} // namespace detail

/// Simulates one path of the full three-species system.
inline Trajectory simulate_path(const CrispModel& m, const StateVector& init,
                                const SimulationConfig& cfg, std::size_t path_index) {
    const auto& atoms = m.jumps().atoms();
    std::vector<double> weights;
    std::vector<Vec3> log_sizes;
    weights.reserve(atoms.size());
    log_sizes.reserve(atoms.size());
    for (const auto& atom : atoms) {
        weights.push_back(atom.weight);
        log_sizes.push_back({std::log1p(atom.c[0]), std::log1p(atom.c[1]), std::log1p(atom.c[2])});
    }
    const Vec3 comp{m.log_jump_compensator(0), m.log_jump_compensator(1),
                    m.log_jump_compensator(2)};
    auto rate_drift = [&m, comp](const Vec3& x) {
        Vec3 mu = log_drift(m, x);
        for (std::size_t i = 0; i < kSpecies; ++i) mu[i] -= comp[i];
        return mu;
    };
    return detail::integrate<kSpecies>(detail::log_init(init),
                                       {Stream::Brownian1, Stream::Brownian2, Stream::Brownian3},
                                       m.sigma(), comp, weights, log_sizes, cfg, path_index,
                                       rate_drift);
}

/// The four one-dimensional logistic jump-diffusions that bound the system
/// pathwise: x1 <= phi1, x2 <= phi2, phi3 <= y <= phi4.
enum class Comparison { Phi1, Phi2, Phi3, Phi4 };

struct ComparisonSpec {
    Comparison which = Comparison::Phi1;
    std::size_t species = Prey1;
    double rate = 0.0;
    double self_interaction = 0.0;
    double sigma = 0.0;
    std::vector<ScalarJump> jumps;

    /// rate - sigma^2/2 + sum_k w_k ln(1 + c_k).
    double threshold() const noexcept {
        double b = rate - 0.5 * sigma * sigma;
        for (const auto& j : jumps) b += j.weight * std::log1p(j.c);
        return b;
    }
};

inline std::vector<ScalarJump> species_jumps(const JumpMeasure& measure, std::size_t species) {
    std::vector<ScalarJump> out;
    out.reserve(measure.size());
    for (const auto& atom : measure.atoms()) out.push_back({atom.weight, atom.c[species]});
    return out;
}

inline ComparisonSpec make_comparison(const CrispModel& m, Comparison which) {
    ComparisonSpec spec;
    spec.which = which;
    switch (which) {
    case Comparison::Phi1:
        spec.species = Prey1;
        spec.rate = m.r(0);
        spec.self_interaction = m.a(0, 0);
        break;
    case Comparison::Phi2:
        spec.species = Prey2;
        spec.rate = m.r(1);
        spec.self_interaction = m.a(1, 1);
        break;
    case Comparison::Phi3:
        spec.species = Predator;
        spec.rate = -m.r(2);
        spec.self_interaction = m.a(2, 2);
        break;
    case Comparison::Phi4:
        spec.species = Predator;
        spec.rate = -m.r(2) + m.a(2, 0) + m.a(2, 1);
        spec.self_interaction = m.a(2, 2);
        break;
    }
    spec.sigma = m.sigma(spec.species);
    spec.jumps = species_jumps(m.jumps(), spec.species);
    return spec;
}

/// Simulates a comparison process. Run with the same (seed, path_index) as a
/// full-system path it consumes the same Brownian increments and jump events.
inline ScalarTrajectory simulate_comparison(const ComparisonSpec& spec, double init,
                                            const SimulationConfig& cfg, std::size_t path_index) {
    if (!(init > 0.0) || !std::isfinite(init)) {
        throw Error(ErrorCode::InvalidState, "comparison initial value must be > 0");
    }
    std::vector<double> weights;
    std::vector<std::array<double, 1>> log_sizes;
    double comp = 0.0;
    for (const auto& j : spec.jumps) {
        if (!(j.c > -1.0)) throw Error(ErrorCode::InvalidJumpMeasure, "jump size must be > -1");
        weights.push_back(j.weight);
        log_sizes.push_back({std::log1p(j.c)});
        comp += j.weight * std::log1p(j.c);
    }
    const double base = spec.rate - 0.5 * spec.sigma * spec.sigma;
    const double self = spec.self_interaction;
    auto rate_drift = [base, self](const std::array<double, 1>& x) {
        return std::array<double, 1>{base - self * x[0]};
    };
    return detail::integrate<1>({std::log(init)}, {static_cast<Stream>(spec.species)},
                                {spec.sigma}, {comp}, weights, log_sizes, cfg, path_index,
                                rate_drift);
}

/// Runs fn(i) for i in [0, n) on `threads` workers (0 = hardware concurrency).
/// Exceptions are collected per index; the one with the lowest index is rethrown.
template <class Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

/// Simulates paths 0..n_paths-1. Output does not depend on the thread count.
inline std::vector<Trajectory> run_ensemble(const CrispModel& m, const StateVector& init,
                                            const SimulationConfig& cfg) {
    cfg.validate();
    init.validate();
    std::vector<Trajectory> paths(cfg.n_paths);
    parallel_for(cfg.n_paths, cfg.threads,
                 [&](std::size_t i) { paths[i] = simulate_path(m, init, cfg, i); });
    return paths;
}

inline std::vector<ScalarTrajectory> run_comparison_ensemble(const ComparisonSpec& spec,
                                                             double init,
                                                             const SimulationConfig& cfg) {
    cfg.validate();
    std::vector<ScalarTrajectory> paths(cfg.n_paths);
    parallel_for(cfg.n_paths, cfg.threads,
                 [&](std::size_t i) { paths[i] = simulate_comparison(spec, init, cfg, i); });
    return paths;
}

} // namespace holling
