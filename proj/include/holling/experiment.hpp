#pragma once

// Experiment orchestration: realize -> simulate -> classify -> verify, and
// sweeps over the precision level p. Every number written here is computed
// by the model, engine and asymptotics headers.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "holling/asymptotics.hpp"
#include "holling/config.hpp"
#include "holling/engine.hpp"
#include "holling/export.hpp"
#include "holling/model.hpp"

namespace holling {

enum class ExitCode : int { Ok = 0, Config = 2, Simulation = 3, Verification = 4 };

/// Injection points for tests of the orchestration layer.
struct ExperimentHooks {
    std::function<void(RegimeVerdict&)> adjust_verdict;
};

struct ExperimentResult {
    ExitCode exit_code = ExitCode::Ok;
    std::string message;
    RegimeVerdict verdict;
    BCoefficients b;
    VerificationReport report;
    std::filesystem::path summary_csv;
};

inline std::filesystem::path output_directory(const ExperimentConfig& cfg) {
    if (!cfg.output.empty()) return cfg.output;
    if (const char* env = std::getenv("HOLLING_OUT_DIR"); env && *env) return env;
    return "holling_out";
}

/// Per-species ensemble statistics over the tail window.
inline void write_summary_csv(std::ostream& os, const std::vector<Trajectory>& ensemble,
                              const SimulationConfig& sim, double p, const VerifyOptions& opt) {
    const double horizon = ensemble.front().final_time();
    const TimeWindow w = tail_window(horizon, opt.tail_fraction);
    os << provenance_line(sim) << " paths=" << ensemble.size() << " p=" << format_double(p)
       << '\n';
    os << "species,window_start,window_end,time_average,time_average_se,log_slope,log_slope_se,"
          "terminal_mean,terminal_fraction_below\n";
    for (std::size_t i = 0; i < kSpecies; ++i) {
        const auto avg = estimate_time_average(ensemble, i, w);
        const auto slope = estimate_log_slope(ensemble, i, opt.tail_fraction);
        std::vector<double> terminal;
        for (const auto& traj : ensemble) terminal.push_back(traj.state(traj.size() - 1, i));
        const auto term = stats::mean_estimate(terminal);
        os << species_name(i) << ',' << format_double(w.start) << ',' << format_double(w.end)
           << ',' << format_double(avg.value) << ',' << format_double(avg.std_error) << ','
           << format_double(slope.mean) << ',' << format_double(slope.std_error) << ','
           << format_double(term.mean) << ','
           << format_double(terminal_fraction_below(ensemble, i, opt.extinction_threshold))
           << '\n';
    }
}

/// Counts grid points where the shared-increment ordering
/// x1 <= phi1, x2 <= phi2, phi3 <= y <= phi4 fails by more than rel_tol.
inline std::size_t comparison_violations(const CrispModel& m, const StateVector& init,
                                         const SimulationConfig& sim,
                                         const std::vector<Trajectory>& ensemble,
                                         double rel_tol = 1e-9) {
    const std::array<ComparisonSpec, 4> specs{
        make_comparison(m, Comparison::Phi1), make_comparison(m, Comparison::Phi2),
        make_comparison(m, Comparison::Phi3), make_comparison(m, Comparison::Phi4)};
    std::vector<std::size_t> per_path(ensemble.size(), 0);
    parallel_for(ensemble.size(), sim.threads, [&](std::size_t p) {
        const auto& traj = ensemble[p];
        std::array<ScalarTrajectory, 4> phi;
        for (std::size_t c = 0; c < 4; ++c) {
            phi[c] = simulate_comparison(specs[c], init[specs[c].species], sim, traj.path_index);
        }
        // log-space comparison: u <= w + log(1 + rel_tol)
        const double slack = std::log1p(rel_tol);
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const auto& u = traj.log_states[k];
            if (u[0] > phi[0].log_states[k][0] + slack) ++per_path[p];
            if (u[1] > phi[1].log_states[k][0] + slack) ++per_path[p];
            if (phi[2].log_states[k][0] > u[2] + slack) ++per_path[p];
            if (u[2] > phi[3].log_states[k][0] + slack) ++per_path[p];
        }
    });
    std::size_t total = 0;
    for (auto v : per_path) total += v;
    return total;
}

/// All enabled checks on an already simulated ensemble.
inline VerificationReport run_checks(const ExperimentConfig& cfg, const CrispModel& m,
                                     const RegimeVerdict& verdict,
                                     const std::vector<Trajectory>& ensemble) {
    VerificationReport rep;
    rep.regime = verdict.kind;
    if (cfg.check_enabled("regime")) rep = verify_regime(m, verdict, ensemble, cfg.analysis);
    if (cfg.check_enabled("moments")) {
        for (double k : {1.0, 2.0}) {
            const auto mr = check_moment_bound(ensemble, k);
            CheckResult c;
            c.name = "moment.k" + std::to_string(static_cast<int>(k)) + ".max_over_median";
            c.relation = Relation::AtMost;
            c.predicted_lo = c.predicted_hi = 2.0;
            c.observed = mr.window_max / mr.window_median;
            c.pass = mr.pass();
            rep.checks.push_back(c);
        }
    }
    if (cfg.check_enabled("martingale")) {
        const double horizon = ensemble.front().final_time();
        for (const auto& d : martingale_decay(ensemble, {horizon / 16.0, horizon / 4.0, horizon})) {
            if (std::isnan(d.exponent)) continue;
            rep.checks.push_back(
                within("martingale." + d.name + ".exponent", Interval(-0.75, -0.25), d.exponent, 0.0));
        }
    }
    if (cfg.check_enabled("comparison")) {
        const double v = static_cast<double>(comparison_violations(m, cfg.init, cfg.sim, ensemble));
        rep.checks.push_back(at_most("comparison.violations", 0.0, v, 0.0));
    }
    return rep;
}

namespace detail {

inline void write_file(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::InvalidConfig, "cannot write " + path.string());
    body(os);
}

inline void write_paths(const std::filesystem::path& dir, const std::vector<Trajectory>& ensemble,
                        const CrispModel& m, const SimulationConfig& sim) {
    std::filesystem::create_directories(dir / "paths");
    for (const auto& traj : ensemble) {
        std::ostringstream stem;
        stem << "path_" << std::setw(4) << std::setfill('0') << traj.path_index;
        write_file(dir / "paths" / (stem.str() + ".csv"),
                   [&](std::ostream& os) { write_trajectory_csv(os, traj, sim); });
        write_file(dir / "paths" / (stem.str() + "_jumps.csv"),
                   [&](std::ostream& os) { write_jumps_csv(os, traj, m, sim); });
    }
}

/// Classification, simulation and verification at one p, written into dir.
inline ExperimentResult run_point(const ExperimentConfig& cfg, double p, bool verify,
                                  const std::filesystem::path& dir, const ExperimentHooks& hooks) {
    ExperimentResult res;
    const CrispModel m = realize_model(cfg.model, p);
    res.b = m.b();
    res.verdict = classify_regime(res.b, m);
    if (hooks.adjust_verdict) hooks.adjust_verdict(res.verdict);

    std::filesystem::create_directories(dir);
    write_file(dir / "verdict.txt",
               [&](std::ostream& os) { write_verdict_text(os, res.verdict, res.b, p); });
    if (!verify) return res;

    std::vector<Trajectory> ensemble;
    try {
        ensemble = run_ensemble(m, cfg.init, cfg.sim);
    } catch (const Error& e) {
        res.exit_code = ExitCode::Simulation;
        res.message = e.what();
        return res;
    }
    res.summary_csv = dir / "summary.csv";
    write_file(res.summary_csv, [&](std::ostream& os) {
        write_summary_csv(os, ensemble, cfg.sim, p, cfg.analysis);
    });
    if (cfg.write_paths) write_paths(dir, ensemble, m, cfg.sim);

    res.report = run_checks(cfg, m, res.verdict, ensemble);
    write_file(dir / "report.txt",
               [&](std::ostream& os) { write_report_text(os, res.report, p); });
    write_file(dir / "report.csv", [&](std::ostream& os) { write_report_csv(os, res.report); });
    if (!res.report.pass()) {
        res.exit_code = ExitCode::Verification;
        res.message = "verification failed";
    }
    return res;
}

} // namespace detail

/// Single-p experiment. Writes verdict.txt, summary.csv, report.txt and
/// report.csv (plus paths/ when write_paths is set) into the output directory.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                       const ExperimentHooks& hooks = {}) {
    cfg.validate();
    return detail::run_point(cfg, cfg.p_or_default(), cfg.verify, output_directory(cfg), hooks);
}

struct SweepRow {
    double p = 0.0;
    BCoefficients b;
    RegimeVerdict verdict;
    bool verified = false;
    ExitCode exit_code = ExitCode::Ok;
};

struct SweepResult {
    ExitCode exit_code = ExitCode::Ok;
    std::vector<SweepRow> rows;
    std::filesystem::path sweep_csv;
};

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "p,b1,b2,b3,regime,x1_lo,x1_hi,x2_lo,x2_hi,y_lo,y_hi,x1_rate,x2_rate,y_rate\n";
    for (const auto& r : rows) {
        os << format_double(r.p) << ',' << format_double(r.b.b1) << ',' << format_double(r.b.b2)
           << ',' << format_double(r.b.b3) << ',' << to_string(r.verdict.kind);
        for (std::size_t i = 0; i < kSpecies; ++i) {
            os << ',';
            if (r.verdict.bounds[i]) os << format_double(r.verdict.bounds[i]->lo());
            os << ',';
            if (r.verdict.bounds[i]) os << format_double(r.verdict.bounds[i]->hi());
        }
        for (std::size_t i = 0; i < kSpecies; ++i) {
            os << ',';
            if (r.verdict.rates[i]) os << format_double(*r.verdict.rates[i]);
        }
        os << '\n';
    }
}

/// Classifies the regime on every grid p and simulates-and-verifies the
/// points selected by p_sweep.verify (each into its own p_<index> directory).
inline SweepResult sweep_p(const ExperimentConfig& cfg, const ExperimentHooks& hooks = {}) {
    cfg.validate();
    if (!cfg.p_sweep) throw Error(ErrorCode::ValidationError, "p_sweep: required for a sweep");
    const auto& sweep = *cfg.p_sweep;
    const auto dir = output_directory(cfg);
    std::filesystem::create_directories(dir);
    SweepResult out;
    for (std::size_t i = 0; i < sweep.count; ++i) {
        SweepRow row;
        row.p = sweep.at(i);
        row.verified = cfg.verify && sweep.verifies(i);
        std::ostringstream sub;
        sub << "p_" << std::setw(3) << std::setfill('0') << i;
        const auto res = detail::run_point(cfg, row.p, row.verified, dir / sub.str(), hooks);
        row.b = res.b;
        row.verdict = res.verdict;
        row.exit_code = res.exit_code;
        if (res.exit_code != ExitCode::Ok && out.exit_code == ExitCode::Ok) {
            out.exit_code = res.exit_code;
        }
        out.rows.push_back(row);
    }
    out.sweep_csv = dir / "sweep.csv";
    detail::write_file(out.sweep_csv, [&](std::ostream& os) { write_sweep_csv(os, out.rows); });
    return out;
}

} // namespace holling
