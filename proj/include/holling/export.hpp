#pragma once

// CSV and key-value serialization of trajectories and verification reports.
// All numbers are written with 17 significant digits in the C locale.

#include <cstdio>
#include <ostream>
#include <string>

#include "holling/asymptotics.hpp"
#include "holling/engine.hpp"

namespace holling {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Reproducibility line shared by every CSV artifact.
inline std::string provenance_line(const SimulationConfig& cfg) {
    return "# seed=" + std::to_string(cfg.seed) + " dt=" + format_double(cfg.dt) +
           " horizon=" + format_double(cfg.horizon) + " version=" + kEngineVersion;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                                 const SimulationConfig& cfg) {
    os << provenance_line(cfg) << " path=" << traj.path_index << '\n';
    os << "time,x1,x2,y,u1,u2,v\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto& u = traj.log_states[k];
        os << format_double(traj.times[k]);
        for (double ui : u) os << ',' << format_double(std::exp(ui));
        for (double ui : u) os << ',' << format_double(ui);
        os << '\n';
    }
}

/// One row per species per jump event.
inline void write_jumps_csv(std::ostream& os, const Trajectory& traj, const CrispModel& m,
                            const SimulationConfig& cfg) {
    os << provenance_line(cfg) << " path=" << traj.path_index << '\n';
    os << "time,species,mark,size\n";
    const auto& atoms = m.jumps().atoms();
    for (const auto& ev : traj.jumps) {
        for (std::size_t i = 0; i < kSpecies; ++i) {
            os << format_double(ev.time) << ',' << species_name(i) << ',' << ev.mark << ','
               << format_double(atoms[ev.mark].c[i]) << '\n';
        }
    }
}

inline void write_report_csv(std::ostream& os, const VerificationReport& rep) {
    os << "check,predicted,observed,tolerance,pass\n";
    for (const auto& c : rep.checks) {
        os << c.name << ',' << c.predicted() << ',' << format_double(c.observed) << ','
           << format_double(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
    }
}

/// Key-value text: a header block followed by one [check] record per check.
inline void write_report_text(std::ostream& os, const VerificationReport& rep, double p) {
    os << "# holling verification report\n";
    os << "regime = " << to_string(rep.regime) << '\n';
    os << "p = " << format_double(p) << '\n';
    os << "pass = " << (rep.pass() ? "true" : "false") << '\n';
    for (const auto& c : rep.checks) {
        os << "\n[check]\n";
        os << "name = " << c.name << '\n';
        os << "predicted = " << c.predicted() << '\n';
        os << "observed = " << format_double(c.observed) << '\n';
        os << "tolerance = " << format_double(c.tolerance) << '\n';
        os << "pass = " << (c.pass ? "true" : "false") << '\n';
    }
}

inline void write_verdict_text(std::ostream& os, const RegimeVerdict& v, const BCoefficients& b,
                               double p) {
    os << "# holling regime verdict\n";
    os << "p = " << format_double(p) << '\n';
    os << "b1 = " << format_double(b.b1) << '\n';
    os << "b2 = " << format_double(b.b2) << '\n';
    os << "b3 = " << format_double(b.b3) << '\n';
    os << "regime = " << to_string(v.kind) << '\n';
    for (std::size_t i = 0; i < kSpecies; ++i) {
        if (v.bounds[i]) {
            os << species_name(i) << ".time_average = [" << format_double(v.bounds[i]->lo())
               << ", " << format_double(v.bounds[i]->hi()) << "]\n";
        }
        if (v.rates[i]) {
            os << species_name(i) << ".log_slope <= " << format_double(*v.rates[i]) << '\n';
        }
    }
}

} // namespace holling
