#pragma once

// JSON experiment configuration.
//
//   {
//     "model": {
//       "r":     [[lo, hi], [lo, hi], [lo, hi]],
//       "a":     [[[lo, hi], [lo, hi], [lo, hi]], ...three rows...],
//       "sigma": [[lo, hi], [lo, hi], [lo, hi]],
//       "jumps": [{"weight": w, "c1": c, "c2": c, "c3": c}, ...]
//     },
//     "p": 0.5,                       // or "p_sweep": {"start", "stop", "count", "verify"}
//     "simulation": {"horizon", "dt", "seed", "paths", "record_stride", "threads"},
//     "init": {"x1", "x2", "y"},
//     "output": "dir",
//     "checks": ["regime", "moments", "martingale", "comparison"],
//     "verify": true,
//     "write_paths": false,
//     "analysis": {"tail_fraction", "extinction_threshold", "min_extinct_fraction"}
//   }
//
// A bare number stands for the degenerate interval [c, c].

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "holling/asymptotics.hpp"
#include "holling/engine.hpp"
#include "holling/error.hpp"
#include "holling/interval.hpp"
#include "holling/model.hpp"

namespace holling {

enum class SweepVerify { None, Endpoints, All };

struct PSweep {
    double start = 0.0;
    double stop = 1.0;
    std::size_t count = 2;
    SweepVerify verify = SweepVerify::None;

    double at(std::size_t i) const noexcept {
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    bool verifies(std::size_t i) const noexcept {
        switch (verify) {
        case SweepVerify::None: return false;
        case SweepVerify::Endpoints: return i == 0 || i + 1 == count;
        case SweepVerify::All: return true;
        }
        return false;
    }
};

inline const std::set<std::string>& known_checks() {
    static const std::set<std::string> names{"regime", "moments", "martingale", "comparison"};
    return names;
}

struct ExperimentConfig {
    ImpreciseModel model;
    std::optional<double> p;
    std::optional<PSweep> p_sweep;
    SimulationConfig sim;
    StateVector init;
    std::string output;
    std::vector<std::string> checks{"regime"};
    bool verify = true;
    bool write_paths = false;
    VerifyOptions analysis;

    double p_or_default() const noexcept { return p.value_or(0.5); }

    bool check_enabled(const std::string& name) const {
        return std::find(checks.begin(), checks.end(), name) != checks.end();
    }

    void validate() const {
        if (p && p_sweep) {
            throw Error(ErrorCode::ValidationError, "p and p_sweep are mutually exclusive");
        }
        if (p && !(*p >= 0.0 && *p <= 1.0)) {
            throw Error(ErrorCode::ValidationError, "p: must lie in [0, 1]");
        }
        if (p_sweep) {
            if (p_sweep->count < 2) {
                throw Error(ErrorCode::ValidationError, "p_sweep.count: must be >= 2");
            }
            for (double v : {p_sweep->start, p_sweep->stop}) {
                if (!(v >= 0.0 && v <= 1.0)) {
                    throw Error(ErrorCode::ValidationError, "p_sweep: start/stop must lie in [0, 1]");
                }
            }
        }
        try {
            model.validate();
            sim.validate();
            init.validate();
        } catch (const Error& e) {
            throw Error(ErrorCode::ValidationError, e.what());
        }
        for (const auto& c : checks) {
            if (!known_checks().count(c)) {
                throw Error(ErrorCode::ValidationError, "checks: unknown check '" + c + "'");
            }
        }
        if (!(analysis.tail_fraction > 0.0 && analysis.tail_fraction <= 1.0)) {
            throw Error(ErrorCode::ValidationError, "analysis.tail_fraction: must lie in (0, 1]");
        }
    }
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void invalid(const std::string& field, const std::string& msg) {
    throw Error(ErrorCode::ValidationError, field + ": " + msg);
}

inline void reject_unknown(const json& obj, const std::string& field,
                           std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) invalid(field.empty() ? "<root>" : field, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                    [&](const char* a) { return key == a; });
        if (!ok) invalid(field.empty() ? key : field + "." + key, "unknown key");
    }
}

inline double number(const json& v, const std::string& field) {
    if (!v.is_number()) invalid(field, "expected a number");
    return v.get<double>();
}

inline std::uint64_t unsigned_integer(const json& v, const std::string& field) {
    if (!v.is_number_unsigned()) {
        invalid(field, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

inline Interval interval(const json& v, const std::string& field) {
    if (v.is_number()) {
        const double c = v.get<double>();
        return Interval(c, c);
    }
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        invalid(field, "expected [lo, hi]");
    }
    const double lo = v[0].get<double>();
    const double hi = v[1].get<double>();
    if (!(lo <= hi)) {
        std::ostringstream os;
        os << "interval [" << lo << ", " << hi << "] has lo > hi";
        invalid(field, os.str());
    }
    return Interval(lo, hi);
}

inline std::array<Interval, kSpecies> interval_triple(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != kSpecies) invalid(field, "expected three intervals");
    std::array<Interval, kSpecies> out;
    for (std::size_t i = 0; i < kSpecies; ++i) {
        out[i] = interval(v[i], field + "[" + std::to_string(i) + "]");
    }
    return out;
}

inline JumpMeasure jump_measure(const json& v, const std::string& field) {
    if (!v.is_array()) invalid(field, "expected an array of jump atoms");
    std::vector<JumpAtom> atoms;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string f = field + "[" + std::to_string(k) + "]";
        reject_unknown(v[k], f, {"weight", "c1", "c2", "c3"});
        JumpAtom atom;
        if (!v[k].contains("weight")) invalid(f + ".weight", "required");
        atom.weight = number(v[k]["weight"], f + ".weight");
        if (!(atom.weight > 0.0)) invalid(f + ".weight", "must be > 0");
        for (std::size_t i = 0; i < kSpecies; ++i) {
            const std::string key = "c" + std::to_string(i + 1);
            atom.c[i] = v[k].contains(key) ? number(v[k][key], f + "." + key) : 0.0;
            if (!(atom.c[i] > -1.0)) {
                std::ostringstream os;
                os << "jump size " << atom.c[i] << " violates c > -1";
                invalid(f + "." + key, os.str());
            }
        }
        atoms.push_back(atom);
    }
    return JumpMeasure(std::move(atoms));
}

inline ImpreciseModel model(const json& v) {
    reject_unknown(v, "model", {"r", "a", "sigma", "jumps"});
    ImpreciseModel m;
    for (const char* key : {"r", "a", "sigma"}) {
        if (!v.contains(key)) invalid(std::string("model.") + key, "required");
    }
    m.r_hat = interval_triple(v["r"], "model.r");
    m.sigma_hat = interval_triple(v["sigma"], "model.sigma");
    const auto& a = v["a"];
    if (!a.is_array() || a.size() != kSpecies) invalid("model.a", "expected a 3x3 array");
    for (std::size_t i = 0; i < kSpecies; ++i) {
        m.a_hat[i] = interval_triple(a[i], "model.a[" + std::to_string(i) + "]");
    }
    if (v.contains("jumps")) m.jumps = jump_measure(v["jumps"], "model.jumps");
    for (std::size_t i = 0; i < kSpecies; ++i) {
        const auto idx = "[" + std::to_string(i) + "]";
        try {
            validate_coefficient(m.r_hat[i], false, "r");
        } catch (const Error& e) {
            invalid("model.r" + idx, e.what());
        }
        try {
            validate_coefficient(m.sigma_hat[i], true, "sigma");
        } catch (const Error& e) {
            invalid("model.sigma" + idx, e.what());
        }
        for (std::size_t j = 0; j < kSpecies; ++j) {
            try {
                validate_coefficient(m.a_hat[i][j], true, "a");
            } catch (const Error& e) {
                invalid("model.a" + idx + "[" + std::to_string(j) + "]", e.what());
            }
        }
    }
    return m;
}

} // namespace detail

inline ExperimentConfig parse_config(const std::string& text) {
    using nlohmann::json;
    json root;
    try {
        root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    detail::reject_unknown(root, "", {"model", "p", "p_sweep", "simulation", "init", "output",
                                      "checks", "verify", "write_paths", "analysis"});
    ExperimentConfig cfg;
    if (!root.contains("model")) detail::invalid("model", "required");
    cfg.model = detail::model(root["model"]);

    if (root.contains("p")) {
        cfg.p = detail::number(root["p"], "p");
        if (!(*cfg.p >= 0.0 && *cfg.p <= 1.0)) detail::invalid("p", "must lie in [0, 1]");
    }
    if (root.contains("p_sweep")) {
        const auto& s = root["p_sweep"];
        detail::reject_unknown(s, "p_sweep", {"start", "stop", "count", "verify"});
        PSweep sweep;
        if (s.contains("start")) sweep.start = detail::number(s["start"], "p_sweep.start");
        if (s.contains("stop")) sweep.stop = detail::number(s["stop"], "p_sweep.stop");
        if (s.contains("count")) {
            sweep.count = detail::unsigned_integer(s["count"], "p_sweep.count");
        }
        if (sweep.count < 2) detail::invalid("p_sweep.count", "must be >= 2");
        if (s.contains("verify")) {
            if (!s["verify"].is_string()) detail::invalid("p_sweep.verify", "expected a string");
            const auto mode = s["verify"].get<std::string>();
            if (mode == "none") sweep.verify = SweepVerify::None;
            else if (mode == "endpoints") sweep.verify = SweepVerify::Endpoints;
            else if (mode == "all") sweep.verify = SweepVerify::All;
            else detail::invalid("p_sweep.verify", "expected none, endpoints or all");
        }
        cfg.p_sweep = sweep;
    }
    if (root.contains("simulation")) {
        const auto& s = root["simulation"];
        detail::reject_unknown(s, "simulation",
                               {"horizon", "dt", "seed", "paths", "record_stride", "threads"});
        if (s.contains("horizon")) cfg.sim.horizon = detail::number(s["horizon"], "simulation.horizon");
        if (s.contains("dt")) cfg.sim.dt = detail::number(s["dt"], "simulation.dt");
        if (s.contains("seed")) cfg.sim.seed = detail::unsigned_integer(s["seed"], "simulation.seed");
        if (s.contains("paths")) cfg.sim.n_paths = detail::unsigned_integer(s["paths"], "simulation.paths");
        if (s.contains("record_stride")) {
            cfg.sim.record_stride =
                detail::unsigned_integer(s["record_stride"], "simulation.record_stride");
        }
        if (s.contains("threads")) {
            cfg.sim.threads = detail::unsigned_integer(s["threads"], "simulation.threads");
        }
    }
    if (root.contains("init")) {
        const auto& s = root["init"];
        detail::reject_unknown(s, "init", {"x1", "x2", "y"});
        if (s.contains("x1")) cfg.init.x1 = detail::number(s["x1"], "init.x1");
        if (s.contains("x2")) cfg.init.x2 = detail::number(s["x2"], "init.x2");
        if (s.contains("y")) cfg.init.y = detail::number(s["y"], "init.y");
        for (std::size_t i = 0; i < kSpecies; ++i) {
            if (!(cfg.init[i] > 0.0)) {
                detail::invalid(std::string("init.") + species_name(i), "must be > 0");
            }
        }
    }
    if (root.contains("output")) {
        if (!root["output"].is_string()) detail::invalid("output", "expected a string");
        cfg.output = root["output"].get<std::string>();
    }
    if (root.contains("checks")) {
        const auto& c = root["checks"];
        if (!c.is_array()) detail::invalid("checks", "expected an array of names");
        cfg.checks.clear();
        for (std::size_t i = 0; i < c.size(); ++i) {
            const std::string f = "checks[" + std::to_string(i) + "]";
            if (!c[i].is_string()) detail::invalid(f, "expected a string");
            cfg.checks.push_back(c[i].get<std::string>());
            if (!known_checks().count(cfg.checks.back())) {
                detail::invalid(f, "unknown check '" + cfg.checks.back() + "'");
            }
        }
    }
    for (const char* key : {"verify", "write_paths"}) {
        if (!root.contains(key)) continue;
        if (!root[key].is_boolean()) detail::invalid(key, "expected true or false");
        (std::string(key) == "verify" ? cfg.verify : cfg.write_paths) = root[key].get<bool>();
    }
    if (root.contains("analysis")) {
        const auto& s = root["analysis"];
        detail::reject_unknown(s, "analysis",
                               {"tail_fraction", "extinction_threshold", "min_extinct_fraction"});
        if (s.contains("tail_fraction")) {
            cfg.analysis.tail_fraction = detail::number(s["tail_fraction"], "analysis.tail_fraction");
        }
        if (s.contains("extinction_threshold")) {
            cfg.analysis.extinction_threshold =
                detail::number(s["extinction_threshold"], "analysis.extinction_threshold");
        }
        if (s.contains("min_extinct_fraction")) {
            cfg.analysis.min_extinct_fraction =
                detail::number(s["min_extinct_fraction"], "analysis.min_extinct_fraction");
        }
    }
    cfg.validate();
    return cfg;
}

} // namespace holling
