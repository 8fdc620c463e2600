// Command-line front end: runs one experiment or a p-sweep from a JSON config.
//
// Exit codes: 0 ok, 2 configuration error, 3 simulation error,
// 4 verification failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "holling/holling.hpp"

namespace {

int code(holling::ExitCode c) { return static_cast<int>(c); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw holling::Error(holling::ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulate and verify the imprecise one-predator two-prey jump-diffusion"};
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<double> horizon;
    std::optional<double> dt;
    std::optional<double> p;
    std::optional<std::string> out;
    bool sweep = false;

    app.add_option("--config", config_path, "Experiment config (JSON)")->required();
    app.add_option("--seed", seed, "Master seed (overrides config)");
    app.add_option("--paths", paths, "Number of sample paths");
    app.add_option("--horizon", horizon, "Simulated time horizon T");
    app.add_option("--dt", dt, "Euler step size");
    app.add_option("--p", p, "Precision level in [0, 1]");
    app.add_option("--out", out, "Output directory");
    auto* verify = app.add_flag("--verify,!--no-verify", "Simulate and verify (default on)");
    app.add_flag("--sweep", sweep, "Run the p_sweep block of the config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : code(holling::ExitCode::Config);
    }

    holling::ExperimentConfig cfg;
    try {
        cfg = holling::parse_config(read_file(config_path));
        if (seed) cfg.sim.seed = *seed;
        if (paths) cfg.sim.n_paths = *paths;
        if (horizon) cfg.sim.horizon = *horizon;
        if (dt) cfg.sim.dt = *dt;
        if (out) cfg.output = *out;
        if (verify->count() > 0) cfg.verify = verify->as<bool>();
        if (p) {
            if (sweep) throw holling::Error(holling::ErrorCode::ValidationError, "--p conflicts with --sweep");
            cfg.p = *p;
            cfg.p_sweep.reset();
        }
        if (sweep && !cfg.p_sweep) {
            throw holling::Error(holling::ErrorCode::ValidationError,
                                 "--sweep requires a p_sweep block in the config");
        }
        cfg.validate();
    } catch (const holling::Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return code(holling::ExitCode::Config);
    }
    if (cfg.sim.coarse_step()) {
        std::cerr << "warning: dt = " << cfg.sim.dt << " exceeds 1e-2\n";
    }

    try {
        if (cfg.p_sweep) {
            const auto res = holling::sweep_p(cfg);
            std::cout << "sweep: " << res.rows.size() << " points -> " << res.sweep_csv.string()
                      << '\n';
            for (const auto& row : res.rows) {
                std::cout << "  p=" << row.p << "  b=(" << row.b.b1 << ", " << row.b.b2 << ", "
                          << row.b.b3 << ")  " << holling::to_string(row.verdict.kind)
                          << (row.verified ? (row.exit_code == holling::ExitCode::Ok ? "  verified"
                                                                                     : "  FAILED")
                                           : "")
                          << '\n';
            }
            return code(res.exit_code);
        }
        const auto res = holling::run_experiment(cfg);
        std::cout << "p = " << cfg.p_or_default() << "  b = (" << res.b.b1 << ", " << res.b.b2
                  << ", " << res.b.b3 << ")  regime = " << holling::to_string(res.verdict.kind)
                  << '\n';
        for (const auto& c : res.report.checks) {
            std::cout << (c.pass ? "  PASS  " : "  FAIL  ") << c.name << "  observed "
                      << c.observed << "  predicted " << c.predicted() << "  tol " << c.tolerance
                      << '\n';
        }
        if (!res.message.empty()) std::cerr << res.message << '\n';
        std::cout << "output: " << holling::output_directory(cfg).string() << '\n';
        return code(res.exit_code);
    } catch (const holling::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return code(holling::ExitCode::Simulation);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return code(holling::ExitCode::Simulation);
    }
}
