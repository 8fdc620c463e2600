#include <gtest/gtest.h>

#include <string>

#include "holling/config.hpp"

using namespace holling;

namespace {

const char* kMinimal = R"({
  "model": {
    "r": [0.5, 0.4, 0.2],
    "a": [[0.5, 0.1, 0.1], [0.1, 0.5, 0.1], [0.2, 0.2, 0.5]],
    "sigma": [0.1, 0.1, 0.1]
  }
})";

std::string with_model(const std::string& extra_model, const std::string& extra_root = "") {
    return R"({"model": {"r": [[0.4, 0.6], 0.4, 0.2],
      "a": [[0.5, 0.1, 0.1], [0.1, 0.5, 0.1], [0.2, 0.2, 0.5]],
      "sigma": [0.1, 0.1, 0.1])" +
           extra_model + "}" + extra_root + "}";
}

std::string error_of(const std::string& text, ErrorCode expected) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), expected) << e.what();
        return e.what();
    }
    ADD_FAILURE() << "expected an error";
    return {};
}

} // namespace

TEST(ParseConfig, MinimalUsesDefaults) {
    const auto cfg = parse_config(kMinimal);
    EXPECT_FALSE(cfg.p.has_value());
    EXPECT_EQ(cfg.p_or_default(), 0.5);
    EXPECT_TRUE(cfg.model.jumps.empty());
    EXPECT_TRUE(cfg.model.r_hat[0].degenerate());
    EXPECT_EQ(cfg.sim.dt, 1e-3);
    EXPECT_EQ(cfg.sim.horizon, 1000.0);
    EXPECT_EQ(cfg.sim.n_paths, 200u);
    EXPECT_EQ(cfg.sim.record_stride, 100u);
    EXPECT_TRUE(cfg.verify);
    EXPECT_TRUE(cfg.check_enabled("regime"));
}

TEST(ParseConfig, FullDocument) {
    const auto cfg = parse_config(R"({
      // comments are allowed
      "model": {
        "r": [[0.4, 0.6], [0.3, 0.5], 0.2],
        "a": [[[0.4, 0.6], 0.1, 0.1], [0.1, 0.5, 0.1], [0.2, 0.2, 0.5]],
        "sigma": [[0.1, 0.2], 0.1, 0],
        "jumps": [{"weight": 0.5, "c1": 0.1, "c2": -0.2, "c3": 0.3}, {"weight": 0.1, "c1": -0.5}]
      },
      "p": 0.25,
      "simulation": {"horizon": 50, "dt": 0.01, "seed": 7, "paths": 3, "record_stride": 5, "threads": 1},
      "init": {"x1": 0.5, "x2": 0.6, "y": 0.7},
      "output": "out/dir",
      "checks": ["regime", "moments"],
      "verify": false,
      "write_paths": true,
      "analysis": {"tail_fraction": 0.25, "extinction_threshold": 1e-5, "min_extinct_fraction": 0.9}
    })");
    EXPECT_EQ(*cfg.p, 0.25);
    EXPECT_EQ(cfg.model.r_hat[0], Interval(0.4, 0.6));
    EXPECT_EQ(cfg.model.a_hat[0][0], Interval(0.4, 0.6));
    EXPECT_EQ(cfg.model.sigma_hat[2], Interval(0.0, 0.0));
    ASSERT_EQ(cfg.model.jumps.size(), 2u);
    EXPECT_EQ(cfg.model.jumps.atoms()[1].c[1], 0.0);
    EXPECT_EQ(cfg.sim.seed, 7u);
    EXPECT_EQ(cfg.sim.n_paths, 3u);
    EXPECT_EQ(cfg.init.y, 0.7);
    EXPECT_EQ(cfg.output, "out/dir");
    EXPECT_TRUE(cfg.check_enabled("moments"));
    EXPECT_FALSE(cfg.verify);
    EXPECT_TRUE(cfg.write_paths);
    EXPECT_EQ(cfg.analysis.tail_fraction, 0.25);
}

TEST(ParseConfig, Sweep) {
    const auto cfg = parse_config(
        with_model("", R"(, "p_sweep": {"start": 0, "stop": 1, "count": 5, "verify": "endpoints"})"));
    ASSERT_TRUE(cfg.p_sweep.has_value());
    EXPECT_EQ(cfg.p_sweep->count, 5u);
    EXPECT_DOUBLE_EQ(cfg.p_sweep->at(2), 0.5);
    EXPECT_TRUE(cfg.p_sweep->verifies(0));
    EXPECT_FALSE(cfg.p_sweep->verifies(2));
    EXPECT_TRUE(cfg.p_sweep->verifies(4));
    error_of(with_model("", R"(, "p_sweep": {"count": 1})"), ErrorCode::ValidationError);
    error_of(with_model("", R"(, "p": 0.5, "p_sweep": {"count": 3})"), ErrorCode::ValidationError);
}

TEST(ParseConfig, ReversedIntervalNamesField) {
    const auto msg = error_of(R"({"model": {"r": [[2, 1], 0.4, 0.2],
        "a": [[0.5, 0.1, 0.1], [0.1, 0.5, 0.1], [0.2, 0.2, 0.5]], "sigma": [0.1, 0.1, 0.1]}})",
                              ErrorCode::ValidationError);
    EXPECT_NE(msg.find("model.r[0]"), std::string::npos) << msg;
}

TEST(ParseConfig, JumpSizeBelowMinusOne) {
    const auto msg = error_of(with_model(R"(, "jumps": [{"weight": 0.5, "c1": -1.5}])"),
                              ErrorCode::ValidationError);
    EXPECT_NE(msg.find("model.jumps[0].c1"), std::string::npos) << msg;
    EXPECT_NE(msg.find("c > -1"), std::string::npos) << msg;
}

TEST(ParseConfig, Errors) {
    const auto syntax = error_of("{\n  \"model\": {\n  ,\n}", ErrorCode::ParseError);
    EXPECT_NE(syntax.find("line 3"), std::string::npos) << syntax;
    error_of(with_model("", R"(, "p": 1.5)"), ErrorCode::ValidationError);
    error_of(with_model("", R"(, "unknown": 1)"), ErrorCode::ValidationError);
    error_of(with_model(R"(, "extra": 1)"), ErrorCode::ValidationError);
    error_of(with_model("", R"(, "checks": ["nope"])"), ErrorCode::ValidationError);
    error_of(with_model("", R"(, "init": {"x1": 0})"), ErrorCode::ValidationError);
    error_of(with_model("", R"(, "simulation": {"dt": -1})"), ErrorCode::ValidationError);
    error_of(with_model("", R"(, "simulation": {"paths": -3})"), ErrorCode::ValidationError);
    error_of(R"({"model": {"r": [0, 0.4, 0.2],
        "a": [[0.5, 0.1, 0.1], [0.1, 0.5, 0.1], [0.2, 0.2, 0.5]], "sigma": [0.1, 0.1, 0.1]}})",
             ErrorCode::ValidationError);
    error_of(R"({"model": {"r": [0.5, 0.4, 0.2], "a": [[0.5, 0.1], [0.1, 0.5, 0.1]],
        "sigma": [0.1, 0.1, 0.1]}})",
             ErrorCode::ValidationError);
    error_of(R"({"p": 0.5})", ErrorCode::ValidationError);
}
