#pragma once

// Reference models shared by the engine, asymptotics and acceptance suites.
// Their threshold coefficients at p = 0.5 are:
//   extinction:  b = (-0.1256, -0.1749, -0.2311)
//   partial:     b = (0.4890, -0.1463, -0.545), a31 = 0.3
//   persistence: b = (0.7981, 0.7981, 0.2416)

#include "holling/model.hpp"

namespace holling::fixtures {

inline ImpreciseModel make_model(std::array<Interval, 3> r, std::array<Interval, 3> sigma,
                                 std::array<std::array<Interval, 3>, 3> a, JumpMeasure jumps) {
    ImpreciseModel m;
    m.r_hat = r;
    m.sigma_hat = sigma;
    m.a_hat = a;
    m.jumps = std::move(jumps);
    return m;
}

inline Interval pt(double c) { return Interval::point(c); }

inline ImpreciseModel extinction_model() {
    return make_model({Interval(0.05, 0.1), Interval(0.1, 0.2), Interval(0.1, 0.2)},
                      {pt(0.5), pt(0.7), pt(0.3)},
                      {{{Interval(0.5, 0.6), pt(0.1), pt(0.2)},
                        {pt(0.1), Interval(0.5, 0.6), pt(0.2)},
                        {pt(0.3), pt(0.3), Interval(0.5, 0.6)}}},
                      JumpMeasure({{0.2, {-0.3, -0.3, -0.2}}}));
}

inline ImpreciseModel partial_extinction_model() {
    return make_model({Interval(0.4, 0.6), pt(0.05), pt(0.5)}, {pt(0.2), pt(0.5), pt(0.3)},
                      {{{Interval(0.4, 0.6), pt(0.1), pt(0.2)},
                        {pt(0.1), pt(0.5), pt(0.2)},
                        {pt(0.3), pt(0.3), pt(0.5)}}},
                      JumpMeasure({{0.2, {0.1, -0.3, 0.0}}}));
}

inline ImpreciseModel persistence_model() {
    return make_model({Interval(0.7, 0.9), Interval(0.7, 0.9), pt(0.1)},
                      {pt(0.2), pt(0.2), pt(0.1)},
                      {{{Interval(0.9, 1.1), pt(0.1), pt(0.1)},
                        {pt(0.1), Interval(0.9, 1.1), pt(0.1)},
                        {pt(0.2), pt(0.2), pt(1.0)}}},
                      JumpMeasure({{0.5, {0.05, 0.05, 1.0}}}));
}

/// Logistic prey-1 process r = [0.3, 0.5], a = 0.2, sigma = 0.1 with one
/// jump atom (w = 0.5, c = 0.1); the other species are inert.
inline ImpreciseModel logistic_model() {
    return make_model({Interval(0.3, 0.5), pt(0.1), pt(0.1)}, {pt(0.1), pt(0.0), pt(0.0)},
                      {{{pt(0.2), pt(0.0), pt(0.0)},
                        {pt(0.0), pt(0.2), pt(0.0)},
                        {pt(0.0), pt(0.0), pt(0.2)}}},
                      JumpMeasure({{0.5, {0.1, 0.0, 0.0}}}));
}

} // namespace holling::fixtures
