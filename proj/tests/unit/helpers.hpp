#pragma once

#include <cmath>

#include "quup/constants.hpp"

namespace testutil {

inline bool rel_close(double a, double b, double tol) {
    if (a == b) return true;
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol * scale;
}

// hbar = m = 1 so a unit-momentum beam has lambda0 = 1 and ell0 = 1/gamma.
inline quup::PhysicalConstants natural_units() {
    quup::PhysicalConstants k;
    k.hbar = 1.0;
    k.c = 1e8;
    k.g_std = 1.0;
    k.m_neutron = 1.0;
    return k;
}

// High-precision reference values, frozen from independent evaluation of
// the hyperbolic/exponential closed forms.
inline constexpr double kSechHalf = 0.886818883970074;    // sech(0.5)
inline constexpr double kTanhHalf = 0.46211715726000974;  // tanh(0.5)
inline constexpr double kSechOne = 0.6480542736638855;    // sech(1)
inline constexpr double kExpMinusHalf = 0.6065306597126334;

}
