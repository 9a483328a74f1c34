#pragma once

#include <cmath>
#include <numbers>

namespace mwg {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Tolerance for deciding equality of two angles modulo 2π.
inline constexpr double kAngleTolerance = 1e-12;

/// Representative of `a` modulo 2π in [−π, π).
inline double normalizeAngle(double a) {
    if (a >= -kPi && a < kPi) return a;
    double r = std::fmod(a + kPi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    r -= kPi;
    // fmod can land exactly on +π after the shift for inputs just below −π.
    if (r >= kPi) r -= kTwoPi;
    return r;
}

/// Distance between two angles on the circle, in [0, π].
inline double angleDistance(double a, double b) {
    return std::abs(normalizeAngle(a - b));
}

inline bool anglesEqual(double a, double b, double tol = kAngleTolerance) {
    return angleDistance(a, b) <= tol;
}

inline bool isZeroAngle(double a, double tol = kAngleTolerance) { return anglesEqual(a, 0.0, tol); }
inline bool isPiAngle(double a, double tol = kAngleTolerance) { return anglesEqual(a, kPi, tol); }

}  // namespace mwg
