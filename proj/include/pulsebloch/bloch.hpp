#pragma once

#include <numbers>
#include <stdexcept>

#include "pulsebloch/vec3.hpp"

namespace pulsebloch {

/// Which initial-state angle is being estimated.
enum class Parameter { Theta, Phi };

/// Angles of the initial coherent state |theta, phi>: polar weight
/// theta in [0, pi], azimuthal phase phi in [0, 2*pi]. Construction
/// rejects out-of-range (or NaN) values.
class CoherentStateAngles {
public:
    CoherentStateAngles(double theta, double phi) : theta_(theta), phi_(phi) {
        if (!(theta >= 0.0 && theta <= std::numbers::pi))
            throw std::invalid_argument("CoherentStateAngles: theta must lie in [0, pi]");
        if (!(phi >= 0.0 && phi <= 2.0 * std::numbers::pi))
            throw std::invalid_argument("CoherentStateAngles: phi must lie in [0, 2*pi]");
    }

    double theta() const { return theta_; }
    double phi() const { return phi_; }

private:
    double theta_;
    double phi_;
};

/// Bloch vector (s_x, s_y, s_z) of a qubit state, rho = (I + s.sigma)/2.
/// Unit norm for pure states. The verbatim rectangular-pulse matrix can
/// push the norm past 1, so physicality is checked where it matters
/// (QFI evaluation), not at construction.
struct BlochVector {
    double sx = 0.0;
    double sy = 0.0;
    double sz = 0.0;

    Vec3 vec() const { return {sx, sy, sz}; }
    double norm() const { return pulsebloch::norm(vec()); }
};

// sin/cos of theta with the poles treated exactly: the states at theta = 0
// and theta = pi carry no azimuthal dependence, so their phi-derivatives
// must vanish identically rather than to within rounding of sin(pi).
inline double pole_exact_sin(double theta) {
    if (theta == 0.0 || theta == std::numbers::pi) return 0.0;
    return std::sin(theta);
}

inline double pole_exact_cos(double theta) {
    if (theta == std::numbers::pi) return -1.0;
    return std::cos(theta);
}

/// Initial Bloch vector (sin t cos p, sin t sin p, -cos t); unit norm.
inline BlochVector initial_bloch(const CoherentStateAngles& a) {
    const double st = pole_exact_sin(a.theta());
    const double ct = pole_exact_cos(a.theta());
    return {st * std::cos(a.phi()), st * std::sin(a.phi()), -ct};
}

/// Analytic partial derivative of initial_bloch with respect to theta or phi.
inline Vec3 d_initial_bloch(const CoherentStateAngles& a, Parameter which) {
    const double st = pole_exact_sin(a.theta());
    const double ct = pole_exact_cos(a.theta());
    const double cp = std::cos(a.phi());
    const double sp = std::sin(a.phi());
    if (which == Parameter::Theta) return {ct * cp, ct * sp, st};
    return {-st * sp, st * cp, 0.0};
}

}  // namespace pulsebloch
