#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pulsebloch/bloch.hpp"
#include "pulsebloch/evolution.hpp"
#include "pulsebloch/pulse.hpp"

namespace pulsebloch {

enum class QfiBranch { Pure, Mixed };

/// Quantum Fisher information for one estimated angle, plus which branch of
/// the single-qubit formula produced it and the Bloch norm at the
/// evaluation point.
struct QfiResult {
    double value = 0.0;
    QfiBranch branch = QfiBranch::Pure;
    double norm = 0.0;
};

/// Norm window around 1 inside which a state counts as pure. The mixed
/// denominator 1 - |s|^2 is numerically meaningless any closer to 1.
inline constexpr double kPurityTolerance = 1e-9;

/// Default finite-difference step in radians.
inline constexpr double kDefaultFdStep = 1e-5;

/// Single-qubit QFI from the Bloch vector s and its parameter derivative ds:
///   pure  (|s| >= 1 - tol):  F = |ds|^2
///   mixed (|s| <  1 - tol):  F = |ds|^2 + (s . ds)^2 / (1 - |s|^2)
/// Rejects |s| > 1 + tol as unphysical input.
inline QfiResult qfi_from_state(const BlochVector& s, const Vec3& ds) {
    const double n = s.norm();
    if (n > 1.0 + kPurityTolerance)
        throw std::domain_error("qfi_from_state: |s| > 1 is not a physical state");
    const double dsq = dot(ds, ds);
    if (n >= 1.0 - kPurityTolerance) return {dsq, QfiBranch::Pure, n};
    const double sds = dot(s.vec(), ds);
    return {dsq + sds * sds / (1.0 - n * n), QfiBranch::Mixed, n};
}

/// QFI of the evolved state with respect to one initial-state angle.
/// The evolution matrix M is independent of (theta, phi), so
///   s(t) = M s(0)   and   ds(t)/dbeta = M ds(0)/dbeta
/// exactly. In exact mode M is a rotation, hence |s(t)| = 1 and the pure
/// branch always applies; paper-verbatim mode can inflate the norm, in
/// which case the unphysical-input error from qfi_from_state propagates.
inline QfiResult qfi_parameter(const PulseConfig& pulse, const CoherentStateAngles& angles,
                               Parameter which, double tau,
                               EvolutionMode mode = EvolutionMode::Exact) {
    const EvolutionMatrix m = evolution_matrix(pulse, tau, mode);
    const BlochVector st = m.apply(initial_bloch(angles));
    const Vec3 dst = m.apply(d_initial_bloch(angles, which));
    if (mode == EvolutionMode::Exact && std::abs(dot(st.vec(), dst)) > kPurityTolerance)
        throw std::logic_error("qfi_parameter: derivative not tangent in exact mode");
    return qfi_from_state(st, dst);
}

/// Same contract as qfi_parameter with the derivative taken by central
/// finite differences through the full evolution,
///   ds(t)/dbeta ~ [s(t; beta + h) - s(t; beta - h)] / (2h).
/// Within h of the domain boundary of the varied angle a one-sided
/// difference is used instead.
inline QfiResult finite_difference_qfi(const PulseConfig& pulse, const CoherentStateAngles& angles,
                                       Parameter which, double tau, EvolutionMode mode,
                                       double h = kDefaultFdStep) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument("finite_difference_qfi: h must be positive and finite");

    const double lo = 0.0;
    const double hi = (which == Parameter::Theta) ? std::numbers::pi : 2.0 * std::numbers::pi;
    const double beta = (which == Parameter::Theta) ? angles.theta() : angles.phi();

    const auto state_at = [&](double b) {
        const CoherentStateAngles a = (which == Parameter::Theta)
                                          ? CoherentStateAngles(b, angles.phi())
                                          : CoherentStateAngles(angles.theta(), b);
        return evolve(initial_bloch(a), pulse, tau, mode).vec();
    };

    Vec3 ds;
    if (beta - h >= lo && beta + h <= hi) {
        ds = (1.0 / (2.0 * h)) * (state_at(beta + h) - state_at(beta - h));
    } else if (beta + h <= hi) {
        ds = (1.0 / h) * (state_at(beta + h) - state_at(beta));
    } else {
        ds = (1.0 / h) * (state_at(beta) - state_at(beta - h));
    }
    return qfi_from_state(evolve(initial_bloch(angles), pulse, tau, mode), ds);
}

}  // namespace pulsebloch
