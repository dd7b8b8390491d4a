#pragma once

#include <array>
#include <cmath>

#include "pulsebloch/bloch.hpp"
#include "pulsebloch/pulse.hpp"

namespace pulsebloch {

/// Which closed form drives the rectangular-pulse evolution.
///   Exact         — rotation solving the Bloch equation ds/dtau = (1,0,delta) x s.
///   PaperVerbatim — the printed coefficient matrix transcribed as published;
///                   not orthogonal, kept for side-by-side comparison.
enum class EvolutionMode { Exact, PaperVerbatim };

/// 3x3 real matrix mapping the initial Bloch vector to the evolved one.
/// Every evolution in this model is linear in s(0) with a matrix that does
/// not depend on the estimated angles, which is what makes the analytic
/// parameter derivatives below exact.
struct EvolutionMatrix {
    std::array<std::array<double, 3>, 3> m{};

    Vec3 apply(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    BlochVector apply(const BlochVector& s) const {
        const Vec3 v = apply(s.vec());
        return {v.x, v.y, v.z};
    }

    static EvolutionMatrix identity() {
        return {{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}};
    }
};

inline EvolutionMatrix operator*(const EvolutionMatrix& a, const EvolutionMatrix& b) {
    EvolutionMatrix out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j];
    return out;
}

/// Largest absolute entry of M^T M - I. Zero (to rounding) iff M is orthogonal.
inline double orthogonality_defect(const EvolutionMatrix& em) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double e = (i == j) ? -1.0 : 0.0;
            for (int k = 0; k < 3; ++k) e += em.m[k][i] * em.m[k][j];
            worst = std::max(worst, std::abs(e));
        }
    }
    return worst;
}

inline double determinant(const EvolutionMatrix& em) {
    const auto& m = em.m;
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Exact rectangular-pulse evolution: the rotation by angle tau*sqrt(eta)
/// about the unit axis (1, 0, delta)/sqrt(eta), eta = 1 + delta^2. This is
/// the solution of ds/dtau = (1, 0, delta) x s for constant drive, built
/// with the Rodrigues formula. Orthogonal with determinant +1; at delta = 0
/// it reduces to the resonant y-z rotation.
inline EvolutionMatrix rect_rotation_exact(double delta, double tau) {
    const double eta = 1.0 + delta * delta;
    const double root = std::sqrt(eta);
    const double ux = 1.0 / root;
    const double uz = delta / root;
    const double angle = tau * root;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double k = 1.0 - c;
    EvolutionMatrix em;
    em.m[0] = {c + k * ux * ux, -s * uz, k * ux * uz};
    em.m[1] = {s * uz, c, -s * ux};
    em.m[2] = {k * ux * uz, s * ux, c + k * uz * uz};
    return em;
}

/// Verbatim transcription of the published closed-form coefficient matrix
/// for the detuned rectangular pulse. The s_z row agrees with the exact
/// rotation, but the printed s_x and s_y rows are inconsistent with any
/// rotation: the matrix is generally not orthogonal, does not reduce to the
/// identity at tau = 0, and can inflate the Bloch norm past 1. Retained
/// behind EvolutionMode::PaperVerbatim so it can be probed side by side
/// with the exact mode.
inline EvolutionMatrix rect_rotation_paper(double delta, double tau) {
    const double eta = 1.0 + delta * delta;
    const double root = std::sqrt(eta);
    const double c = std::cos(tau * root);
    const double s = std::sin(tau * root);
    EvolutionMatrix em;
    em.m[0] = {1.0 / eta + delta * delta * c - delta * s / root,
               (1.0 + 2.0 * delta * delta) / (2.0 * eta) + c / (2.0 * eta) + delta * s / root,
               delta / eta * (1.0 - c) + s / root};
    em.m[1] = {1.0 / (2.0 * eta) + (eta + delta * delta) / (2.0 * eta) * c + s / root,
               c - delta / root * s,
               delta / eta * (1.0 - c) - delta / root * s};
    em.m[2] = {delta / eta * (1.0 - c), s / root, delta * delta / eta + c / eta};
    return em;
}

/// Accumulated rotation angle of the resonant exponential pulse at scaled
/// time gamma_t = gamma_p * t: (Omega_0/gamma_p)(1 - exp(-gamma_p t)).
/// Monotone nondecreasing, saturating at Omega_0/gamma_p.
inline double resonant_angle_exponential(const ExponentialPulse& p, double gamma_t) {
    return p.omega0_over_gamma * (-std::expm1(-gamma_t));
}

/// Accumulated rotation angle of the resonant sin^2 pulse at scaled time
/// tau = omega_q * t: (omega_prime/2)(tau - sin(2 n tau)/(2n)).
inline double resonant_angle_sin2(const SinSquaredPulse& p, double tau) {
    const double two_n = 2.0 * static_cast<double>(p.n);
    return 0.5 * p.omega_prime * (tau - std::sin(two_n * tau) / two_n);
}

/// Resonant evolution: rotation by `angle` in the y-z plane,
///   s_y(t) = cos(angle) s_y(0) - sin(angle) s_z(0)
///   s_z(t) = cos(angle) s_z(0) + sin(angle) s_y(0)
/// with s_x unchanged. Norm preserving.
inline BlochVector evolve_resonant(const BlochVector& s0, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {s0.sx, c * s0.sy - s * s0.sz, c * s0.sz + s * s0.sy};
}

/// Rotation matrix form of evolve_resonant.
inline EvolutionMatrix resonant_rotation(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    EvolutionMatrix em;
    em.m[0] = {1.0, 0.0, 0.0};
    em.m[1] = {0.0, c, -s};
    em.m[2] = {0.0, s, c};
    return em;
}

/// Closed-form evolution matrix for any pulse at scaled time tau. The mode
/// only distinguishes the rectangular case; the resonant closed forms are
/// already rotations and are identical in both modes.
inline EvolutionMatrix evolution_matrix(const PulseConfig& pulse, double tau, EvolutionMode mode) {
    struct Builder {
        double tau;
        EvolutionMode mode;
        EvolutionMatrix operator()(const RectangularPulse& p) const {
            return mode == EvolutionMode::Exact ? rect_rotation_exact(p.delta, tau)
                                                : rect_rotation_paper(p.delta, tau);
        }
        EvolutionMatrix operator()(const ExponentialPulse& p) const {
            return resonant_rotation(resonant_angle_exponential(p, tau));
        }
        EvolutionMatrix operator()(const SinSquaredPulse& p) const {
            return resonant_rotation(resonant_angle_sin2(p, tau));
        }
    };
    return std::visit(Builder{tau, mode}, pulse);
}

/// Evolve a Bloch vector with the closed form for `pulse` at scaled time tau.
inline BlochVector evolve(const BlochVector& s0, const PulseConfig& pulse, double tau,
                          EvolutionMode mode = EvolutionMode::Exact) {
    return evolution_matrix(pulse, tau, mode).apply(s0);
}

}  // namespace pulsebloch
