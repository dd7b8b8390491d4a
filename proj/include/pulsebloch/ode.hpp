#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "pulsebloch/bloch.hpp"
#include "pulsebloch/pulse.hpp"

namespace pulsebloch {

/// Fixed-step integration window in scaled time.
struct OdeSettings {
    OdeSettings(double step_, double t_end_) : step(step_), t_end(t_end_) {
        if (!(step_ > 0.0) || !std::isfinite(step_))
            throw std::invalid_argument("OdeSettings: step must be positive and finite");
        if (!(t_end_ >= 0.0) || !std::isfinite(t_end_))
            throw std::invalid_argument("OdeSettings: t_end must be nonnegative and finite");
        if (t_end_ > 0.0 && step_ > t_end_)
            throw std::invalid_argument("OdeSettings: step must not exceed t_end");
    }
    double step;
    double t_end;
};

/// Right-hand side of the Bloch equation in scaled time,
///   ds/dtau = b x s,  b = (envelope, 0, delta_scaled),
/// written out as (-delta s_y, delta s_x - f s_z, f s_y). The cross-product
/// structure makes s . ds/dtau = 0, so the norm is conserved exactly at the
/// ODE level. Signs are fixed so the resonant solution matches the y-z
/// rotation of evolve_resonant.
inline Vec3 bloch_rhs(const BlochVector& s, double delta_scaled, double envelope) {
    return {-delta_scaled * s.sy, delta_scaled * s.sx - envelope * s.sz, envelope * s.sy};
}

/// Classical fixed-step RK4 from t = 0 to t = settings.t_end.
/// When t_end is not an integer multiple of the requested step, the step is
/// shrunk uniformly (n = ceil(t_end/step) equal steps) so the endpoint is
/// hit exactly and runs stay bit-for-bit reproducible.
/// Throws if the state goes non-finite, which signals a step-size problem.
template <typename Rhs>
Vec3 rk4_integrate(Vec3 s, Rhs&& rhs, const OdeSettings& settings) {
    if (settings.t_end == 0.0) return s;
    const auto n = static_cast<long long>(std::ceil(settings.t_end / settings.step - 1e-12));
    const long long steps = n < 1 ? 1 : n;
    const double h = settings.t_end / static_cast<double>(steps);
    for (long long i = 0; i < steps; ++i) {
        const double t = h * static_cast<double>(i);
        const Vec3 k1 = rhs(t, s);
        const Vec3 k2 = rhs(t + 0.5 * h, s + 0.5 * h * k1);
        const Vec3 k3 = rhs(t + 0.5 * h, s + 0.5 * h * k2);
        const Vec3 k4 = rhs(t + h, s + h * k3);
        s = s + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
        if (!all_finite(s))
            throw std::runtime_error("rk4_integrate: state went non-finite; reduce the step");
    }
    return s;
}

/// Integrate the Bloch equation for `pulse` in its scaled time. Independent
/// of the closed forms in evolution.hpp; used to validate them.
inline BlochVector integrate(const BlochVector& s0, const PulseConfig& pulse,
                             const OdeSettings& settings) {
    const Vec3 out = std::visit(
        [&](const auto& p) {
            const double delta = scaled_detuning(p);
            return rk4_integrate(
                s0.vec(),
                [&p, delta](double t, const Vec3& v) {
                    return bloch_rhs(BlochVector{v.x, v.y, v.z}, delta, scaled_drive(p, t));
                },
                settings);
        },
        pulse);
    return {out.x, out.y, out.z};
}

}  // namespace pulsebloch
