#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>

namespace pulsebloch {

/// Constant drive with dimensionless detuning delta = Delta/Omega_0.
/// Scaled time is tau = Omega_0 * t; the envelope is 1 over the whole
/// evolution window.
struct RectangularPulse {
    explicit RectangularPulse(double delta_) : delta(delta_) {
        if (!std::isfinite(delta_))
            throw std::invalid_argument("RectangularPulse: delta must be finite");
    }
    double delta;
};

/// Resonant exponentially decaying drive. Scaled time is gamma_p * t;
/// the drive amplitude in scaled time is (Omega_0/gamma_p) * exp(-gamma_p t).
struct ExponentialPulse {
    explicit ExponentialPulse(double omega0_over_gamma_) : omega0_over_gamma(omega0_over_gamma_) {
        if (!(omega0_over_gamma_ > 0.0) || !std::isfinite(omega0_over_gamma_))
            throw std::invalid_argument("ExponentialPulse: Omega_0/gamma_p must be positive and finite");
    }
    double omega0_over_gamma;
};

/// Resonant sin^2 beating drive. Scaled time is omega_q * t; the drive
/// amplitude in scaled time is omega_prime * sin^2(n tau), n sequential
/// lobes of width pi each.
struct SinSquaredPulse {
    SinSquaredPulse(double omega_prime_, int n_) : omega_prime(omega_prime_), n(n_) {
        if (!(omega_prime_ > 0.0) || !std::isfinite(omega_prime_))
            throw std::invalid_argument("SinSquaredPulse: omega_prime must be positive and finite");
        if (n_ < 1) throw std::invalid_argument("SinSquaredPulse: n must be >= 1");
    }
    double omega_prime;
    int n;
};

using PulseConfig = std::variant<RectangularPulse, ExponentialPulse, SinSquaredPulse>;

// Drive amplitude in the pulse's own scaled time: the x-component of the
// Bloch rotation vector b(tau) = (drive, 0, detuning).
inline double scaled_drive(const RectangularPulse&, double) { return 1.0; }
inline double scaled_drive(const ExponentialPulse& p, double tau) {
    return p.omega0_over_gamma * std::exp(-tau);
}
inline double scaled_drive(const SinSquaredPulse& p, double tau) {
    const double s = std::sin(static_cast<double>(p.n) * tau);
    return p.omega_prime * s * s;
}
inline double scaled_drive(const PulseConfig& pulse, double tau) {
    return std::visit([tau](const auto& p) { return scaled_drive(p, tau); }, pulse);
}

// Dimensionless detuning entering the Bloch rotation vector. The
// exponential and sin^2 closed forms hold at exact resonance only.
inline double scaled_detuning(const RectangularPulse& p) { return p.delta; }
inline double scaled_detuning(const ExponentialPulse&) { return 0.0; }
inline double scaled_detuning(const SinSquaredPulse&) { return 0.0; }
inline double scaled_detuning(const PulseConfig& pulse) {
    return std::visit([](const auto& p) { return scaled_detuning(p); }, pulse);
}

inline std::string pulse_name(const PulseConfig& pulse) {
    struct Namer {
        std::string operator()(const RectangularPulse&) const { return "rect"; }
        std::string operator()(const ExponentialPulse&) const { return "exp"; }
        std::string operator()(const SinSquaredPulse&) const { return "sin2"; }
    };
    return std::visit(Namer{}, pulse);
}

}  // namespace pulsebloch
