#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "pulsebloch/qfi.hpp"

namespace pulsebloch {

/// Inclusive linear grid of `count` points from start to stop. A single-point
/// grid sits at start; with count > 1 the last point is exactly stop.
/// Descending grids (start > stop) are traversed in the given order.
struct LinearGrid {
    LinearGrid(double start_, double stop_, int count_) : start(start_), stop(stop_), count(count_) {
        if (!std::isfinite(start_) || !std::isfinite(stop_))
            throw std::invalid_argument("LinearGrid: bounds must be finite");
        if (count_ < 1) throw std::invalid_argument("LinearGrid: count must be >= 1");
    }

    double at(int i) const {
        if (count == 1 || i == 0) return start;
        if (i == count - 1) return stop;
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }

    double start;
    double stop;
    int count;
};

inline const char* parameter_name(Parameter p) { return p == Parameter::Theta ? "theta" : "phi"; }
inline const char* mode_name(EvolutionMode m) { return m == EvolutionMode::Exact ? "exact" : "paper"; }
inline const char* branch_name(QfiBranch b) { return b == QfiBranch::Pure ? "pure" : "mixed"; }

/// Grid evaluation request: one QFI value per (theta, phi, delta) point at a
/// single scaled time. The delta axis replaces the detuning of a
/// rectangular pulse; for the resonant pulses it is carried through to the
/// output but does not enter the dynamics.
struct SweepSpec {
    SweepSpec(PulseConfig pulse_, Parameter parameter_, LinearGrid theta_grid_, LinearGrid phi_grid_,
              LinearGrid delta_grid_, double tau_, EvolutionMode mode_ = EvolutionMode::Exact)
        : pulse(std::move(pulse_)),
          parameter(parameter_),
          theta_grid(theta_grid_),
          phi_grid(phi_grid_),
          delta_grid(delta_grid_),
          tau(tau_),
          mode(mode_) {
        if (!(tau_ >= 0.0) || !std::isfinite(tau_))
            throw std::invalid_argument("SweepSpec: tau must be nonnegative and finite");
        const auto lo = [](const LinearGrid& g) { return std::min(g.start, g.stop); };
        const auto hi = [](const LinearGrid& g) { return std::max(g.start, g.stop); };
        if (lo(theta_grid_) < 0.0 || hi(theta_grid_) > std::numbers::pi)
            throw std::invalid_argument("SweepSpec: theta grid must lie in [0, pi]");
        if (lo(phi_grid_) < 0.0 || hi(phi_grid_) > 2.0 * std::numbers::pi)
            throw std::invalid_argument("SweepSpec: phi grid must lie in [0, 2*pi]");
    }

    PulseConfig pulse;
    Parameter parameter;
    LinearGrid theta_grid;
    LinearGrid phi_grid;
    LinearGrid delta_grid;
    double tau;
    EvolutionMode mode;
};

/// One output row: all grid-point inputs plus the QFI fields. When the
/// paper-verbatim matrix inflates the norm past physical, qfi is NaN and
/// branch is "unphysical" so the defect is visible instead of fatal.
struct SweepRecord {
    double theta = 0.0;
    double phi = 0.0;
    double delta = 0.0;
    double tau = 0.0;
    Parameter parameter = Parameter::Theta;
    EvolutionMode mode = EvolutionMode::Exact;
    double qfi = 0.0;
    std::string branch;
    double norm = 0.0;
};

inline SweepRecord evaluate_sweep_point(const PulseConfig& pulse, const CoherentStateAngles& angles,
                                        Parameter which, double tau, EvolutionMode mode,
                                        double delta_column) {
    const EvolutionMatrix m = evolution_matrix(pulse, tau, mode);
    const BlochVector st = m.apply(initial_bloch(angles));
    const Vec3 dst = m.apply(d_initial_bloch(angles, which));
    SweepRecord rec{angles.theta(), angles.phi(), delta_column, tau, which, mode,
                    std::numeric_limits<double>::quiet_NaN(), "unphysical", st.norm()};
    if (rec.norm <= 1.0 + kPurityTolerance) {
        const QfiResult r = qfi_from_state(st, dst);
        rec.qfi = r.value;
        rec.branch = branch_name(r.branch);
        rec.norm = r.norm;
    }
    return rec;
}

/// Evaluate the full grid in deterministic row-major order: theta outer,
/// phi middle, delta inner. Pure per-point evaluation, so the record order
/// follows the grids and nothing else.
inline std::vector<SweepRecord> sweep(const SweepSpec& spec) {
    std::vector<SweepRecord> out;
    out.reserve(static_cast<std::size_t>(spec.theta_grid.count) *
                static_cast<std::size_t>(spec.phi_grid.count) *
                static_cast<std::size_t>(spec.delta_grid.count));
    for (int it = 0; it < spec.theta_grid.count; ++it) {
        for (int ip = 0; ip < spec.phi_grid.count; ++ip) {
            const CoherentStateAngles angles(spec.theta_grid.at(it), spec.phi_grid.at(ip));
            for (int id = 0; id < spec.delta_grid.count; ++id) {
                const double delta = spec.delta_grid.at(id);
                PulseConfig pulse = spec.pulse;
                if (std::holds_alternative<RectangularPulse>(pulse)) pulse = RectangularPulse(delta);
                out.push_back(
                    evaluate_sweep_point(pulse, angles, spec.parameter, spec.tau, spec.mode, delta));
            }
        }
    }
    return out;
}

}  // namespace pulsebloch
