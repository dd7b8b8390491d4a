#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "pulsebloch/qfi.hpp"
#include "pulsebloch/sweep.hpp"

using namespace pulsebloch;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("qfi from state: reference values") {
    SECTION("unit tangent on the equator is pure with F=1") {
        for (double beta : {0.0, 0.7, 2.0, 4.5}) {
            const BlochVector s{std::cos(beta), std::sin(beta), 0.0};
            const Vec3 ds{-std::sin(beta), std::cos(beta), 0.0};
            const QfiResult r = qfi_from_state(s, ds);
            CHECK(r.branch == QfiBranch::Pure);
            CHECK(r.value == Approx(1.0).margin(1e-14));
        }
    }
    SECTION("radial derivative of a mixed state picks up the projection term") {
        // |ds|^2 + (s.ds)^2/(1-|s|^2) = 1 + 0.25/0.75 = 4/3
        const QfiResult r = qfi_from_state(BlochVector{0.5, 0.0, 0.0}, Vec3{1.0, 0.0, 0.0});
        CHECK(r.branch == QfiBranch::Mixed);
        CHECK(r.value == Approx(4.0 / 3.0).margin(1e-14));
        CHECK(r.norm == Approx(0.5).margin(1e-15));
    }
    SECTION("orthogonal derivative of a mixed state reduces to |ds|^2") {
        const QfiResult r = qfi_from_state(BlochVector{0.0, 0.0, 0.3}, Vec3{1.0, 0.0, 0.0});
        CHECK(r.branch == QfiBranch::Mixed);
        CHECK(r.value == Approx(1.0).margin(1e-14));
    }
    SECTION("unphysical norms are rejected") {
        CHECK_THROWS_AS(qfi_from_state(BlochVector{1.1, 0.0, 0.0}, Vec3{1.0, 0.0, 0.0}),
                        std::domain_error);
    }
    SECTION("norm just inside the purity window counts as pure") {
        const QfiResult r = qfi_from_state(BlochVector{1.0 - 1e-10, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0});
        CHECK(r.branch == QfiBranch::Pure);
    }
}

TEST_CASE("resonant pulses estimate both angles at full precision") {
    const CoherentStateAngles cases[] = {{0.4, 0.3}, {kPi / 2.0, 1.0}, {2.6, 5.0}};
    for (const auto& angles : cases) {
        for (double tau : {0.0, 1.0, 7.0, 20.0}) {
            for (const PulseConfig& pulse :
                 {PulseConfig(ExponentialPulse(2.0)), PulseConfig(SinSquaredPulse(0.5, 1)),
                  PulseConfig(SinSquaredPulse(1.0, 2))}) {
                const QfiResult ft = qfi_parameter(pulse, angles, Parameter::Theta, tau);
                CHECK(ft.branch == QfiBranch::Pure);
                CHECK(ft.value == Approx(1.0).margin(1e-12));

                const double s = std::sin(angles.theta());
                const QfiResult fp = qfi_parameter(pulse, angles, Parameter::Phi, tau);
                CHECK(fp.value == Approx(s * s).margin(1e-12));
            }
        }
    }
}

TEST_CASE("phase QFI is maximal on the equator") {
    const QfiResult r = qfi_parameter(PulseConfig(SinSquaredPulse(0.5, 1)),
                                      {kPi / 2.0, 2.2}, Parameter::Phi, 5.0);
    CHECK(r.value == Approx(1.0).margin(1e-12));
}

TEST_CASE("exact-mode rectangular QFI is rotation invariant") {
    // F_theta = 1 and F_phi = sin^2(theta) for every delta and tau: the
    // evolution is a rotation and the derivative norms are set at t = 0.
    for (double delta : {0.0, 0.5, 1.0}) {
        for (double tau : {0.0, kPi, 9.0}) {
            for (double theta : {0.3, kPi / 4.0, kPi / 2.0, 2.8}) {
                for (double phi : {0.0, kPi, 4.4}) {
                    const PulseConfig pulse = RectangularPulse(delta);
                    const CoherentStateAngles angles(theta, phi);
                    CHECK(qfi_parameter(pulse, angles, Parameter::Theta, tau).value ==
                          Approx(1.0).margin(1e-12));
                    const double s = std::sin(theta);
                    CHECK(qfi_parameter(pulse, angles, Parameter::Phi, tau).value ==
                          Approx(s * s).margin(1e-12));
                }
            }
        }
    }
}

TEST_CASE("reference rectangular point: delta=0.5, tau=pi, theta=pi/4, phi=pi") {
    const PulseConfig pulse = RectangularPulse(0.5);
    const CoherentStateAngles angles(kPi / 4.0, kPi);
    const QfiResult analytic = qfi_parameter(pulse, angles, Parameter::Theta, kPi);
    CHECK(analytic.value == Approx(1.0).margin(1e-12));
    const QfiResult fd =
        finite_difference_qfi(pulse, angles, Parameter::Theta, kPi, EvolutionMode::Exact);
    CHECK(fd.value == Approx(analytic.value).margin(1e-6));
}

TEST_CASE("finite differences agree with the analytic derivative") {
    std::mt19937 rng(2718281);
    std::uniform_real_distribution<double> theta_dist(0.01, kPi - 0.01);
    std::uniform_real_distribution<double> phi_dist(0.01, 2.0 * kPi - 0.01);
    std::uniform_real_distribution<double> tau_dist(0.0, 20.0);
    std::uniform_real_distribution<double> delta_dist(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        PulseConfig pulse = RectangularPulse(delta_dist(rng));
        if (i % 3 == 1) pulse = ExponentialPulse(0.5 + 2.0 * delta_dist(rng));
        if (i % 3 == 2) pulse = SinSquaredPulse(0.2 + delta_dist(rng), 1 + i % 3);
        const CoherentStateAngles angles(theta_dist(rng), phi_dist(rng));
        const Parameter which = (i % 2 == 0) ? Parameter::Theta : Parameter::Phi;
        const double tau = tau_dist(rng);
        const double analytic = qfi_parameter(pulse, angles, which, tau).value;
        const double fd =
            finite_difference_qfi(pulse, angles, which, tau, EvolutionMode::Exact).value;
        CHECK(std::abs(fd - analytic) < 1e-6);
    }
}

TEST_CASE("finite differences converge at second order") {
    const PulseConfig pulse = RectangularPulse(0.7);
    const CoherentStateAngles angles(1.0, 2.0);
    const double tau = 1.3;
    const double analytic = qfi_parameter(pulse, angles, Parameter::Phi, tau).value;
    const double err_h = std::abs(
        finite_difference_qfi(pulse, angles, Parameter::Phi, tau, EvolutionMode::Exact, 1e-4).value -
        analytic);
    const double err_half = std::abs(
        finite_difference_qfi(pulse, angles, Parameter::Phi, tau, EvolutionMode::Exact, 5e-5).value -
        analytic);
    INFO("err_h=" << err_h << " err_half=" << err_half);
    CHECK(err_h / err_half > 2.5);
    CHECK(err_h / err_half < 6.5);
}

TEST_CASE("boundary finite differences fall back to one-sided and stay finite") {
    const PulseConfig pulse = RectangularPulse(0.4);
    for (double theta : {0.0, kPi}) {
        const QfiResult r = finite_difference_qfi(pulse, {theta, 1.0}, Parameter::Theta, 2.0,
                                                  EvolutionMode::Exact);
        CHECK(std::isfinite(r.value));
    }
    for (double phi : {0.0, 2.0 * kPi}) {
        const QfiResult r =
            finite_difference_qfi(pulse, {1.0, phi}, Parameter::Phi, 2.0, EvolutionMode::Exact);
        CHECK(std::isfinite(r.value));
    }
}

TEST_CASE("fd step validation") {
    const PulseConfig pulse = RectangularPulse(0.0);
    CHECK_THROWS_AS(
        finite_difference_qfi(pulse, {1.0, 1.0}, Parameter::Theta, 1.0, EvolutionMode::Exact, 0.0),
        std::invalid_argument);
}

TEST_CASE("theta-QFI is symmetric under phi -> 2pi - phi") {
    const PulseConfig pulse = RectangularPulse(0.6);
    for (double theta : {0.5, 1.2, 2.4}) {
        for (double phi : {0.3, 1.0, 2.5}) {
            const double a = qfi_parameter(pulse, {theta, phi}, Parameter::Theta, kPi).value;
            const double b =
                qfi_parameter(pulse, {theta, 2.0 * kPi - phi}, Parameter::Theta, kPi).value;
            CHECK(a == Approx(b).margin(1e-12));
        }
    }
}

TEST_CASE("phase is unidentifiable at the poles") {
    for (double theta : {0.0, kPi}) {
        for (const PulseConfig& pulse :
             {PulseConfig(RectangularPulse(0.5)), PulseConfig(ExponentialPulse(2.0)),
              PulseConfig(SinSquaredPulse(0.5, 1))}) {
            for (double tau : {0.0, 1.0, kPi}) {
                const QfiResult r = qfi_parameter(pulse, {theta, 1.7}, Parameter::Phi, tau);
                CHECK(r.value == 0.0);
            }
        }
    }
}

TEST_CASE("paper-verbatim mode surfaces the transcription defect") {
    const PulseConfig pulse = RectangularPulse(0.5);
    SECTION("norm inflation is rejected as unphysical") {
        CHECK_THROWS_AS(
            qfi_parameter(pulse, {kPi / 2.0, 0.0}, Parameter::Theta, kPi, EvolutionMode::PaperVerbatim),
            std::domain_error);
    }
    SECTION("a paper-mode sweep reports mixed and unphysical points") {
        const SweepSpec spec(pulse, Parameter::Theta, LinearGrid(0.0, kPi, 7),
                             LinearGrid(0.0, 2.0 * kPi, 7), LinearGrid(0.0, 1.0, 7), 1.0,
                             EvolutionMode::PaperVerbatim);
        int mixed = 0;
        int unphysical = 0;
        for (const SweepRecord& rec : sweep(spec)) {
            if (rec.branch == "mixed") ++mixed;
            if (rec.branch == "unphysical") {
                ++unphysical;
                CHECK(std::isnan(rec.qfi));
                CHECK(rec.norm > 1.0);
            }
        }
        CHECK(mixed > 0);
        CHECK(unphysical > 0);
    }
    SECTION("the coincidence point delta=0, tau=pi agrees with exact mode") {
        // At delta=0, tau=pi the printed matrix happens to equal the exact
        // rotation, so paper mode evaluates cleanly there.
        const PulseConfig resonant = RectangularPulse(0.0);
        const double exact =
            qfi_parameter(resonant, {1.1, 0.8}, Parameter::Phi, kPi, EvolutionMode::Exact).value;
        const double paper =
            qfi_parameter(resonant, {1.1, 0.8}, Parameter::Phi, kPi, EvolutionMode::PaperVerbatim)
                .value;
        CHECK(paper == Approx(exact).margin(1e-12));
    }
}
