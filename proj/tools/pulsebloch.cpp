// pulsebloch command-line tool.
//
// Commands:
//   evolve        time series of the Bloch vector under one pulse
//   qfi           quantum Fisher information at a single configuration
//   sweep         QFI over a (theta, phi, delta) grid, CSV or JSON
//   reproduce     canned figure grids (fig1..fig4), exact and paper modes
//   oracle-check  closed forms vs fixed-step RK4 over the validation grid
//
// Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pulsebloch/pulsebloch.hpp"

namespace {

using nlohmann::json;
using namespace pulsebloch;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOracleTolerance = 1e-6;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One flat option set shared by all commands; every flag can also come from
// a JSON config file (--config), with explicit flags taking precedence.
struct Options {
    std::string pulse = "rect";
    double delta = 0.0;
    bool delta_given = false;
    double omega_ratio = 2.0;
    double omega_prime = 0.5;
    int n = 1;
    double theta = kPi / 2.0;
    bool theta_given = false;
    double phi = 0.0;
    bool phi_given = false;
    std::optional<double> tau;
    std::string mode = "exact";
    std::string param = "theta";
    std::optional<std::string> grid_theta;
    std::optional<std::string> grid_phi;
    std::optional<std::string> grid_delta;
    std::string out = "-";
    std::string format = "csv";
    double step = 1e-3;
    int samples = 201;
};

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw UsageError(std::string("--") + name + " must be finite");
}

EvolutionMode parse_mode(const std::string& s) {
    if (s == "exact") return EvolutionMode::Exact;
    if (s == "paper") return EvolutionMode::PaperVerbatim;
    throw UsageError("--mode must be 'exact' or 'paper'");
}

Parameter parse_param(const std::string& s) {
    if (s == "theta") return Parameter::Theta;
    if (s == "phi") return Parameter::Phi;
    throw UsageError("--param must be 'theta' or 'phi'");
}

// Grid syntax: "start:stop:count".
LinearGrid parse_grid(const std::string& text, const char* name) {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> stop >> c2 >> count) || c1 != ':' || c2 != ':' || !in.eof())
        throw UsageError(std::string("--grid-") + name + " expects start:stop:count, got '" + text +
                         "'");
    try {
        return LinearGrid(start, stop, count);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--grid-") + name + ": " + e.what());
    }
}

PulseConfig build_pulse(const Options& o, double rect_delta) {
    if (o.pulse == "rect") return RectangularPulse(rect_delta);
    if (o.pulse == "exp") return ExponentialPulse(o.omega_ratio);
    if (o.pulse == "sin2") return SinSquaredPulse(o.omega_prime, o.n);
    throw UsageError("--pulse must be 'rect', 'exp' or 'sin2'");
}

CoherentStateAngles build_angles(const Options& o) {
    try {
        return CoherentStateAngles(o.theta, o.phi);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

double required_tau(const Options& o) {
    if (!o.tau) throw UsageError("--tau is required");
    if (!(*o.tau >= 0.0) || !std::isfinite(*o.tau))
        throw UsageError("--tau must be nonnegative and finite");
    return *o.tau;
}

// Writes to the --out path, or stdout when it is "-". Unopenable paths are
// an I/O failure (exit 3).
class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw IoError("cannot open output file '" + path + "'");
            to_file_ = true;
        }
    }

    std::ostream& stream() { return to_file_ ? file_ : std::cout; }

    void finish() {
        stream().flush();
        if (to_file_ && !file_) throw IoError("write failure on output file");
    }

private:
    std::ofstream file_;
    bool to_file_ = false;
};

// JSON config mirrors the long flag names; unknown keys are rejected so
// typos do not pass silently.
void load_config(const std::string& path, Options& o) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "pulse") o.pulse = value.get<std::string>();
        else if (key == "delta") { o.delta = value.get<double>(); o.delta_given = true; }
        else if (key == "omega-ratio") o.omega_ratio = value.get<double>();
        else if (key == "omega-prime") o.omega_prime = value.get<double>();
        else if (key == "n") o.n = value.get<int>();
        else if (key == "theta") { o.theta = value.get<double>(); o.theta_given = true; }
        else if (key == "phi") { o.phi = value.get<double>(); o.phi_given = true; }
        else if (key == "tau") o.tau = value.get<double>();
        else if (key == "mode") o.mode = value.get<std::string>();
        else if (key == "param") o.param = value.get<std::string>();
        else if (key == "grid-theta") o.grid_theta = value.get<std::string>();
        else if (key == "grid-phi") o.grid_phi = value.get<std::string>();
        else if (key == "grid-delta") o.grid_delta = value.get<std::string>();
        else if (key == "out") o.out = value.get<std::string>();
        else if (key == "format") o.format = value.get<std::string>();
        else if (key == "step") o.step = value.get<double>();
        else if (key == "samples") o.samples = value.get<int>();
        else throw UsageError("unknown config key '" + key + "'");
    }
}

// include_delta is off for grid commands, where the delta axis comes from
// the grid rather than the pulse itself.
void write_pulse_metadata(std::ostream& os, const PulseConfig& pulse, bool include_delta = true) {
    os << "# pulse: " << pulse_name(pulse) << "\n";
    if (const auto* r = std::get_if<RectangularPulse>(&pulse)) {
        if (include_delta) os << "# delta: " << format_double(r->delta) << "\n";
    }
    if (const auto* e = std::get_if<ExponentialPulse>(&pulse))
        os << "# omega-ratio: " << format_double(e->omega0_over_gamma) << "\n";
    if (const auto* s = std::get_if<SinSquaredPulse>(&pulse))
        os << "# omega-prime: " << format_double(s->omega_prime) << "\n# n: " << s->n << "\n";
}

json pulse_json(const PulseConfig& pulse) {
    json j{{"type", pulse_name(pulse)}};
    if (const auto* r = std::get_if<RectangularPulse>(&pulse)) j["delta"] = r->delta;
    if (const auto* e = std::get_if<ExponentialPulse>(&pulse)) j["omega_ratio"] = e->omega0_over_gamma;
    if (const auto* s = std::get_if<SinSquaredPulse>(&pulse)) {
        j["omega_prime"] = s->omega_prime;
        j["n"] = s->n;
    }
    return j;
}

json record_json(const SweepRecord& r) {
    return json{{"theta", r.theta},   {"phi", r.phi},
                {"delta", r.delta},   {"tau", r.tau},
                {"param", parameter_name(r.parameter)}, {"mode", mode_name(r.mode)},
                {"qfi", std::isnan(r.qfi) ? json() : json(r.qfi)}, {"branch", r.branch},
                {"norm", r.norm}};
}

// ---------------------------------------------------------------------------
// evolve

int cmd_evolve(const Options& o) {
    const double tau = required_tau(o);
    const PulseConfig pulse = build_pulse(o, o.delta);
    const CoherentStateAngles angles = build_angles(o);
    const EvolutionMode mode = parse_mode(o.mode);
    if (o.samples < 1) throw UsageError("--samples must be >= 1");
    const BlochVector s0 = initial_bloch(angles);

    const auto sample_tau = [&](int i) {
        if (o.samples == 1) return tau;
        if (i == o.samples - 1) return tau;
        return tau * static_cast<double>(i) / static_cast<double>(o.samples - 1);
    };

    OutputSink sink(o.out);
    std::ostream& os = sink.stream();
    if (o.format == "csv") {
        os << "# pulsebloch " << kVersion << "\n# command: evolve\n";
        write_pulse_metadata(os, pulse);
        os << "# theta: " << format_double(angles.theta()) << "\n";
        os << "# phi: " << format_double(angles.phi()) << "\n";
        os << "# mode: " << mode_name(mode) << "\n";
        os << "# tau: " << format_double(tau) << "\n";
        os << "# samples: " << o.samples << "\n";
        os << "tau,sx,sy,sz,norm\n";
        for (int i = 0; i < o.samples; ++i) {
            const double t = sample_tau(i);
            const BlochVector s = evolve(s0, pulse, t, mode);
            os << format_double(t) << ',' << format_double(s.sx) << ',' << format_double(s.sy)
               << ',' << format_double(s.sz) << ',' << format_double(s.norm()) << "\n";
        }
    } else if (o.format == "json") {
        json rows = json::array();
        for (int i = 0; i < o.samples; ++i) {
            const double t = sample_tau(i);
            const BlochVector s = evolve(s0, pulse, t, mode);
            rows.push_back({{"tau", t}, {"sx", s.sx}, {"sy", s.sy}, {"sz", s.sz}, {"norm", s.norm()}});
        }
        const json doc{{"version", kVersion}, {"command", "evolve"}, {"pulse", pulse_json(pulse)},
                       {"theta", angles.theta()}, {"phi", angles.phi()},
                       {"mode", mode_name(mode)}, {"tau", tau},
                       {"samples", o.samples},    {"rows", rows}};
        os << doc.dump(2) << "\n";
    } else {
        throw UsageError("--format must be 'csv' or 'json'");
    }
    sink.finish();
    return kExitOk;
}

// ---------------------------------------------------------------------------
// qfi

int cmd_qfi(const Options& o) {
    const double tau = required_tau(o);
    const PulseConfig pulse = build_pulse(o, o.delta);
    const CoherentStateAngles angles = build_angles(o);
    const EvolutionMode mode = parse_mode(o.mode);
    const Parameter param = parse_param(o.param);

    const SweepRecord rec = evaluate_sweep_point(pulse, angles, param, tau, mode, o.delta);

    OutputSink sink(o.out);
    std::ostream& os = sink.stream();
    if (o.format == "csv") {
        os << "# pulsebloch " << kVersion << "\n# command: qfi\n";
        write_pulse_metadata(os, pulse);
        os << "# mode: " << mode_name(mode) << "\n";
        os << "# tau: " << format_double(tau) << "\n";
        os << "# branch: per-row 'branch' column (pure|mixed|unphysical)\n";
        os << kSweepCsvHeader << "\n" << csv_row(rec) << "\n";
    } else if (o.format == "json") {
        json doc{{"version", kVersion}, {"command", "qfi"}, {"pulse", pulse_json(pulse)},
                 {"mode", mode_name(mode)}, {"tau", tau}, {"record", record_json(rec)}};
        os << doc.dump(2) << "\n";
    } else {
        throw UsageError("--format must be 'csv' or 'json'");
    }
    sink.finish();

    if (rec.branch == "unphysical") {
        std::cerr << "pulsebloch: |s| = " << format_double(rec.norm)
                  << " > 1; the paper-verbatim matrix produced an unphysical state\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

LinearGrid angle_grid(const std::optional<std::string>& flag, bool point_given, double point,
                      double def_lo, double def_hi, int def_count, const char* name) {
    if (flag) return parse_grid(*flag, name);
    if (point_given) return LinearGrid(point, point, 1);
    return LinearGrid(def_lo, def_hi, def_count);
}

SweepSpec build_sweep_spec(const Options& o) {
    const double tau = required_tau(o);
    const PulseConfig pulse = build_pulse(o, o.delta);
    const Parameter param = parse_param(o.param);
    const EvolutionMode mode = parse_mode(o.mode);

    const LinearGrid theta_grid =
        angle_grid(o.grid_theta, o.theta_given, o.theta, 0.0, kPi, 51, "theta");
    const LinearGrid phi_grid = angle_grid(o.grid_phi, o.phi_given, o.phi, 0.0, kTwoPi, 101, "phi");

    const bool rect = std::holds_alternative<RectangularPulse>(pulse);
    LinearGrid delta_grid = rect ? LinearGrid(0.0, 1.0, 51) : LinearGrid(0.0, 0.0, 1);
    if (o.grid_delta) delta_grid = parse_grid(*o.grid_delta, "delta");
    else if (o.delta_given) delta_grid = LinearGrid(o.delta, o.delta, 1);

    try {
        return SweepSpec(pulse, param, theta_grid, phi_grid, delta_grid, tau, mode);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void write_sweep_csv(std::ostream& os, const char* command, const SweepSpec& spec,
                     const std::vector<SweepRecord>& records,
                     const std::vector<std::string>& extra_metadata) {
    os << "# pulsebloch " << kVersion << "\n# command: " << command << "\n";
    write_pulse_metadata(os, spec.pulse, /*include_delta=*/false);
    os << "# param: " << parameter_name(spec.parameter) << "\n";
    for (const std::string& line : extra_metadata) os << "# " << line << "\n";
    os << "# tau: " << format_double(spec.tau) << "\n";
    os << "# grid-theta: " << grid_spec_string(spec.theta_grid) << "\n";
    os << "# grid-phi: " << grid_spec_string(spec.phi_grid) << "\n";
    os << "# grid-delta: " << grid_spec_string(spec.delta_grid) << "\n";
    os << "# branch: per-row 'branch' column (pure|mixed|unphysical)\n";
    os << kSweepCsvHeader << "\n";
    for (const SweepRecord& r : records) os << csv_row(r) << "\n";
}

int cmd_sweep(const Options& o) {
    const SweepSpec spec = build_sweep_spec(o);
    const std::vector<SweepRecord> records = sweep(spec);

    OutputSink sink(o.out);
    std::ostream& os = sink.stream();
    if (o.format == "csv") {
        std::vector<std::string> extra{std::string("mode: ") + mode_name(spec.mode)};
        write_sweep_csv(os, "sweep", spec, records, extra);
    } else if (o.format == "json") {
        json recs = json::array();
        for (const SweepRecord& r : records) recs.push_back(record_json(r));
        const json doc{{"version", kVersion},
                       {"command", "sweep"},
                       {"pulse", pulse_json(spec.pulse)},
                       {"param", parameter_name(spec.parameter)},
                       {"mode", mode_name(spec.mode)},
                       {"tau", spec.tau},
                       {"grid_theta", grid_spec_string(spec.theta_grid)},
                       {"grid_phi", grid_spec_string(spec.phi_grid)},
                       {"grid_delta", grid_spec_string(spec.delta_grid)},
                       {"records", recs}};
        os << doc.dump(2) << "\n";
    } else {
        throw UsageError("--format must be 'csv' or 'json'");
    }
    sink.finish();
    return kExitOk;
}

// ---------------------------------------------------------------------------
// reproduce

struct FigureSpec {
    Parameter param;
    LinearGrid theta;
    LinearGrid phi;
    LinearGrid delta;
    const char* omega_values;
};

FigureSpec figure_spec(const std::string& figure) {
    const LinearGrid theta_full(0.0, kPi, 51);
    const LinearGrid phi_full(0.0, kTwoPi, 101);
    const LinearGrid delta_full(0.0, 1.0, 51);
    if (figure == "fig1")
        return {Parameter::Theta, theta_full, LinearGrid(kPi, kPi, 1), delta_full, "0.3,0.9"};
    if (figure == "fig2")
        return {Parameter::Theta, theta_full, LinearGrid(kPi / 4.0, kPi / 2.0, 2), delta_full, "0.5"};
    if (figure == "fig3")
        return {Parameter::Phi, LinearGrid(kPi / 4.0, kPi / 4.0, 1), phi_full, delta_full,
                "0.3,0.6,0.9"};
    if (figure == "fig4")
        return {Parameter::Phi, LinearGrid(kPi / 2.0, kPi / 2.0, 1), phi_full, delta_full,
                "0.3,0.6,0.9"};
    throw UsageError("unknown figure id '" + figure + "' (expected fig1..fig4)");
}

int cmd_reproduce(const Options& o, const std::string& figure) {
    if (o.format != "csv") throw UsageError("reproduce emits CSV only");
    const FigureSpec fig = figure_spec(figure);
    const double tau = o.tau ? *o.tau : kPi;
    if (!(tau >= 0.0) || !std::isfinite(tau))
        throw UsageError("--tau must be nonnegative and finite");

    const LinearGrid theta_grid = o.grid_theta ? parse_grid(*o.grid_theta, "theta") : fig.theta;
    const LinearGrid phi_grid = o.grid_phi ? parse_grid(*o.grid_phi, "phi") : fig.phi;
    const LinearGrid delta_grid = o.grid_delta ? parse_grid(*o.grid_delta, "delta") : fig.delta;

    const PulseConfig pulse = RectangularPulse(0.0);
    SweepSpec exact_spec(pulse, fig.param, theta_grid, phi_grid, delta_grid, tau,
                         EvolutionMode::Exact);
    SweepSpec paper_spec(pulse, fig.param, theta_grid, phi_grid, delta_grid, tau,
                         EvolutionMode::PaperVerbatim);
    const std::vector<SweepRecord> exact_records = sweep(exact_spec);
    const std::vector<SweepRecord> paper_records = sweep(paper_spec);

    // Two adjacent rows per grid point so the modes diff side by side.
    std::vector<SweepRecord> interleaved;
    interleaved.reserve(exact_records.size() * 2);
    for (std::size_t i = 0; i < exact_records.size(); ++i) {
        interleaved.push_back(exact_records[i]);
        interleaved.push_back(paper_records[i]);
    }

    OutputSink sink(o.out);
    const std::vector<std::string> extra{
        std::string("figure: ") + figure,
        "modes: exact,paper (two rows per grid point)",
        std::string("tau-note: assumed evaluation time; override with --tau"),
        std::string("omega-prime: ") + fig.omega_values +
            " (figure strength values, metadata only: the rectangular closed form at fixed "
            "delta and tau does not depend on them)",
    };
    write_sweep_csv(sink.stream(), "reproduce", exact_spec, interleaved, extra);
    sink.finish();
    return kExitOk;
}

// ---------------------------------------------------------------------------
// oracle-check

int cmd_oracle_check(const Options& o) {
    const EvolutionMode mode = parse_mode(o.mode);
    require_finite(o.step, "step");
    if (!(o.step > 0.0)) throw UsageError("--step must be positive");

    const double rect_delta = o.delta_given ? o.delta : 0.5;
    const std::vector<PulseConfig> pulses{RectangularPulse(rect_delta),
                                          ExponentialPulse(o.omega_ratio),
                                          SinSquaredPulse(o.omega_prime, o.n)};

    const LinearGrid theta_grid(0.0, kPi, 10);
    const LinearGrid phi_grid(0.0, kTwoPi, 10);
    const LinearGrid tau_grid(0.0, 20.0, 10);

    json per_pulse = json::object();
    double global_max = 0.0;
    for (const PulseConfig& pulse : pulses) {
        double pulse_max = 0.0;
        for (int it = 0; it < theta_grid.count; ++it) {
            for (int ip = 0; ip < phi_grid.count; ++ip) {
                const BlochVector s0 = initial_bloch({theta_grid.at(it), phi_grid.at(ip)});
                for (int k = 0; k < tau_grid.count; ++k) {
                    const double tau = tau_grid.at(k);
                    const BlochVector closed = evolve(s0, pulse, tau, mode);
                    BlochVector numeric = s0;
                    if (tau > 0.0) {
                        try {
                            numeric = integrate(s0, pulse, OdeSettings(o.step, tau));
                        } catch (const std::invalid_argument& e) {
                            throw UsageError(e.what());
                        }
                    }
                    const double dev =
                        std::max({std::abs(closed.sx - numeric.sx), std::abs(closed.sy - numeric.sy),
                                  std::abs(closed.sz - numeric.sz)});
                    pulse_max = std::max(pulse_max, dev);
                }
            }
        }
        json entry{{"max_deviation", pulse_max}};
        if (std::holds_alternative<RectangularPulse>(pulse)) entry["delta"] = rect_delta;
        per_pulse[pulse_name(pulse)] = entry;
        global_max = std::max(global_max, pulse_max);
    }

    const bool pass = global_max <= kOracleTolerance;
    const json doc{{"version", kVersion},
                   {"command", "oracle-check"},
                   {"mode", mode_name(mode)},
                   {"step", o.step},
                   {"tolerance", kOracleTolerance},
                   {"grid", {{"theta", theta_grid.count}, {"phi", phi_grid.count},
                             {"tau", tau_grid.count}, {"tau_max", 20.0}}},
                   {"pulses", per_pulse},
                   {"max_deviation", global_max},
                   {"pass", pass}};

    OutputSink sink(o.out);
    sink.stream() << doc.dump(2) << "\n";
    sink.finish();

    if (!pass) {
        std::cerr << "pulsebloch: oracle check failed, max deviation " << format_double(global_max)
                  << " > " << format_double(kOracleTolerance) << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

void add_common_options(CLI::App* cmd, Options& o, std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file mirroring the flags");
    cmd->add_option("--pulse", o.pulse, "pulse shape: rect|exp|sin2");
    cmd->add_option("--delta", o.delta, "dimensionless detuning (rect)")
        ->each([&o](const std::string&) { o.delta_given = true; });
    cmd->add_option("--omega-ratio", o.omega_ratio, "Omega_0/gamma_p (exp)");
    cmd->add_option("--omega-prime", o.omega_prime, "Omega_0/omega_q (sin2)");
    cmd->add_option("--n", o.n, "beating index n >= 1 (sin2)");
    cmd->add_option("--theta", o.theta, "initial weight angle in [0, pi]")
        ->each([&o](const std::string&) { o.theta_given = true; });
    cmd->add_option("--phi", o.phi, "initial phase angle in [0, 2*pi]")
        ->each([&o](const std::string&) { o.phi_given = true; });
    cmd->add_option("--tau", o.tau, "scaled evaluation time");
    cmd->add_option("--mode", o.mode, "evolution mode: exact|paper");
    cmd->add_option("--param", o.param, "estimated parameter: theta|phi");
    cmd->add_option("--grid-theta", o.grid_theta, "theta grid start:stop:count");
    cmd->add_option("--grid-phi", o.grid_phi, "phi grid start:stop:count");
    cmd->add_option("--grid-delta", o.grid_delta, "delta grid start:stop:count");
    cmd->add_option("--out", o.out, "output path ('-' for stdout)");
    cmd->add_option("--format", o.format, "output format: csv|json");
    cmd->add_option("--step", o.step, "RK4 step (oracle-check)");
    cmd->add_option("--samples", o.samples, "sample count (evolve)");
}

}  // namespace

int main(int argc, char** argv) {
    Options opts;
    std::string config_path;

    // Resolve --config first so explicit flags override file values.
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) config_path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0) config_path = arg.substr(9);
    }
    try {
        if (!config_path.empty()) load_config(config_path, opts);
    } catch (const UsageError& e) {
        std::cerr << "pulsebloch: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "pulsebloch: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "pulsebloch: config error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App app{"Bloch-vector dynamics and quantum Fisher information for a pulsed qubit"};
    app.require_subcommand(1);

    std::string ignored_config;
    CLI::App* evolve_cmd = app.add_subcommand("evolve", "Bloch-vector time series");
    CLI::App* qfi_cmd = app.add_subcommand("qfi", "QFI at one configuration");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "QFI over a parameter grid");
    CLI::App* reproduce_cmd = app.add_subcommand("reproduce", "canned figure grids (fig1..fig4)");
    CLI::App* oracle_cmd = app.add_subcommand("oracle-check", "closed forms vs RK4 integration");

    std::string figure;
    reproduce_cmd->add_option("figure", figure, "figure id: fig1|fig2|fig3|fig4")->required();

    for (CLI::App* cmd : {evolve_cmd, qfi_cmd, sweep_cmd, reproduce_cmd, oracle_cmd})
        add_common_options(cmd, opts, ignored_config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        require_finite(opts.delta, "delta");
        require_finite(opts.omega_ratio, "omega-ratio");
        require_finite(opts.omega_prime, "omega-prime");
        require_finite(opts.theta, "theta");
        require_finite(opts.phi, "phi");

        if (evolve_cmd->parsed()) return cmd_evolve(opts);
        if (qfi_cmd->parsed()) return cmd_qfi(opts);
        if (sweep_cmd->parsed()) return cmd_sweep(opts);
        if (reproduce_cmd->parsed()) return cmd_reproduce(opts, figure);
        if (oracle_cmd->parsed()) return cmd_oracle_check(opts);
        std::cerr << "pulsebloch: no command given\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "pulsebloch: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "pulsebloch: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "pulsebloch: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "pulsebloch: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}
