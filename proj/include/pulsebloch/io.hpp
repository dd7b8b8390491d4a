#pragma once

#include <array>
#include <charconv>
#include <string>

#include "pulsebloch/sweep.hpp"

namespace pulsebloch {

/// Shortest round-trip decimal form of a double: locale-independent,
/// '.' decimal separator, byte-identical across runs.
inline std::string format_double(double v) {
    std::array<char, 32> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

inline constexpr const char* kSweepCsvHeader = "theta,phi,delta,tau,param,mode,qfi,branch,norm";

inline std::string csv_row(const SweepRecord& r) {
    std::string out;
    out.reserve(96);
    out += format_double(r.theta);
    out += ',';
    out += format_double(r.phi);
    out += ',';
    out += format_double(r.delta);
    out += ',';
    out += format_double(r.tau);
    out += ',';
    out += parameter_name(r.parameter);
    out += ',';
    out += mode_name(r.mode);
    out += ',';
    out += format_double(r.qfi);
    out += ',';
    out += r.branch;
    out += ',';
    out += format_double(r.norm);
    return out;
}

inline std::string grid_spec_string(const LinearGrid& g) {
    return format_double(g.start) + ":" + format_double(g.stop) + ":" + std::to_string(g.count);
}

}  // namespace pulsebloch
