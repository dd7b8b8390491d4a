#pragma once

namespace pulsebloch {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pulsebloch
