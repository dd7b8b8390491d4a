#pragma once

// Umbrella header: Bloch-vector dynamics of a pulsed two-level system and
// quantum Fisher information for the initial-state angles.

#include "pulsebloch/bloch.hpp"
#include "pulsebloch/evolution.hpp"
#include "pulsebloch/io.hpp"
#include "pulsebloch/ode.hpp"
#include "pulsebloch/pulse.hpp"
#include "pulsebloch/qfi.hpp"
#include "pulsebloch/sweep.hpp"
#include "pulsebloch/vec3.hpp"
#include "pulsebloch/version.hpp"
