#pragma once

// Umbrella header for the discrete phytoplankton-zooplankton map library.

#include "plankton/params.hpp"
#include "plankton/model.hpp"
#include "plankton/fixed_points.hpp"
#include "plankton/stability.hpp"
#include "plankton/regions.hpp"
#include "plankton/dynamics.hpp"
