// runner.hpp - sweep drivers producing the CSV dataset products
#pragma once

#include "dickesim/dataset.hpp"

namespace dicke {

// g/g_c sweep of the photon-number heatmap (and optionally the echo map).
Dataset run_scan(RunConfig config);

// Isolated Dicke vs field-only reduction vs open Dicke at one coupling,
// plus the echo overlap between the two isolated dynamics.
Dataset run_compare(RunConfig config);

// Husimi-frame sequence at the configured snapshot times for one coupling.
Dataset run_husimi(RunConfig config);

// Closed-form threshold table across the sweep.
Dataset run_thresholds(RunConfig config);

}  // namespace dicke
