#pragma once

#include <vector>

#include "dephase/dynamics.hpp"

// Non-Markovianity diagnostics: trace distance of the optimal orthogonal
// state pair, its time derivative (information flow), and the accumulated
// backflow measure.

namespace dephase::witness {

struct WitnessSample {
    double t = 0.0;
    double d = 0.0;     // trace distance, in [0, 1]
    double sigma = 0.0; // dD/dt
    bool backflow = false;
};

struct BlpMeasure {
    double value = 0.0;
};

/// Evolves the plus/minus pair at the sample's gamma and computes the trace
/// distance through the trace norm; throws NumericError if it deviates from
/// |gamma| by more than 1e-10 (the two routes must agree).
WitnessSample trace_distance_pair(const dynamics::CoherenceSample& sample);

/// Fills sigma by second-order finite differences (central inside,
/// one-sided at the ends) and flags backflow at interior points with
/// sigma > 0. Requires >= 3 samples on a strictly increasing uniform grid.
void information_flow(std::vector<WitnessSample>& series);

/// Trapezoidal integral of max(sigma, 0) over the grid.
BlpMeasure blp_measure(const std::vector<double>& sigma, double dt);

} // namespace dephase::witness
