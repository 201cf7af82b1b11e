#pragma once

#include <string>
#include <vector>

#include "dephase/trajectory.hpp"

namespace dephase {

/// Exact column set of the trajectory tables.
const std::string& csv_header();

/// Full-double-precision scientific notation, period decimal separator,
/// newline-terminated rows. Values round-trip bit-identically.
void export_csv(const Trajectory& traj, const std::string& path);

/// Parse-back used by round-trip checks; throws IoError on malformed input.
std::vector<TrajectoryRow> read_csv(const std::string& path);

} // namespace dephase
