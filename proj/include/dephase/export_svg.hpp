#pragma once

#include <string>
#include <vector>

#include "dephase/trajectory.hpp"

namespace dephase {

struct SvgSeries {
    std::string label;
    std::vector<double> x, y;
    bool dashed = false;
    bool right_axis = false;
};

/// Standalone SVG line plot; dual y-axes when any series is right-axis.
/// Degenerate (constant or single-point) ranges are padded, never divide
/// by zero.
void export_svg_plot(const std::string& title, const std::string& x_label,
                     const std::string& y_label_left,
                     const std::string& y_label_right,
                     const std::vector<SvgSeries>& series,
                     const std::string& path);

/// |Gamma| overlay across environment sizes at fixed g.
void export_svg_fig2(const std::vector<const Trajectory*>& trajs,
                     const std::string& path);

/// |Gamma| overlay across coupling strengths at fixed N.
void export_svg_fig3(const std::vector<const Trajectory*>& trajs,
                     const std::string& path);

/// Coherence (solid, left axis) with information flow (dashed, right axis).
void export_svg_fig4(const Trajectory& traj, const std::string& path);

/// Mean heat (solid, left axis) with coherence (dashed, right axis).
void export_svg_fig5(const Trajectory& traj, const std::string& path);

} // namespace dephase
