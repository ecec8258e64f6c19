#pragma once

#include <string>

#include "lievc/integrate.hpp"

namespace lievc {

/// A double printed with 17 significant digits (round-trip exact).
std::string format_g17(double value);

/// Header `t,xi_1..xi_n,u_1..u_m,energy,residual,ortho_drift`, one row per
/// recorded sample.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Row-major group matrix entries per sample, header `t,g_1_1..g_s_s`.
/// No-op (no file) when the trajectory carries no group elements.
bool write_group_csv(const std::string& path, const Trajectory& traj);

std::string trajectory_csv_string(const Trajectory& traj);
std::string group_csv_string(const Trajectory& traj);

}  // namespace lievc
