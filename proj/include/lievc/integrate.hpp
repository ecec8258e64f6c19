#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lievc/system.hpp"

namespace lievc {

struct IntegratorConfig {
    double step = 1e-3;     // h, seconds
    double horizon = 1.0;   // T, seconds
    std::string scheme = "rk4";
    int record_stride = 1;

    /// Number of steps, horizon rounded to the nearest multiple of step.
    long long num_steps() const;
    void validate() const;
};

/// Per-sample invariant monitors.
struct MonitorRecord {
    double energy = 0.0;                      // (1/2) <xi, xi>, joules
    double constraint_residual_norm = 0.0;    // max_a |mu^a(xi) - mu^a(a0)|
    double group_orthogonality_drift = 0.0;   // ||R^T R - I||_F
    double control_norm = 0.0;
};

/// Recorded closed-loop (or free) trajectory with group reconstruction.
struct Trajectory {
    std::vector<double> times;
    std::vector<AlgebraVector> states;
    std::vector<Eigen::MatrixXd> group_elements;  // empty when the system has no group model
    std::vector<ControlVector> controls;
    std::vector<MonitorRecord> monitors;

    bool blew_up = false;
    double blow_up_time = 0.0;
    std::string error;

    std::size_t size() const { return times.size(); }
    bool ok() const { return !blew_up; }
};

using VectorField = std::function<AlgebraVector(const AlgebraVector&)>;

/// Classical four-stage Runge-Kutta step. Throws IntegrationError when a
/// stage evaluates to non-finite values.
AlgebraVector rk4_step(const VectorField& field, const AlgebraVector& x, double h);

/// Integrate the reduced dynamics with group reconstruction. The algebra
/// state advances by RK4 on the closed-loop field (on the drift when
/// apply_control is false); the group element advances each step by the
/// exponential of the freshly updated algebra state. A state norm above
/// 1e12 or a non-finite stage truncates the trajectory and sets the error
/// flag; nothing is thrown for blow-ups.
Trajectory simulate(const ControlledSystem& sys, const AlgebraVector& x0,
                    const Eigen::MatrixXd& g0, const IntegratorConfig& cfg,
                    bool apply_control = true);

/// Same, starting from the group identity (or with no group data at all if
/// the system has no group model).
Trajectory simulate(const ControlledSystem& sys, const AlgebraVector& x0,
                    const IntegratorConfig& cfg, bool apply_control = true);

/// Pass/fail thresholds for monitors_report; an unset optional disables the
/// corresponding check.
struct MonitorTolerances {
    std::optional<double> max_constraint_residual = 1e-8;
    std::optional<double> max_orthogonality_drift = 1e-10;
    std::optional<double> max_relative_energy_drift;  // off by default: inputs may do work
};

struct MonitorSummary {
    double max_energy = 0.0, mean_energy = 0.0;
    double max_residual = 0.0, mean_residual = 0.0;
    double max_ortho_drift = 0.0, mean_ortho_drift = 0.0;
    double max_control = 0.0, mean_control = 0.0;
    double relative_energy_drift = 0.0;  // max |E - E(0)| / max(|E(0)|, 1e-300)

    bool residual_ok = true;
    bool ortho_ok = true;
    bool energy_ok = true;
    bool trajectory_ok = true;

    bool passed() const { return residual_ok && ortho_ok && energy_ok && trajectory_ok; }
    std::string report() const;
};

/// Max/mean of each monitor over the trajectory, checked against the
/// tolerances. Throws ContractError on an empty trajectory.
MonitorSummary monitors_report(const Trajectory& traj, const MonitorTolerances& tol = {});

}  // namespace lievc
