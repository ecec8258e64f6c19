#include "lievc/integrate.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lievc/errors.hpp"

namespace lievc {

namespace {
constexpr double kBlowUpNorm = 1e12;
}

long long IntegratorConfig::num_steps() const
{
    return std::llround(horizon / step);
}

void IntegratorConfig::validate() const
{
    if (!(step > 0.0)) throw ContractError("integrator: step must be positive");
    if (!(horizon >= step)) throw ContractError("integrator: horizon must be at least one step");
    if (scheme != "rk4") throw ContractError("integrator: unknown scheme '" + scheme + "'");
    if (record_stride < 1) throw ContractError("integrator: record_stride must be >= 1");
    if (horizon / step > 9.0e15) throw ContractError("integrator: horizon/step overflows step count");
}

AlgebraVector rk4_step(const VectorField& field, const AlgebraVector& x, double h)
{
    const AlgebraVector k1 = field(x);
    const AlgebraVector k2 = field(x + 0.5 * h * k1);
    const AlgebraVector k3 = field(x + 0.5 * h * k2);
    const AlgebraVector k4 = field(x + h * k3);
    if (!k1.allFinite() || !k2.allFinite() || !k3.allFinite() || !k4.allFinite())
        throw IntegrationError("rk4_step: non-finite stage value", std::numeric_limits<double>::quiet_NaN());
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

MonitorRecord make_record(const ControlledSystem& sys, const AlgebraVector& x,
                          const ControlVector& u, const Eigen::MatrixXd* g)
{
    MonitorRecord rec;
    rec.energy = sys.algebra().kinetic_energy(x);
    const Eigen::VectorXd residual = sys.constraint_residual(x);
    rec.constraint_residual_norm = residual.size() > 0 ? residual.cwiseAbs().maxCoeff() : 0.0;
    rec.group_orthogonality_drift = (g && sys.group()) ? sys.group()->orthogonality_drift(*g) : 0.0;
    rec.control_norm = u.size() > 0 ? u.norm() : 0.0;
    return rec;
}

}  // namespace

Trajectory simulate(const ControlledSystem& sys, const AlgebraVector& x0,
                    const Eigen::MatrixXd& g0, const IntegratorConfig& cfg, bool apply_control)
{
    cfg.validate();
    if (x0.size() != sys.algebra().dim())
        throw DimensionError(sys.label() + ": initial state does not match the algebra dimension");
    if (!x0.allFinite()) throw ContractError(sys.label() + ": initial state is not finite");

    const bool with_group = sys.group().has_value();
    if (with_group && !sys.group()->in_group(g0))
        throw ContractError(sys.label() + ": initial group element is not in the model group");

    const VectorField field = [&](const AlgebraVector& x) {
        return apply_control ? sys.closed_loop_field(x) : sys.drift(x);
    };
    const auto control_at = [&](const AlgebraVector& x) {
        return apply_control ? sys.control_law(x) : ControlVector::Zero(sys.num_inputs());
    };

    const long long steps = cfg.num_steps();
    Trajectory traj;
    const std::size_t expected = static_cast<std::size_t>(steps / cfg.record_stride) + 2;
    traj.times.reserve(expected);
    traj.states.reserve(expected);
    traj.controls.reserve(expected);
    traj.monitors.reserve(expected);
    if (with_group) traj.group_elements.reserve(expected);

    AlgebraVector x = x0;
    Eigen::MatrixXd g = with_group ? g0 : Eigen::MatrixXd();

    const auto record = [&](double t) {
        const ControlVector u = control_at(x);
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.controls.push_back(u);
        if (with_group) traj.group_elements.push_back(g);
        traj.monitors.push_back(make_record(sys, x, u, with_group ? &g : nullptr));
    };

    record(0.0);
    for (long long s = 1; s <= steps; ++s) {
        const double t = static_cast<double>(s) * cfg.step;
        AlgebraVector next;
        try {
            next = rk4_step(field, x, cfg.step);
        } catch (const IntegrationError&) {
            traj.blew_up = true;
            traj.blow_up_time = t;
            traj.error = "non-finite stage at t = " + std::to_string(t);
            break;
        }
        if (!next.allFinite() || next.norm() > kBlowUpNorm) {
            traj.blew_up = true;
            traj.blow_up_time = t;
            traj.error = "state norm exceeded 1e12 at t = " + std::to_string(t);
            break;
        }
        x = next;
        if (with_group) g = group_step(*sys.group(), g, x, cfg.step, sys.sigma());
        if (s % cfg.record_stride == 0 || s == steps) record(t);
    }
    return traj;
}

Trajectory simulate(const ControlledSystem& sys, const AlgebraVector& x0,
                    const IntegratorConfig& cfg, bool apply_control)
{
    const Eigen::MatrixXd g0 = sys.group() ? sys.group()->identity() : Eigen::MatrixXd();
    return simulate(sys, x0, g0, cfg, apply_control);
}

MonitorSummary monitors_report(const Trajectory& traj, const MonitorTolerances& tol)
{
    if (traj.size() == 0) throw ContractError("monitors_report: empty trajectory");

    MonitorSummary s;
    const double n = static_cast<double>(traj.size());
    const double e0 = traj.monitors.front().energy;
    for (const auto& rec : traj.monitors) {
        s.max_energy = std::max(s.max_energy, rec.energy);
        s.mean_energy += rec.energy / n;
        s.max_residual = std::max(s.max_residual, rec.constraint_residual_norm);
        s.mean_residual += rec.constraint_residual_norm / n;
        s.max_ortho_drift = std::max(s.max_ortho_drift, rec.group_orthogonality_drift);
        s.mean_ortho_drift += rec.group_orthogonality_drift / n;
        s.max_control = std::max(s.max_control, rec.control_norm);
        s.mean_control += rec.control_norm / n;
        s.relative_energy_drift = std::max(
            s.relative_energy_drift, std::abs(rec.energy - e0) / std::max(std::abs(e0), 1e-300));
    }

    if (tol.max_constraint_residual) s.residual_ok = s.max_residual <= *tol.max_constraint_residual;
    if (tol.max_orthogonality_drift) s.ortho_ok = s.max_ortho_drift <= *tol.max_orthogonality_drift;
    if (tol.max_relative_energy_drift)
        s.energy_ok = s.relative_energy_drift <= *tol.max_relative_energy_drift;
    s.trajectory_ok = traj.ok();
    return s;
}

std::string MonitorSummary::report() const
{
    std::ostringstream os;
    os.precision(17);
    os << "energy            max " << max_energy << "  mean " << mean_energy
       << "  relative drift " << relative_energy_drift << (energy_ok ? "" : "  [FAIL]") << "\n"
       << "constraint        max " << max_residual << "  mean " << mean_residual
       << (residual_ok ? "" : "  [FAIL]") << "\n"
       << "orthogonality     max " << max_ortho_drift << "  mean " << mean_ortho_drift
       << (ortho_ok ? "" : "  [FAIL]") << "\n"
       << "control           max " << max_control << "  mean " << mean_control << "\n"
       << "trajectory        " << (trajectory_ok ? "completed" : "TRUNCATED") << "\n"
       << "overall           " << (passed() ? "pass" : "FAIL") << "\n";
    return os.str();
}

}  // namespace lievc
