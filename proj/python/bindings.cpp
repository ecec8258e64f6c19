#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lievc/catalog.hpp"
#include "lievc/config.hpp"
#include "lievc/connections.hpp"
#include "lievc/csv.hpp"
#include "lievc/errors.hpp"
#include "lievc/integrate.hpp"

namespace py = pybind11;
using namespace lievc;

namespace {

// structure constants as a dense (n, n, n) array, C[i][j][k]
LieAlgebra algebra_from_tensor(const std::string& name, py::array_t<double> tensor,
                               const Eigen::MatrixXd& metric)
{
    const auto buf = tensor.request();
    if (buf.ndim != 3 || buf.shape[0] != buf.shape[1] || buf.shape[1] != buf.shape[2])
        throw DimensionError("structure constants must be an (n, n, n) array");
    const auto n = buf.shape[0];
    auto c = zero_structure_constants(static_cast<int>(n));
    const auto view = tensor.unchecked<3>();
    for (py::ssize_t i = 0; i < n; ++i)
        for (py::ssize_t j = 0; j < n; ++j)
            for (py::ssize_t k = 0; k < n; ++k) c[static_cast<size_t>(k)](i, j) = view(i, j, k);
    return LieAlgebra(name, std::move(c), metric);
}

Eigen::MatrixXd states_matrix(const Trajectory& traj)
{
    if (traj.size() == 0) return {};
    Eigen::MatrixXd m(traj.size(), traj.states.front().size());
    for (std::size_t r = 0; r < traj.size(); ++r) m.row(static_cast<long>(r)) = traj.states[r];
    return m;
}

Eigen::MatrixXd controls_matrix(const Trajectory& traj)
{
    if (traj.size() == 0) return {};
    Eigen::MatrixXd m(traj.size(), traj.controls.front().size());
    for (std::size_t r = 0; r < traj.size(); ++r) m.row(static_cast<long>(r)) = traj.controls[r];
    return m;
}

Eigen::VectorXd monitor_column(const Trajectory& traj, double MonitorRecord::* field)
{
    Eigen::VectorXd v(traj.size());
    for (std::size_t r = 0; r < traj.size(); ++r) v(static_cast<long>(r)) = traj.monitors[r].*field;
    return v;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Euler-Poincare simulation and virtual nonholonomic constraint synthesis on Lie groups";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);

    py::class_<AlgebraValidation>(m, "AlgebraValidation")
        .def_readonly("max_antisymmetry_violation", &AlgebraValidation::max_antisymmetry_violation)
        .def_readonly("max_jacobi_violation", &AlgebraValidation::max_jacobi_violation)
        .def_readonly("max_metric_asymmetry", &AlgebraValidation::max_metric_asymmetry)
        .def_readonly("min_metric_eigenvalue", &AlgebraValidation::min_metric_eigenvalue)
        .def("passed", &AlgebraValidation::passed)
        .def("summary", &AlgebraValidation::summary)
        .def("__repr__", &AlgebraValidation::summary);

    py::class_<LieAlgebra>(m, "LieAlgebra")
        .def(py::init(&algebra_from_tensor), py::arg("name"), py::arg("structure_constants"),
             py::arg("metric"))
        .def_property_readonly("name", &LieAlgebra::name)
        .def_property_readonly("dim", &LieAlgebra::dim)
        .def_property_readonly("metric", &LieAlgebra::metric)
        .def("bracket", &LieAlgebra::bracket)
        .def("ad", &LieAlgebra::ad)
        .def("ad_star", &LieAlgebra::ad_star)
        .def("flat", &LieAlgebra::flat)
        .def("sharp", &LieAlgebra::sharp)
        .def("inner", &LieAlgebra::inner)
        .def("kinetic_energy", &LieAlgebra::kinetic_energy)
        .def("validate", &LieAlgebra::validate, py::arg("tolerance") = 1e-12);

    m.def("so3_algebra", [](const Eigen::Matrix3d& inertia) { return make_so3(inertia); },
          py::arg("inertia"));
    m.def("se3_algebra", &make_se3, py::arg("metric"));
    m.def("so3xR_algebra", &make_so3xR, py::arg("metric"));

    py::class_<Subspace>(m, "Subspace")
        .def(py::init<Eigen::MatrixXd>(), py::arg("basis"))
        .def_static("full", &Subspace::full, py::arg("algebra_dim"))
        .def_property_readonly("basis", &Subspace::basis)
        .def_property_readonly("dim", &Subspace::dim)
        .def_property_readonly("algebra_dim", &Subspace::algebra_dim)
        .def("contains", &Subspace::contains, py::arg("x"), py::arg("tol") = 1e-10);

    py::class_<AffineSubspace>(m, "AffineSubspace")
        .def(py::init<AlgebraVector, Subspace>(), py::arg("offset"), py::arg("direction"))
        .def_readonly("offset", &AffineSubspace::offset)
        .def_readonly("direction", &AffineSubspace::direction);

    m.def("annihilator", [](const Subspace& d) { return annihilator(d).rows; }, py::arg("d"));

    py::class_<TransversalityReport>(m, "TransversalityReport")
        .def_readonly("transversal", &TransversalityReport::transversal)
        .def_readonly("rank", &TransversalityReport::rank)
        .def_readonly("expected_rank", &TransversalityReport::expected_rank)
        .def("__bool__", [](const TransversalityReport& r) { return r.transversal; });

    m.def("check_transversal",
          py::overload_cast<const Subspace&, const Subspace&>(&check_transversal));
    m.def("check_transversal",
          py::overload_cast<const AffineSubspace&, const Subspace&>(&check_transversal));

    m.def("g_connection", &g_connection, py::arg("algebra"), py::arg("x"), py::arg("y"));
    m.def(
        "orthogonal_projectors",
        [](const LieAlgebra& a, const Subspace& d) {
            const auto pair = orthogonal_projectors(a, d);
            return py::make_tuple(pair.onto, pair.along);
        },
        py::arg("algebra"), py::arg("d"));
    m.def(
        "oblique_projectors",
        [](const LieAlgebra& a, const Subspace& d, const Subspace& f) {
            const auto pair = oblique_projectors(a, d, f);
            return py::make_tuple(pair.onto, pair.along);
        },
        py::arg("algebra"), py::arg("d"), py::arg("f"));
    m.def("d_connection",
          py::overload_cast<const LieAlgebra&, const Subspace&, const AlgebraVector&,
                            const AlgebraVector&>(&d_connection),
          py::arg("algebra"), py::arg("d"), py::arg("x"), py::arg("y"));
    m.def("c_connection",
          py::overload_cast<const LieAlgebra&, const Subspace&, const Subspace&,
                            const AlgebraVector&, const AlgebraVector&>(&c_connection),
          py::arg("algebra"), py::arg("d"), py::arg("f"), py::arg("x"), py::arg("y"));

    py::class_<GroupModel>(m, "GroupModel")
        .def_static("so3", &GroupModel::so3)
        .def_static("se3", &GroupModel::se3)
        .def_static("so3_x_s1", &GroupModel::so3_x_s1)
        .def_static("by_name", &GroupModel::by_name, py::arg("name"))
        .def_property_readonly("name", &GroupModel::name)
        .def_property_readonly("matrix_size", &GroupModel::matrix_size)
        .def_property_readonly("algebra_dim", &GroupModel::algebra_dim)
        .def("identity", &GroupModel::identity)
        .def("embed", &GroupModel::embed)
        .def("exp", &GroupModel::exp)
        .def("orthogonality_drift", &GroupModel::orthogonality_drift)
        .def("in_group", &GroupModel::in_group, py::arg("g"), py::arg("tol") = 1e-8);

    m.def("group_step", &group_step, py::arg("model"), py::arg("g"), py::arg("x"), py::arg("h"),
          py::arg("sigma"));

    py::class_<ControlledSystem>(m, "ControlledSystem")
        .def(py::init([](LieAlgebra algebra, std::optional<GroupModel> group, int sigma,
                         Eigen::MatrixXd input_basis, std::optional<Subspace> constraint,
                         std::optional<AffineSubspace> affine_constraint, std::string label) {
                 std::optional<Constraint> c;
                 if (constraint && affine_constraint)
                     throw ContractError("pass either constraint or affine_constraint, not both");
                 if (constraint) c = Constraint(*constraint);
                 if (affine_constraint) c = Constraint(*affine_constraint);
                 return ControlledSystem(std::move(algebra), std::move(group), sigma,
                                         std::move(input_basis), std::move(c), std::move(label));
             }),
             py::arg("algebra"), py::arg("group") = std::nullopt, py::arg("sigma") = 1,
             py::arg("input_basis") = Eigen::MatrixXd(),
             py::arg("constraint") = std::nullopt, py::arg("affine_constraint") = std::nullopt,
             py::arg("label") = "system")
        .def_property_readonly("algebra", &ControlledSystem::algebra)
        .def_property_readonly("sigma", &ControlledSystem::sigma)
        .def_property_readonly("label", &ControlledSystem::label)
        .def_property_readonly("input_basis", &ControlledSystem::input_basis)
        .def_property_readonly("num_inputs", &ControlledSystem::num_inputs)
        .def_property_readonly("has_constraint", &ControlledSystem::has_constraint)
        .def_property_readonly("annihilator_rows",
                               [](const ControlledSystem& s) { return s.annihilator_basis().rows; })
        .def("drift", &ControlledSystem::drift)
        .def("control_law", &ControlledSystem::control_law)
        .def("closed_loop_field", &ControlledSystem::closed_loop_field)
        .def("constraint_residual", &ControlledSystem::constraint_residual)
        .def("constrained_connection", &ControlledSystem::constrained_connection)
        .def("input_power", &ControlledSystem::input_power);

    py::class_<CatalogEntry>(m, "CatalogEntry")
        .def_readonly("system", &CatalogEntry::system)
        .def("closed_form_control",
             [](const CatalogEntry& e, const AlgebraVector& x) -> std::optional<ControlVector> {
                 if (!e.closed_form_control) return std::nullopt;
                 return e.closed_form_control(x);
             })
        .def("closed_form_drift",
             [](const CatalogEntry& e, const AlgebraVector& x) -> std::optional<AlgebraVector> {
                 if (!e.closed_form_drift) return std::nullopt;
                 return e.closed_form_drift(x);
             });

    m.def("so3_rigid_body", &build_so3_rigid_body, py::arg("lambda1"), py::arg("lambda2"),
          py::arg("lambda3"));
    m.def("se3_homogeneous", &build_se3_homogeneous, py::arg("m"), py::arg("k"));
    m.def("rotor", &build_rotor, py::arg("lambda1"), py::arg("lambda2"), py::arg("lambda3"),
          py::arg("J"), py::arg("k"), py::arg("p") = 0.0);

    py::class_<IntegratorConfig>(m, "IntegratorConfig")
        .def(py::init([](double step, double horizon, std::string scheme, int record_stride) {
                 IntegratorConfig cfg{step, horizon, std::move(scheme), record_stride};
                 cfg.validate();
                 return cfg;
             }),
             py::arg("step"), py::arg("horizon"), py::arg("scheme") = "rk4",
             py::arg("record_stride") = 1)
        .def_readwrite("step", &IntegratorConfig::step)
        .def_readwrite("horizon", &IntegratorConfig::horizon)
        .def_readwrite("scheme", &IntegratorConfig::scheme)
        .def_readwrite("record_stride", &IntegratorConfig::record_stride);

    py::class_<Trajectory>(m, "Trajectory")
        .def_property_readonly("times",
                               [](const Trajectory& t) {
                                   return Eigen::Map<const Eigen::VectorXd>(
                                       t.times.data(), static_cast<long>(t.times.size()))
                                       .eval();
                               })
        .def_property_readonly("states", &states_matrix)
        .def_property_readonly("controls", &controls_matrix)
        .def_property_readonly("group_elements",
                               [](const Trajectory& t) { return t.group_elements; })
        .def_property_readonly("energy",
                               [](const Trajectory& t) {
                                   return monitor_column(t, &MonitorRecord::energy);
                               })
        .def_property_readonly("constraint_residual",
                               [](const Trajectory& t) {
                                   return monitor_column(t, &MonitorRecord::constraint_residual_norm);
                               })
        .def_property_readonly("orthogonality_drift",
                               [](const Trajectory& t) {
                                   return monitor_column(t, &MonitorRecord::group_orthogonality_drift);
                               })
        .def_readonly("blew_up", &Trajectory::blew_up)
        .def_readonly("blow_up_time", &Trajectory::blow_up_time)
        .def_readonly("error", &Trajectory::error)
        .def("__len__", &Trajectory::size);

    m.def("rk4_step", &rk4_step, py::arg("field"), py::arg("x"), py::arg("h"));
    m.def("simulate",
          py::overload_cast<const ControlledSystem&, const AlgebraVector&, const Eigen::MatrixXd&,
                            const IntegratorConfig&, bool>(&simulate),
          py::arg("system"), py::arg("x0"), py::arg("g0"), py::arg("config"),
          py::arg("apply_control") = true);
    m.def("simulate",
          py::overload_cast<const ControlledSystem&, const AlgebraVector&, const IntegratorConfig&,
                            bool>(&simulate),
          py::arg("system"), py::arg("x0"), py::arg("config"), py::arg("apply_control") = true);

    py::class_<MonitorSummary>(m, "MonitorSummary")
        .def_readonly("max_energy", &MonitorSummary::max_energy)
        .def_readonly("max_residual", &MonitorSummary::max_residual)
        .def_readonly("max_ortho_drift", &MonitorSummary::max_ortho_drift)
        .def_readonly("max_control", &MonitorSummary::max_control)
        .def_readonly("relative_energy_drift", &MonitorSummary::relative_energy_drift)
        .def("passed", &MonitorSummary::passed)
        .def("report", &MonitorSummary::report);

    m.def(
        "monitors_report",
        [](const Trajectory& traj, std::optional<double> residual, std::optional<double> ortho,
           std::optional<double> energy) {
            MonitorTolerances tol;
            tol.max_constraint_residual = residual;
            tol.max_orthogonality_drift = ortho;
            tol.max_relative_energy_drift = energy;
            return monitors_report(traj, tol);
        },
        py::arg("trajectory"), py::arg("max_constraint_residual") = 1e-8,
        py::arg("max_orthogonality_drift") = 1e-10,
        py::arg("max_relative_energy_drift") = std::nullopt);

    m.def("trajectory_csv", &trajectory_csv_string, py::arg("trajectory"));
}
