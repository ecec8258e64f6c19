#include "lievc/catalog.hpp"

#include <cmath>

#include "lievc/errors.hpp"

namespace lievc {

CatalogEntry build_so3_rigid_body(double lambda1, double lambda2, double lambda3)
{
    if (lambda1 <= 0.0 || lambda2 <= 0.0 || lambda3 <= 0.0)
        throw ParameterError("so3_rigid_body: principal inertias must be positive");

    const Eigen::Vector3d lambda(lambda1, lambda2, lambda3);
    LieAlgebra algebra = make_so3(lambda.asDiagonal());

    ControlledSystem system(std::move(algebra), GroupModel::so3(), +1,
                            Eigen::MatrixXd::Zero(3, 0), std::nullopt, "so3_rigid_body");

    CatalogEntry entry{std::move(system), nullptr, nullptr};
    entry.closed_form_drift = [lambda](const AlgebraVector& w) -> AlgebraVector {
        const Eigen::Vector3d omega = w.head<3>();
        const Eigen::Vector3d j_omega = lambda.cwiseProduct(omega);
        return omega.cross(j_omega).cwiseQuotient(lambda);
    };
    return entry;
}

CatalogEntry build_se3_homogeneous(double mass, double gyration_radius)
{
    if (mass <= 0.0 || gyration_radius <= 0.0)
        throw ParameterError("se3_homogeneous: mass and gyration radius must be positive");

    const double inertia = mass * gyration_radius * gyration_radius;  // m k^2
    Eigen::VectorXd diag(6);
    diag << inertia, inertia, inertia, mass, mass, mass;
    LieAlgebra algebra = make_se3(diag.asDiagonal());

    Eigen::MatrixXd d_basis(6, 2);  // v1 = e1 - e5, v2 = e2 + e4
    d_basis.setZero();
    d_basis(0, 0) = 1.0;
    d_basis(4, 0) = -1.0;
    d_basis(1, 1) = 1.0;
    d_basis(3, 1) = 1.0;

    // mass-weighted input columns reproducing the component equations
    Eigen::MatrixXd f(6, 4);
    f.setZero();
    f(0, 0) = 1.0 / inertia;
    f(4, 0) = -1.0 / mass;
    f(1, 1) = 1.0 / inertia;
    f(3, 1) = 1.0 / mass;
    f(2, 2) = 1.0 / inertia;
    f(5, 3) = 1.0 / mass;

    ControlledSystem system(std::move(algebra), GroupModel::se3(), +1, std::move(f),
                            Constraint(Subspace(std::move(d_basis))), "se3_homogeneous");

    CatalogEntry entry{std::move(system), nullptr, nullptr};
    entry.closed_form_control = [mass](const AlgebraVector& xi) -> ControlVector {
        ControlVector u = ControlVector::Zero(4);
        u(3) = mass * (xi(0) * xi(0) + xi(1) * xi(1));
        return u;
    };
    return entry;
}

CatalogEntry build_rotor(double lambda1, double lambda2, double lambda3, double rotor_inertia,
                         double gain, double momentum_level)
{
    const double J = rotor_inertia;
    const double k = gain;
    const double D = J * lambda3 - J * J;
    if (lambda1 <= 0.0 || lambda2 <= 0.0 || lambda3 <= 0.0)
        throw ParameterError("rotor: principal inertias must be positive");
    if (D <= 0.0)
        throw ParameterError("rotor: metric SPD condition J*lambda3 - J^2 > 0 violated");

    Eigen::MatrixXd metric = Eigen::MatrixXd::Zero(4, 4);
    metric(0, 0) = lambda1;
    metric(1, 1) = lambda2;
    metric(2, 2) = lambda3;
    metric(2, 3) = J;
    metric(3, 2) = J;
    metric(3, 3) = J;
    LieAlgebra algebra = make_so3xR(metric);

    // d = kernel of the constraint covector (0, 0, J - k*lambda3, J*(1 - k))
    Eigen::Vector4d mu(0.0, 0.0, J - k * lambda3, J * (1.0 - k));
    Eigen::MatrixXd d_basis = Eigen::MatrixXd::Zero(4, 3);
    d_basis(0, 0) = 1.0;
    d_basis(1, 1) = 1.0;
    d_basis(2, 2) = -mu(3);
    d_basis(3, 2) = mu(2);
    d_basis.col(2).normalize();

    const AlgebraVector offset = mu * (momentum_level / mu.squaredNorm());  // least-norm a0

    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(4, 1);
    f(2, 0) = -J / D;
    f(3, 0) = lambda3 / D;

    ControlledSystem system(std::move(algebra), GroupModel::so3_x_s1(), -1, std::move(f),
                            Constraint(AffineSubspace(offset, Subspace(std::move(d_basis)))),
                            "rotor");

    CatalogEntry entry{std::move(system), nullptr, nullptr};
    entry.closed_form_control = [k, lambda1, lambda2](const AlgebraVector& xi) -> ControlVector {
        ControlVector u(1);
        u(0) = k * (lambda1 - lambda2) * xi(0) * xi(1);
        return u;
    };
    entry.closed_form_drift = [lambda1, lambda2, lambda3, J, D](const AlgebraVector& xi) {
        const double w1 = xi(0), w2 = xi(1), w3 = xi(2), adot = xi(3);
        AlgebraVector out(4);
        out(0) = -((lambda3 - lambda2) * w2 * w3 + J * w2 * adot) / lambda1;
        out(1) = -((lambda1 - lambda3) * w1 * w3 - J * w1 * adot) / lambda2;
        out(2) = -(J / D) * (lambda2 - lambda1) * w1 * w2;
        out(3) = (J / D) * (lambda2 - lambda1) * w1 * w2;
        return out;
    };
    return entry;
}

}  // namespace lievc
