#include "lievc/group.hpp"

#include <cmath>
#include <sstream>

#include "lievc/errors.hpp"

namespace lievc {

namespace {

Eigen::Matrix3d hat3(const Eigen::Vector3d& w)
{
    Eigen::Matrix3d m;
    m << 0.0, -w.z(), w.y(), w.z(), 0.0, -w.x(), -w.y(), w.x(), 0.0;
    return m;
}

// Rodrigues coefficients a1 = sin(t)/t, a2 = (1-cos(t))/t^2 and the V-matrix
// coefficient a3 = (t-sin(t))/t^3. Below the series threshold the closed
// forms cancel catastrophically (1-cos(t) loses half the mantissa near
// t ~ 1e-4), so small angles use three series terms; a2 uses the half-angle
// identity 1-cos(t) = 2 sin^2(t/2) which never cancels.
constexpr double kSeriesThreshold = 1e-2;

double coeff_a1(double theta)
{
    if (theta < kSeriesThreshold) {
        const double t2 = theta * theta;
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    }
    return std::sin(theta) / theta;
}

double coeff_a2(double theta)
{
    if (theta < kSeriesThreshold) {
        const double t2 = theta * theta;
        return 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
    }
    const double half_sin = std::sin(0.5 * theta);
    return 2.0 * half_sin * half_sin / (theta * theta);
}

double coeff_a3(double theta)
{
    if (theta < kSeriesThreshold) {
        const double t2 = theta * theta;
        return 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;
    }
    return (theta - std::sin(theta)) / (theta * theta * theta);
}

Eigen::Matrix3d exp_so3(const Eigen::Vector3d& w)
{
    const double theta = w.norm();
    const Eigen::Matrix3d s = hat3(w);
    return Eigen::Matrix3d::Identity() + coeff_a1(theta) * s + coeff_a2(theta) * (s * s);
}

// V(w) such that exp([[hat(w), v], [0, 0]]) = [[R, V v], [0, 1]].
Eigen::Matrix3d se3_v_matrix(const Eigen::Vector3d& w)
{
    const double theta = w.norm();
    const Eigen::Matrix3d s = hat3(w);
    return Eigen::Matrix3d::Identity() + coeff_a2(theta) * s + coeff_a3(theta) * (s * s);
}

double ortho_residual(const Eigen::Ref<const Eigen::MatrixXd>& r)
{
    return (r.transpose() * r - Eigen::MatrixXd::Identity(r.rows(), r.cols())).norm();
}

}  // namespace

GroupModel::GroupModel(Kind kind, std::string name, int matrix_size, int algebra_dim)
    : kind_(kind), name_(std::move(name)), matrix_size_(matrix_size), algebra_dim_(algebra_dim)
{
}

GroupModel GroupModel::so3() { return GroupModel(Kind::SO3, "so3", 3, 3); }
GroupModel GroupModel::se3() { return GroupModel(Kind::SE3, "se3", 4, 6); }
GroupModel GroupModel::so3_x_s1() { return GroupModel(Kind::SO3xS1, "so3_x_s1", 5, 4); }

GroupModel GroupModel::by_name(const std::string& name)
{
    if (name == "so3") return so3();
    if (name == "se3") return se3();
    if (name == "so3_x_s1") return so3_x_s1();
    throw ConfigError("unknown group model '" + name + "' (so3, se3, so3_x_s1)");
}

Eigen::MatrixXd GroupModel::identity() const
{
    return Eigen::MatrixXd::Identity(matrix_size_, matrix_size_);
}

Eigen::MatrixXd GroupModel::embed(const AlgebraVector& x) const
{
    if (x.size() != algebra_dim_)
        throw DimensionError(name_ + ": embed expects a length-" + std::to_string(algebra_dim_)
                             + " algebra vector");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(matrix_size_, matrix_size_);
    switch (kind_) {
        case Kind::SO3:
            m = hat3(x);
            break;
        case Kind::SE3:
            m.topLeftCorner<3, 3>() = hat3(x.head<3>());
            m.topRightCorner<3, 1>() = x.tail<3>();
            break;
        case Kind::SO3xS1:
            m.topLeftCorner<3, 3>() = hat3(x.head<3>());
            m(3, 4) = -x(3);
            m(4, 3) = x(3);
            break;
    }
    return m;
}

Eigen::MatrixXd GroupModel::exp(const Eigen::MatrixXd& embedded) const
{
    if (embedded.rows() != matrix_size_ || embedded.cols() != matrix_size_)
        throw DimensionError(name_ + ": exp expects a " + std::to_string(matrix_size_) + "x"
                             + std::to_string(matrix_size_) + " matrix");
    Eigen::MatrixXd g = identity();
    // every model carries its skew block top-left
    const Eigen::Vector3d w(embedded(2, 1), embedded(0, 2), embedded(1, 0));
    switch (kind_) {
        case Kind::SO3:
            g = exp_so3(w);
            break;
        case Kind::SE3:
            g.topLeftCorner<3, 3>() = exp_so3(w);
            g.topRightCorner<3, 1>() = se3_v_matrix(w) * embedded.topRightCorner<3, 1>();
            break;
        case Kind::SO3xS1: {
            g.topLeftCorner<3, 3>() = exp_so3(w);
            const double a = embedded(4, 3);
            g(3, 3) = std::cos(a);
            g(3, 4) = -std::sin(a);
            g(4, 3) = std::sin(a);
            g(4, 4) = std::cos(a);
            break;
        }
    }
    return g;
}

Eigen::MatrixXd GroupModel::compose(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const
{
    return a * b;
}

double GroupModel::orthogonality_drift(const Eigen::MatrixXd& g) const
{
    switch (kind_) {
        case Kind::SO3:
            return ortho_residual(g);
        case Kind::SE3:
            return ortho_residual(g.topLeftCorner<3, 3>());
        case Kind::SO3xS1:
            // the whole block-diagonal matrix is orthogonal
            return ortho_residual(g);
    }
    return 0.0;
}

bool GroupModel::in_group(const Eigen::MatrixXd& g, double tol) const
{
    if (g.rows() != matrix_size_ || g.cols() != matrix_size_) return false;
    if (!g.allFinite()) return false;
    return orthogonality_drift(g) < tol;
}

Eigen::MatrixXd group_step(const GroupModel& model, const Eigen::MatrixXd& g,
                           const AlgebraVector& x, double h, int sigma)
{
    if (h <= 0.0) throw ContractError("group_step: step size must be positive");
    if (sigma != 1 && sigma != -1) throw ContractError("group_step: sigma must be +1 or -1");
    if (!model.in_group(g)) throw ContractError("group_step: g is not in the model group");

    const Eigen::MatrixXd increment = model.exp(model.embed(h * x));
    Eigen::MatrixXd next = (sigma > 0) ? model.compose(increment, g) : model.compose(g, increment);
    if (!next.allFinite())
        throw IntegrationError("group_step: non-finite entries in group update", 0.0);
    return next;
}

}  // namespace lievc
