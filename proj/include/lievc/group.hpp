#pragma once

#include <Eigen/Dense>
#include <string>

#include "lievc/algebra.hpp"

namespace lievc {

/// Matrix model of the Lie group underlying an algebra: the linear embedding
/// of algebra coordinates into square matrices (hat map), a closed-form
/// exponential, and the rotation block monitored for orthogonality drift.
class GroupModel {
public:
    enum class Kind { SO3, SE3, SO3xS1 };

    static GroupModel so3();
    static GroupModel se3();
    static GroupModel so3_x_s1();

    /// Lookup by the names accepted in config documents.
    static GroupModel by_name(const std::string& name);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    int matrix_size() const { return matrix_size_; }
    int algebra_dim() const { return algebra_dim_; }

    Eigen::MatrixXd identity() const;

    /// Hat-style linear embedding of algebra coordinates.
    Eigen::MatrixXd embed(const AlgebraVector& x) const;

    /// Closed-form matrix exponential of an embedded algebra element
    /// (Rodrigues on rotation blocks, exact V-matrix translation for SE(3)).
    Eigen::MatrixXd exp(const Eigen::MatrixXd& embedded) const;

    Eigen::MatrixXd compose(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const;

    /// ||R^T R - I||_F over the rotation block(s).
    double orthogonality_drift(const Eigen::MatrixXd& g) const;

    bool in_group(const Eigen::MatrixXd& g, double tol = 1e-8) const;

private:
    GroupModel(Kind kind, std::string name, int matrix_size, int algebra_dim);

    Kind kind_;
    std::string name_;
    int matrix_size_;
    int algebra_dim_;
};

/// One reconstruction step: sigma=+1 advances g' = exp(h * embed(x)) * g
/// (right trivialization, xi = dg g^{-1}); sigma=-1 mirrors to
/// g' = g * exp(h * embed(x)).
Eigen::MatrixXd group_step(const GroupModel& model, const Eigen::MatrixXd& g,
                           const AlgebraVector& x, double h, int sigma);

}  // namespace lievc
