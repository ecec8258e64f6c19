#pragma once

#include <Eigen/Dense>
#include <random>

namespace lievc::testing {

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int n, double scale = 1.0)
{
    std::normal_distribution<double> gauss(0.0, scale);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = gauss(rng);
    return v;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = gauss(rng);
    return m;
}

/// Random symmetric positive-definite matrix with eigenvalues in
/// [shift, shift + spread].
inline Eigen::MatrixXd random_spd(std::mt19937_64& rng, int n, double shift = 0.5,
                                  double spread = 1.5)
{
    const Eigen::MatrixXd a = random_matrix(rng, n, n);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    const Eigen::MatrixXd q = qr.householderQ();
    std::uniform_real_distribution<double> uni(shift, shift + spread);
    Eigen::VectorXd eigs(n);
    for (int i = 0; i < n; ++i) eigs(i) = uni(rng);
    return q * eigs.asDiagonal() * q.transpose();
}

inline Eigen::Matrix3d hat3(const Eigen::Vector3d& w)
{
    Eigen::Matrix3d m;
    m << 0.0, -w.z(), w.y(), w.z(), 0.0, -w.x(), -w.y(), w.x(), 0.0;
    return m;
}

/// Homogeneous embedding of an se(3) coordinate vector (w, v).
inline Eigen::Matrix4d se3_embed(const Eigen::VectorXd& x)
{
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m.topLeftCorner<3, 3>() = hat3(x.head<3>());
    m.topRightCorner<3, 1>() = x.tail<3>();
    return m;
}

inline Eigen::VectorXd se3_unembed(const Eigen::Matrix4d& m)
{
    Eigen::VectorXd x(6);
    x << m(2, 1), m(0, 2), m(1, 0), m(0, 3), m(1, 3), m(2, 3);
    return x;
}

}  // namespace lievc::testing
