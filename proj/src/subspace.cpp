#include "lievc/subspace.hpp"

#include <sstream>

#include "lievc/errors.hpp"

namespace lievc {

namespace {
constexpr double kRankThreshold = 1e-10;
}

Subspace::Subspace(Eigen::MatrixXd basis) : basis_(std::move(basis))
{
    if (basis_.rows() == 0 || basis_.cols() == 0)
        throw SubspaceError("Subspace: empty basis matrix");
    if (basis_.cols() > basis_.rows())
        throw SubspaceError("Subspace: more basis vectors than the algebra dimension");

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis_, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) <= kRankThreshold * s(0))
        throw SubspaceError("Subspace: basis is rank deficient");
    orthonormal_ = svd.matrixU();
}

Subspace Subspace::full(int algebra_dim)
{
    return Subspace(Eigen::MatrixXd::Identity(algebra_dim, algebra_dim));
}

bool Subspace::contains(const AlgebraVector& x, double tol) const
{
    if (x.size() != basis_.rows()) return false;
    const Eigen::VectorXd residual = x - orthonormal_ * (orthonormal_.transpose() * x);
    return residual.norm() <= tol * std::max(1.0, x.norm());
}

AffineSubspace::AffineSubspace(AlgebraVector offset_in, Subspace direction_in)
    : offset(std::move(offset_in)), direction(std::move(direction_in))
{
    if (offset.size() != direction.algebra_dim())
        throw DimensionError("AffineSubspace: offset length does not match the algebra dimension");
}

CovectorBasis annihilator(const Subspace& d)
{
    const int n = d.algebra_dim();
    const int k = d.dim();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d.basis(), Eigen::ComputeFullU);
    Eigen::MatrixXd rows = svd.matrixU().rightCols(n - k).transpose();

    // deterministic sign: largest-magnitude entry of each row positive
    for (int r = 0; r < rows.rows(); ++r) {
        int imax = 0;
        rows.row(r).cwiseAbs().maxCoeff(&imax);
        if (rows(r, imax) < 0.0) rows.row(r) = -rows.row(r);
    }
    return CovectorBasis{std::move(rows)};
}

TransversalityReport check_transversal(const Subspace& d, const Subspace& f)
{
    TransversalityReport report;
    report.expected_rank = d.algebra_dim();
    report.dimension_sum = d.dim() + f.dim();

    if (f.algebra_dim() != d.algebra_dim()) return report;

    Eigen::MatrixXd stacked(d.algebra_dim(), d.dim() + f.dim());
    stacked << d.basis(), f.basis();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > kRankThreshold * s(0)) ++rank;

    report.rank = rank;
    report.transversal = (d.dim() + f.dim() == d.algebra_dim()) && rank == d.algebra_dim();
    return report;
}

TransversalityReport check_transversal(const AffineSubspace& a, const Subspace& f)
{
    return check_transversal(a.direction, f);
}

}  // namespace lievc
