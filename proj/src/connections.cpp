#include "lievc/connections.hpp"

#include "lievc/errors.hpp"

namespace lievc {

AlgebraVector g_connection(const LieAlgebra& algebra, const AlgebraVector& x,
                           const AlgebraVector& y)
{
    return -0.5 * algebra.bracket(x, y) + 0.5 * algebra.sharp(algebra.ad_star(x, algebra.flat(y)))
        + 0.5 * algebra.sharp(algebra.ad_star(y, algebra.flat(x)));
}

ProjectorPair orthogonal_projectors(const LieAlgebra& algebra, const Subspace& d)
{
    if (d.algebra_dim() != algebra.dim())
        throw DimensionError("orthogonal_projectors: subspace does not conform to the algebra");

    const Eigen::MatrixXd& b = d.basis();
    const Eigen::MatrixXd gram = b.transpose() * algebra.metric() * b;
    // solve, not invert: onto = B (B^T M B)^{-1} B^T M
    const Eigen::MatrixXd coeffs = gram.ldlt().solve(b.transpose() * algebra.metric());

    ProjectorPair pair;
    pair.onto = b * coeffs;
    pair.along = Eigen::MatrixXd::Identity(algebra.dim(), algebra.dim()) - pair.onto;
    return pair;
}

ProjectorPair oblique_projectors(const LieAlgebra& algebra, const Subspace& d, const Subspace& f)
{
    if (d.algebra_dim() != algebra.dim() || f.algebra_dim() != algebra.dim())
        throw DimensionError("oblique_projectors: subspaces do not conform to the algebra");

    const auto report = check_transversal(d, f);
    if (!report)
        throw TransversalityError("oblique_projectors: d and f are not transversal",
                                  report.rank, report.expected_rank);

    const int n = algebra.dim();
    const int k = d.dim();
    Eigen::MatrixXd stacked(n, n);
    stacked << d.basis(), f.basis();

    // x = [B_d | B_f] c  =>  p x = B_d c_head
    const Eigen::MatrixXd inv_stacked = stacked.partialPivLu().solve(Eigen::MatrixXd::Identity(n, n));

    ProjectorPair pair;
    pair.onto = d.basis() * inv_stacked.topRows(k);
    pair.along = Eigen::MatrixXd::Identity(n, n) - pair.onto;
    return pair;
}

namespace {

// conn(x, y) + conn(x, Ay) - A conn(x, y) with A the projector along d.
AlgebraVector projected_connection(const LieAlgebra& algebra, const Eigen::MatrixXd& along,
                                   const AlgebraVector& x, const AlgebraVector& y)
{
    const AlgebraVector base = g_connection(algebra, x, y);
    return base + g_connection(algebra, x, along * y) - along * base;
}

}  // namespace

AlgebraVector d_connection(const LieAlgebra& algebra, const ProjectorPair& projectors,
                           const AlgebraVector& x, const AlgebraVector& y)
{
    return projected_connection(algebra, projectors.along, x, y);
}

AlgebraVector d_connection(const LieAlgebra& algebra, const Subspace& d, const AlgebraVector& x,
                           const AlgebraVector& y)
{
    return projected_connection(algebra, orthogonal_projectors(algebra, d).along, x, y);
}

AlgebraVector c_connection(const LieAlgebra& algebra, const ProjectorPair& projectors,
                           const AlgebraVector& x, const AlgebraVector& y)
{
    return projected_connection(algebra, projectors.along, x, y);
}

AlgebraVector c_connection(const LieAlgebra& algebra, const Subspace& d, const Subspace& f,
                           const AlgebraVector& x, const AlgebraVector& y)
{
    return projected_connection(algebra, oblique_projectors(algebra, d, f).along, x, y);
}

}  // namespace lievc
