#pragma once

#include <Eigen/Dense>

#include "lievc/algebra.hpp"
#include "lievc/subspace.hpp"

namespace lievc {

/// Complementary projector pair: onto + along = I.
struct ProjectorPair {
    Eigen::MatrixXd onto;
    Eigen::MatrixXd along;
};

/// Riemannian g-connection of a right-invariant metric, restricted to the
/// algebra:
///
///   conn(x, y) = -1/2 [x, y] + 1/2 sharp(ad*_x flat y) + 1/2 sharp(ad*_y flat x)
///
/// Its quadratic part conn(x, x) = sharp(ad*_x flat x) drives the reduced
/// geodesic equation xi' + conn(xi, xi) = 0.
AlgebraVector g_connection(const LieAlgebra& algebra, const AlgebraVector& x,
                           const AlgebraVector& y);

/// Metric-orthogonal projectors onto d and onto its orthogonal complement:
/// onto = B (B^T M B)^{-1} B^T M.
ProjectorPair orthogonal_projectors(const LieAlgebra& algebra, const Subspace& d);

/// Projectors of the direct sum g = d (+) f: onto projects to d along f.
/// Throws TransversalityError when the pair is not transversal.
ProjectorPair oblique_projectors(const LieAlgebra& algebra, const Subspace& d, const Subspace& f);

/// Nonholonomic d-connection,
///   conn_d(x, y) = conn_g(x, y) + conn_g(x, Q y) - Q conn_g(x, y)
/// with Q the orthogonal projector along d; equals P conn_g(x, y) when y is
/// in d.
AlgebraVector d_connection(const LieAlgebra& algebra, const Subspace& d, const AlgebraVector& x,
                           const AlgebraVector& y);
AlgebraVector d_connection(const LieAlgebra& algebra, const ProjectorPair& projectors,
                           const AlgebraVector& x, const AlgebraVector& y);

/// Induced constrained connection of the pair (d, f): same expansion with
/// the oblique projector q along d; equals p conn_g(x, y) when y is in d.
AlgebraVector c_connection(const LieAlgebra& algebra, const Subspace& d, const Subspace& f,
                           const AlgebraVector& x, const AlgebraVector& y);
AlgebraVector c_connection(const LieAlgebra& algebra, const ProjectorPair& projectors,
                           const AlgebraVector& x, const AlgebraVector& y);

}  // namespace lievc
