#pragma once

#include <Eigen/Dense>

#include "lievc/algebra.hpp"

namespace lievc {

/// A subspace of a Lie algebra, stored as an n x k basis matrix in algebra
/// coordinates. Construction rejects rank-deficient bases (relative singular
/// value threshold 1e-10).
class Subspace {
public:
    explicit Subspace(Eigen::MatrixXd basis);

    /// The whole algebra, basis = I.
    static Subspace full(int algebra_dim);

    int algebra_dim() const { return static_cast<int>(basis_.rows()); }
    int dim() const { return static_cast<int>(basis_.cols()); }
    const Eigen::MatrixXd& basis() const { return basis_; }

    /// Distance-free membership test: x in span(B) iff the projection
    /// residual of the orthonormalized basis vanishes.
    bool contains(const AlgebraVector& x, double tol = 1e-10) const;

private:
    Eigen::MatrixXd basis_;
    Eigen::MatrixXd orthonormal_;  // cached Q factor for contains()
};

/// An affine subspace a0 + d.
struct AffineSubspace {
    AffineSubspace(AlgebraVector offset, Subspace direction);

    AlgebraVector offset;
    Subspace direction;
};

/// Rows span the annihilator of d: A * basis(d) = 0, rank(A) = n - k.
/// The basis is a deterministic orthonormal left-null-space basis with each
/// row's largest-magnitude entry made positive.
struct CovectorBasis {
    Eigen::MatrixXd rows;

    int count() const { return static_cast<int>(rows.rows()); }
};

CovectorBasis annihilator(const Subspace& d);

/// Transversality diagnostics for g = d (+) f.
struct TransversalityReport {
    bool transversal = false;
    int rank = 0;
    int expected_rank = 0;
    double dimension_sum = 0;

    explicit operator bool() const { return transversal; }
};

/// True iff dim d + dim f = n and the stacked basis [B_d | B_f] has full
/// rank at a relative singular-value threshold of 1e-10.
TransversalityReport check_transversal(const Subspace& d, const Subspace& f);
TransversalityReport check_transversal(const AffineSubspace& a, const Subspace& f);

}  // namespace lievc
