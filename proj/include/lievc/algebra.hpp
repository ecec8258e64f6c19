#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace lievc {

/// Components of an algebra element xi = xi^i e_i in the chosen ordered basis.
using AlgebraVector = Eigen::VectorXd;

/// Components of a dual element mu = mu_i e^i in the dual basis.
using AlgebraCovector = Eigen::VectorXd;

/// Outcome of the structural checks on a LieAlgebra (validate() below).
struct AlgebraValidation {
    double max_antisymmetry_violation = 0.0;
    double max_jacobi_violation = 0.0;
    double max_metric_asymmetry = 0.0;
    double min_metric_eigenvalue = 0.0;
    double tolerance = 1e-12;

    bool passed() const
    {
        return max_antisymmetry_violation <= tolerance && max_jacobi_violation <= tolerance
            && max_metric_asymmetry <= tolerance && min_metric_eigenvalue > 0.0;
    }

    std::string summary() const;
};

/// A finite-dimensional Lie algebra given by structure constants in a fixed
/// ordered basis, together with an inner product.
///
/// The structure constants define [e_i, e_j] = sum_k C[i][j][k] e_k and the
/// metric matrix M defines <x, y> = x^T M y. All operations are coordinate
/// computations in this basis; instances are immutable and safe to share.
class LieAlgebra {
public:
    /// structure_constants holds n matrices; entry k is the n x n matrix with
    /// (i, j) element C[i][j][k]. The constructor checks shapes only; run
    /// validate() to test antisymmetry, the Jacobi identity and positivity.
    LieAlgebra(std::string name, std::vector<Eigen::MatrixXd> structure_constants,
               Eigen::MatrixXd metric);

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const Eigen::MatrixXd& metric() const { return metric_; }
    const std::vector<Eigen::MatrixXd>& structure_constants() const { return c_; }

    /// C[i][j][k], zero-based.
    double structure_constant(int i, int j, int k) const { return c_[k](i, j); }

    /// [x, y]_k = sum_{i,j} C[i][j][k] x^i y^j.
    AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) const;

    /// Matrix of ad_x, so that ad(x) * y == bracket(x, y).
    Eigen::MatrixXd ad(const AlgebraVector& x) const;

    /// Coadjoint action, (ad*_x mu)(y) = mu([x, y]); equals ad(x)^T mu.
    AlgebraCovector ad_star(const AlgebraVector& x, const AlgebraCovector& mu) const;

    /// Musical isomorphisms: flat(x) = M x, sharp(mu) = M^{-1} mu.
    AlgebraCovector flat(const AlgebraVector& x) const;
    AlgebraVector sharp(const AlgebraCovector& mu) const;

    /// Pairing mu(x).
    double pair(const AlgebraCovector& mu, const AlgebraVector& x) const;

    /// <x, y> = x^T M y.
    double inner(const AlgebraVector& x, const AlgebraVector& y) const;

    /// Reduced kinetic energy (1/2)<x, x>.
    double kinetic_energy(const AlgebraVector& x) const { return 0.5 * inner(x, x); }

    /// Structural checks; reports violations, never throws.
    AlgebraValidation validate(double tolerance = 1e-12) const;

private:
    void require_dim(const Eigen::VectorXd& v, const char* what) const;

    std::string name_;
    int dim_;
    std::vector<Eigen::MatrixXd> c_;
    Eigen::MatrixXd metric_;
    Eigen::LDLT<Eigen::MatrixXd> metric_ldlt_;
};

/// Convenience builder: all-zero structure constants of dimension n.
std::vector<Eigen::MatrixXd> zero_structure_constants(int n);

/// Standard algebras used by the catalog systems.
LieAlgebra make_so3(const Eigen::Matrix3d& inertia);
LieAlgebra make_se3(const Eigen::MatrixXd& metric);
LieAlgebra make_so3xR(const Eigen::MatrixXd& metric);

}  // namespace lievc
