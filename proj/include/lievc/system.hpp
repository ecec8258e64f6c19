#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <variant>

#include "lievc/algebra.hpp"
#include "lievc/connections.hpp"
#include "lievc/group.hpp"
#include "lievc/subspace.hpp"

namespace lievc {

/// Control coefficients u_a, one per input basis column.
using ControlVector = Eigen::VectorXd;

/// Either a linear constraint subspace d or an affine one a0 + d.
using Constraint = std::variant<Subspace, AffineSubspace>;

const Subspace& constraint_direction(const Constraint& c);
bool constraint_is_affine(const Constraint& c);
/// Offset a0 (zero vector for linear constraints).
AlgebraVector constraint_offset(const Constraint& c);

/// A controlled Euler-Poincare system on a Lie algebra:
///
///   xi' = drift(xi) + F u,    drift(xi) = -sigma * sharp(ad*_xi flat xi)
///
/// where the columns of F span the control input subspace and sigma picks
/// the trivialization (+1 right, xi = dg g^{-1}; -1 left, xi = g^{-1} dg).
/// A constraint subspace (or affine subspace) turns the system into a
/// virtual-constraint problem: construction checks transversality
/// g = f (+) d and fixes the unique feedback that keeps the constraint
/// invariant. All members are immutable after construction.
class ControlledSystem {
public:
    ControlledSystem(LieAlgebra algebra, std::optional<GroupModel> group, int sigma,
                     Eigen::MatrixXd input_basis, std::optional<Constraint> constraint,
                     std::string label);

    const LieAlgebra& algebra() const { return algebra_; }
    const std::optional<GroupModel>& group() const { return group_; }
    int sigma() const { return sigma_; }
    const std::string& label() const { return label_; }

    /// n x m matrix of input columns f_a (m may be zero).
    const Eigen::MatrixXd& input_basis() const { return input_basis_; }
    int num_inputs() const { return static_cast<int>(input_basis_.cols()); }

    bool has_constraint() const { return constraint_.has_value(); }
    const Constraint& constraint() const;
    const Subspace& constraint_subspace() const;
    /// Orthonormal annihilator rows of the constraint direction.
    const CovectorBasis& annihilator_basis() const;

    /// Input subspace f spanned by the columns of F; empty optional if m=0.
    const std::optional<Subspace>& input_span() const { return input_span_; }

    /// Uncontrolled reduced acceleration.
    AlgebraVector drift(const AlgebraVector& x) const;

    /// The unique feedback solving A (drift + F u) = 0, defined for every
    /// state (zeros when the system has no constraint or no inputs). No
    /// residual-damping term is added, so off-constraint initial data keeps
    /// its residual instead of decaying; wrap this with an extra
    /// -K * constraint_residual(x) feedback if asymptotic attraction to the
    /// constraint is wanted.
    ControlVector control_law(const AlgebraVector& x) const;

    /// drift + F * control_law; annihilated by the constraint covectors.
    AlgebraVector closed_loop_field(const AlgebraVector& x) const;

    /// A (x - a0) for affine constraints, A x for linear ones; empty for
    /// unconstrained systems.
    Eigen::VectorXd constraint_residual(const AlgebraVector& x) const;

    /// Induced constrained connection in this system's trivialization:
    /// sigma * c_connection(d, f). On the constraint the closed loop
    /// satisfies xi' + constrained_connection(xi, xi) = 0.
    AlgebraVector constrained_connection(const AlgebraVector& x, const AlgebraVector& y) const;

    /// Rate of work done by the inputs, <x, F u>.
    double input_power(const AlgebraVector& x) const;

private:
    LieAlgebra algebra_;
    std::optional<GroupModel> group_;
    int sigma_;
    Eigen::MatrixXd input_basis_;
    std::optional<Constraint> constraint_;
    std::string label_;

    std::optional<Subspace> input_span_;
    CovectorBasis annihilator_;                 // empty rows when unconstrained
    AlgebraVector offset_;                      // a0 (zeros when linear / absent)
    Eigen::PartialPivLU<Eigen::MatrixXd> af_lu_;  // factorization of A*F
    std::optional<ProjectorPair> oblique_;      // onto d along f
};

}  // namespace lievc
