#include "lievc/system.hpp"

#include <sstream>

#include "lievc/errors.hpp"

namespace lievc {

const Subspace& constraint_direction(const Constraint& c)
{
    if (std::holds_alternative<Subspace>(c)) return std::get<Subspace>(c);
    return std::get<AffineSubspace>(c).direction;
}

bool constraint_is_affine(const Constraint& c)
{
    return std::holds_alternative<AffineSubspace>(c);
}

AlgebraVector constraint_offset(const Constraint& c)
{
    if (std::holds_alternative<AffineSubspace>(c)) return std::get<AffineSubspace>(c).offset;
    return AlgebraVector::Zero(constraint_direction(c).algebra_dim());
}

ControlledSystem::ControlledSystem(LieAlgebra algebra, std::optional<GroupModel> group, int sigma,
                                   Eigen::MatrixXd input_basis, std::optional<Constraint> constraint,
                                   std::string label)
    : algebra_(std::move(algebra)),
      group_(std::move(group)),
      sigma_(sigma),
      input_basis_(std::move(input_basis)),
      constraint_(std::move(constraint)),
      label_(std::move(label))
{
    const int n = algebra_.dim();
    if (sigma_ != 1 && sigma_ != -1)
        throw ContractError(label_ + ": sigma must be +1 or -1");
    if (group_ && group_->algebra_dim() != n)
        throw DimensionError(label_ + ": group model does not match the algebra dimension");

    if (input_basis_.size() == 0) input_basis_ = Eigen::MatrixXd::Zero(n, 0);
    if (input_basis_.rows() != n)
        throw DimensionError(label_ + ": input basis rows must equal the algebra dimension");
    const int m = num_inputs();
    if (m >= n) throw ContractError(label_ + ": need fewer inputs than the algebra dimension");
    if (m > 0) input_span_ = Subspace(input_basis_);  // throws SubspaceError if dependent

    offset_ = AlgebraVector::Zero(n);
    if (constraint_) {
        const Subspace& d = constraint_direction(*constraint_);
        if (d.algebra_dim() != n)
            throw DimensionError(label_ + ": constraint does not conform to the algebra");
        offset_ = constraint_offset(*constraint_);
        annihilator_ = annihilator(d);

        if (m != n - d.dim() || !input_span_) {
            std::ostringstream os;
            os << label_ << ": need dim f + dim d = n, got " << m << " + " << d.dim() << " != " << n;
            throw TransversalityError(os.str(), m + d.dim(), n);
        }
        const auto report = check_transversal(d, *input_span_);
        if (!report) {
            std::ostringstream os;
            os << label_ << ": constraint and input subspaces are not transversal (rank "
               << report.rank << " of " << report.expected_rank << ")";
            throw TransversalityError(os.str(), report.rank, report.expected_rank);
        }

        const Eigen::MatrixXd af = annihilator_.rows * input_basis_;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(af);
        const auto& s = svd.singularValues();
        if (s(s.size() - 1) <= 1e-10 * s(0))
            throw TransversalityError(label_ + ": A*F is numerically singular", report.rank,
                                      report.expected_rank);
        af_lu_.compute(af);
        oblique_ = oblique_projectors(algebra_, d, *input_span_);
    } else {
        annihilator_ = CovectorBasis{Eigen::MatrixXd::Zero(0, n)};
    }
}

const Constraint& ControlledSystem::constraint() const
{
    if (!constraint_) throw ContractError(label_ + ": system has no constraint");
    return *constraint_;
}

const Subspace& ControlledSystem::constraint_subspace() const
{
    return constraint_direction(constraint());
}

const CovectorBasis& ControlledSystem::annihilator_basis() const { return annihilator_; }

AlgebraVector ControlledSystem::drift(const AlgebraVector& x) const
{
    return -sigma_ * algebra_.sharp(algebra_.ad_star(x, algebra_.flat(x)));
}

ControlVector ControlledSystem::control_law(const AlgebraVector& x) const
{
    const int m = num_inputs();
    if (!constraint_ || m == 0) return ControlVector::Zero(m);
    return af_lu_.solve(-(annihilator_.rows * drift(x)));
}

AlgebraVector ControlledSystem::closed_loop_field(const AlgebraVector& x) const
{
    if (!constraint_ || num_inputs() == 0) return drift(x);
    return drift(x) + input_basis_ * control_law(x);
}

Eigen::VectorXd ControlledSystem::constraint_residual(const AlgebraVector& x) const
{
    if (!constraint_) return Eigen::VectorXd(0);
    return annihilator_.rows * (x - offset_);
}

AlgebraVector ControlledSystem::constrained_connection(const AlgebraVector& x,
                                                       const AlgebraVector& y) const
{
    if (oblique_) return sigma_ * c_connection(algebra_, *oblique_, x, y);
    // unconstrained: p = identity, the induced connection is the g-connection
    return sigma_ * g_connection(algebra_, x, y);
}

double ControlledSystem::input_power(const AlgebraVector& x) const
{
    if (num_inputs() == 0) return 0.0;
    return algebra_.inner(x, input_basis_ * control_law(x));
}

}  // namespace lievc
