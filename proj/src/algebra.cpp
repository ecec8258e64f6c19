#include "lievc/algebra.hpp"

#include <cmath>
#include <sstream>

#include "lievc/errors.hpp"

namespace lievc {

std::string AlgebraValidation::summary() const
{
    std::ostringstream os;
    os << "antisymmetry " << max_antisymmetry_violation << ", jacobi " << max_jacobi_violation
       << ", metric asymmetry " << max_metric_asymmetry << ", min metric eigenvalue "
       << min_metric_eigenvalue << " -> " << (passed() ? "pass" : "FAIL");
    return os.str();
}

LieAlgebra::LieAlgebra(std::string name, std::vector<Eigen::MatrixXd> structure_constants,
                       Eigen::MatrixXd metric)
    : name_(std::move(name)), c_(std::move(structure_constants)), metric_(std::move(metric))
{
    dim_ = static_cast<int>(c_.size());
    if (dim_ <= 0) throw DimensionError("LieAlgebra: empty structure constant tensor");
    for (const auto& ck : c_) {
        if (ck.rows() != dim_ || ck.cols() != dim_)
            throw DimensionError("LieAlgebra: structure constant slice is not dim x dim");
    }
    if (metric_.rows() != dim_ || metric_.cols() != dim_)
        throw DimensionError("LieAlgebra: metric is not dim x dim");
    metric_ldlt_.compute(metric_);
}

void LieAlgebra::require_dim(const Eigen::VectorXd& v, const char* what) const
{
    if (v.size() != dim_) {
        std::ostringstream os;
        os << name_ << ": " << what << " has length " << v.size() << ", expected " << dim_;
        throw DimensionError(os.str());
    }
}

AlgebraVector LieAlgebra::bracket(const AlgebraVector& x, const AlgebraVector& y) const
{
    require_dim(x, "bracket lhs");
    require_dim(y, "bracket rhs");
    AlgebraVector out(dim_);
    for (int k = 0; k < dim_; ++k) out(k) = x.dot(c_[k] * y);
    return out;
}

Eigen::MatrixXd LieAlgebra::ad(const AlgebraVector& x) const
{
    require_dim(x, "ad argument");
    Eigen::MatrixXd m(dim_, dim_);
    for (int k = 0; k < dim_; ++k) m.row(k) = (c_[k].transpose() * x).transpose();
    return m;
}

AlgebraCovector LieAlgebra::ad_star(const AlgebraVector& x, const AlgebraCovector& mu) const
{
    require_dim(x, "ad_star vector");
    require_dim(mu, "ad_star covector");
    return ad(x).transpose() * mu;
}

AlgebraCovector LieAlgebra::flat(const AlgebraVector& x) const
{
    require_dim(x, "flat argument");
    return metric_ * x;
}

AlgebraVector LieAlgebra::sharp(const AlgebraCovector& mu) const
{
    require_dim(mu, "sharp argument");
    return metric_ldlt_.solve(mu);
}

double LieAlgebra::pair(const AlgebraCovector& mu, const AlgebraVector& x) const
{
    require_dim(mu, "pair covector");
    require_dim(x, "pair vector");
    return mu.dot(x);
}

double LieAlgebra::inner(const AlgebraVector& x, const AlgebraVector& y) const
{
    require_dim(x, "inner lhs");
    require_dim(y, "inner rhs");
    return x.dot(metric_ * y);
}

AlgebraValidation LieAlgebra::validate(double tolerance) const
{
    AlgebraValidation report;
    report.tolerance = tolerance;

    for (int k = 0; k < dim_; ++k) {
        const double v = (c_[k] + c_[k].transpose()).cwiseAbs().maxCoeff();
        report.max_antisymmetry_violation = std::max(report.max_antisymmetry_violation, v);
    }

    // sum_m (C[i][j][m] C[m][l][k] + C[j][l][m] C[m][i][k] + C[l][i][m] C[m][j][k]) = 0
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            for (int l = 0; l < dim_; ++l)
                for (int k = 0; k < dim_; ++k) {
                    double s = 0.0;
                    for (int m = 0; m < dim_; ++m)
                        s += c_[m](i, j) * c_[k](m, l) + c_[m](j, l) * c_[k](m, i)
                            + c_[m](l, i) * c_[k](m, j);
                    report.max_jacobi_violation = std::max(report.max_jacobi_violation, std::abs(s));
                }

    report.max_metric_asymmetry = (metric_ - metric_.transpose()).cwiseAbs().maxCoeff();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (metric_ + metric_.transpose()));
    report.min_metric_eigenvalue = es.eigenvalues().minCoeff();

    return report;
}

std::vector<Eigen::MatrixXd> zero_structure_constants(int n)
{
    return std::vector<Eigen::MatrixXd>(static_cast<size_t>(n), Eigen::MatrixXd::Zero(n, n));
}

namespace {

// [e_i, e_j] = c * e_k plus the antisymmetric counterpart.
void set_bracket(std::vector<Eigen::MatrixXd>& c, int i, int j, int k, double value)
{
    c[static_cast<size_t>(k)](i, j) = value;
    c[static_cast<size_t>(k)](j, i) = -value;
}

void fill_so3_block(std::vector<Eigen::MatrixXd>& c)
{
    set_bracket(c, 0, 1, 2, 1.0);
    set_bracket(c, 1, 2, 0, 1.0);
    set_bracket(c, 2, 0, 1, 1.0);
}

}  // namespace

LieAlgebra make_so3(const Eigen::Matrix3d& inertia)
{
    auto c = zero_structure_constants(3);
    fill_so3_block(c);
    return LieAlgebra("so3", std::move(c), inertia);
}

LieAlgebra make_se3(const Eigen::MatrixXd& metric)
{
    auto c = zero_structure_constants(6);
    fill_so3_block(c);
    // [(w, 0), (0, v)] = (0, w x v): [e_i, e_{3+a}] = eps_{iab} e_{3+b}
    set_bracket(c, 0, 4, 5, 1.0);
    set_bracket(c, 0, 5, 4, -1.0);
    set_bracket(c, 1, 5, 3, 1.0);
    set_bracket(c, 1, 3, 5, -1.0);
    set_bracket(c, 2, 3, 4, 1.0);
    set_bracket(c, 2, 4, 3, -1.0);
    return LieAlgebra("se3", std::move(c), metric);
}

LieAlgebra make_so3xR(const Eigen::MatrixXd& metric)
{
    auto c = zero_structure_constants(4);
    fill_so3_block(c);
    return LieAlgebra("so3xR", std::move(c), metric);
}

}  // namespace lievc
