#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "lievc/catalog.hpp"
#include "lievc/connections.hpp"
#include "lievc/errors.hpp"
#include "lievc/system.hpp"
#include "test_util.hpp"

using namespace lievc;
using namespace lievc::testing;

namespace {

Subspace orthogonal_complement(const LieAlgebra& a, const Subspace& d)
{
    const Eigen::MatrixXd bm = d.basis().transpose() * a.metric();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(bm, Eigen::ComputeFullV);
    return Subspace(svd.matrixV().rightCols(a.dim() - d.dim()));
}

/// On-constraint se3 state (w1, w2, 0 | w2, -w1, 0).
Eigen::VectorXd se3_constraint_state(double w1, double w2)
{
    Eigen::VectorXd x(6);
    x << w1, w2, 0.0, w2, -w1, 0.0;
    return x;
}

}  // namespace

TEST_CASE("annihilator of a coordinate subspace spans the complementary duals")
{
    Eigen::MatrixXd basis(5, 2);
    basis.setZero();
    basis(0, 0) = 1.0;
    basis(1, 1) = 1.0;
    const auto ann = annihilator(Subspace(basis));
    REQUIRE(ann.count() == 3);
    CHECK((ann.rows * basis).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((ann.rows * ann.rows.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff()
          < 1e-12);
    // rows live in the span of e3*, e4*, e5*
    CHECK(ann.rows.leftCols(2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("se3 annihilator row space matches the printed constraint covectors")
{
    Eigen::MatrixXd basis(6, 2);
    basis.setZero();
    basis(0, 0) = 1.0;
    basis(4, 0) = -1.0;
    basis(1, 1) = 1.0;
    basis(3, 1) = 1.0;
    const auto ann = annihilator(Subspace(basis));
    REQUIRE(ann.count() == 4);
    CHECK((ann.rows * basis).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::MatrixXd expected(4, 6);
    expected << 1, 0, 0, 0, 1, 0,   // w1 + ydot = 0
                0, 1, 0, -1, 0, 0,  // w2 - xdot = 0
                0, 0, 1, 0, 0, 0,   // w3 = 0
                0, 0, 0, 0, 0, 1;   // zdot = 0
    // identical row spaces: stacking does not increase the rank
    Eigen::MatrixXd stacked(8, 6);
    stacked << ann.rows, expected;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-10 * svd.singularValues()(0)) ++rank;
    CHECK(rank == 4);
}

TEST_CASE("rotor annihilator row is proportional to the constraint covector")
{
    const double J = 0.5, k = 0.5, l3 = 3.0;
    const auto entry = build_rotor(1.0, 2.0, l3, J, k, 0.0);
    const Eigen::MatrixXd rows = entry.system.annihilator_basis().rows;
    REQUIRE(rows.rows() == 1);
    const Eigen::Vector4d mu(0.0, 0.0, J - k * l3, J * (1.0 - k));
    const double cosine = std::abs(rows.row(0).dot(mu) / (rows.row(0).norm() * mu.norm()));
    CHECK(cosine == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("transversality check accepts the catalog pairs and rejects f = d")
{
    const auto se3 = build_se3_homogeneous(1.0, 0.7);
    const auto se3_report =
        check_transversal(se3.system.constraint_subspace(), *se3.system.input_span());
    CHECK(se3_report.transversal);
    CHECK(se3_report.rank == 6);

    const auto rotor = build_rotor(1.0, 2.0, 3.0, 0.5, 0.5, 0.0);
    const auto rotor_report =
        check_transversal(rotor.system.constraint_subspace(), *rotor.system.input_span());
    CHECK(rotor_report.transversal);
    CHECK(rotor_report.rank == 4);

    const Subspace d = se3.system.constraint_subspace();
    CHECK_FALSE(check_transversal(d, d).transversal);
}

TEST_CASE("drift vanishes at the origin and matches the Euler equations")
{
    const auto body = build_so3_rigid_body(1.0, 2.0, 3.0);
    CHECK(body.system.drift(Eigen::Vector3d::Zero()).norm() == doctest::Approx(0.0));

    std::mt19937_64 rng(101);
    const Eigen::Vector3d lambda(1.0, 2.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const Eigen::Vector3d w = random_vector(rng, 3);
        const Eigen::VectorXd drift = body.system.drift(w);
        // componentwise (l3 - l2)/l1 w2 w3 and cyclic
        CHECK(std::abs(drift(0) - (lambda(2) - lambda(1)) / lambda(0) * w(1) * w(2)) < 1e-12);
        CHECK(std::abs(drift(1) - (lambda(0) - lambda(2)) / lambda(1) * w(0) * w(2)) < 1e-12);
        CHECK(std::abs(drift(2) - (lambda(1) - lambda(0)) / lambda(2) * w(0) * w(1)) < 1e-12);
    }
}

TEST_CASE("control law is zero at the origin")
{
    const auto se3 = build_se3_homogeneous(1.0, 0.7);
    CHECK(se3.system.control_law(Eigen::VectorXd::Zero(6)).norm() == doctest::Approx(0.0));
    const auto rotor = build_rotor(1.0, 2.0, 3.0, 0.5, 0.5, 0.3);
    CHECK(rotor.system.control_law(Eigen::VectorXd::Zero(4)).norm() == doctest::Approx(0.0));
}

TEST_CASE("se3 control law reproduces the closed form on the constraint")
{
    const double m = 1.3;
    const auto entry = build_se3_homogeneous(m, 0.7);
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const double w1 = uni(rng), w2 = uni(rng);
        const ControlVector u = entry.system.control_law(se3_constraint_state(w1, w2));
        CHECK(u.head<3>().cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(u(3) - m * (w1 * w1 + w2 * w2)) < 1e-12);
    }
}

TEST_CASE("rotor control law reproduces the closed form everywhere")
{
    const double l1 = 1.0, l2 = 2.0, l3 = 3.0, J = 0.5, k = 0.7;
    const auto entry = build_rotor(l1, l2, l3, J, k, 0.3);
    std::mt19937_64 rng(107);
    for (int i = 0; i < 1000; ++i) {
        const Eigen::VectorXd x = random_vector(rng, 4, 2.0);
        const ControlVector u = entry.system.control_law(x);
        REQUIRE(u.size() == 1);
        CHECK(std::abs(u(0) - k * (l1 - l2) * x(0) * x(1)) < 1e-12);
    }
}

TEST_CASE("closed loop annihilates the constraint covectors at every state")
{
    std::mt19937_64 rng(109);
    const auto se3 = build_se3_homogeneous(1.0, 0.7);
    const auto rotor = build_rotor(1.0, 2.0, 3.0, 0.5, 0.5, 0.3);
    for (const ControlledSystem* sys : {&se3.system, &rotor.system}) {
        double max_err = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const Eigen::VectorXd x = random_vector(rng, sys->algebra().dim());
            const Eigen::VectorXd res =
                sys->annihilator_basis().rows * sys->closed_loop_field(x);
            max_err = std::max(max_err, res.cwiseAbs().maxCoeff());
        }
        CHECK(max_err < 1e-12);
    }
}

TEST_CASE("closed loop keeps on-constraint states inside the constraint")
{
    const auto entry = build_se3_homogeneous(1.0, 0.7);
    const Subspace& d = entry.system.constraint_subspace();
    std::mt19937_64 rng(113);
    for (int i = 0; i < 200; ++i) {
        const Eigen::VectorXd x = d.basis() * random_vector(rng, 2);
        CHECK(d.contains(entry.system.closed_loop_field(x), 1e-10));
    }
}

TEST_CASE("closed loop is the geodesic field of the induced connection")
{
    // xi' = -sigma * c_connection(xi, xi) for on-constraint states
    std::mt19937_64 rng(127);
    const auto se3 = build_se3_homogeneous(1.0, 0.7);
    const auto rotor = build_rotor(1.0, 2.0, 3.0, 0.5, 0.5, 0.0);
    for (const ControlledSystem* sys : {&se3.system, &rotor.system}) {
        const Subspace& d = sys->constraint_subspace();
        double max_err = 0.0;
        for (int i = 0; i < 200; ++i) {
            const Eigen::VectorXd x = d.basis() * random_vector(rng, d.dim());
            const Eigen::VectorXd defect =
                sys->closed_loop_field(x) + sys->constrained_connection(x, x);
            max_err = std::max(max_err, defect.cwiseAbs().maxCoeff());
        }
        CHECK(max_err < 1e-12);
    }
}

TEST_CASE("affine constraints preserve every coset of the direction subspace")
{
    const auto entry = build_rotor(1.0, 2.0, 3.0, 0.5, 0.5, 0.3);
    std::mt19937_64 rng(131);
    for (int i = 0; i < 500; ++i) {
        const Eigen::VectorXd x = random_vector(rng, 4, 2.0);
        const Eigen::VectorXd res =
            entry.system.annihilator_basis().rows * entry.system.closed_loop_field(x);
        CHECK(res.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("rotor with k = J/lambda3 freezes the rotor rate everywhere")
{
    const double J = 0.5, l3 = 3.0;
    const auto entry = build_rotor(1.0, 2.0, l3, J, J / l3, 0.0);
    std::mt19937_64 rng(137);
    for (int i = 0; i < 500; ++i) {
        const Eigen::VectorXd x = random_vector(rng, 4, 2.0);
        CHECK(std::abs(entry.system.closed_loop_field(x)(3)) < 1e-12);
    }
}

TEST_CASE("constraint residual vanishes exactly where it should")
{
    const auto se3 = build_se3_homogeneous(1.0, 0.7);
    std::mt19937_64 rng(139);
    for (int i = 0; i < 100; ++i) {
        const Eigen::VectorXd x =
            se3.system.constraint_subspace().basis() * random_vector(rng, 2);
        CHECK(se3.system.constraint_residual(x).cwiseAbs().maxCoeff() < 1e-12);
    }

    const double p = 0.4;
    const auto rotor = build_rotor(1.0, 2.0, 3.0, 0.5, 0.5, p);
    const AlgebraVector a0 = constraint_offset(rotor.system.constraint());
    CHECK(rotor.system.constraint_residual(a0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rotor residual is proportional to the raw constraint covector")
{
    const double J = 0.5, k = 0.5, l3 = 3.0, p = 0.3;
    const auto entry = build_rotor(1.0, 2.0, l3, J, k, p);
    const Eigen::Vector4d mu(0.0, 0.0, J - k * l3, J * (1.0 - k));
    std::mt19937_64 rng(149);
    for (int i = 0; i < 200; ++i) {
        const Eigen::VectorXd x = random_vector(rng, 4, 2.0);
        const double got = entry.system.constraint_residual(x)(0);
        const double paper = mu.dot(x) - p;
        CHECK(std::abs(std::abs(got) * mu.norm() - std::abs(paper)) < 1e-10);
    }
}

TEST_CASE("the control law is the unique annihilating feedback")
{
    const auto entry = build_se3_homogeneous(1.0, 0.7);
    const Eigen::MatrixXd af =
        entry.system.annihilator_basis().rows * entry.system.input_basis();
    REQUIRE(af.rows() == af.cols());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(af);
    const double smin = svd.singularValues().minCoeff();
    CHECK(smin > 1e-6);

    // perturbing the control re-excites the constraint derivative
    std::mt19937_64 rng(151);
    const Eigen::VectorXd x = random_vector(rng, 6);
    const ControlVector u = entry.system.control_law(x);
    for (int i = 0; i < 50; ++i) {
        const Eigen::VectorXd delta = random_vector(rng, 4);
        const Eigen::VectorXd res = entry.system.annihilator_basis().rows
            * (entry.system.drift(x) + entry.system.input_basis() * (u + delta));
        CHECK(res.norm() >= 0.9 * smin * delta.norm());
    }
}

TEST_CASE("orthogonal inputs reduce the closed loop to the nonholonomic flow")
{
    // Remark-style reduction: f the metric complement of d makes the closed
    // loop the d-connection geodesic field
    std::mt19937_64 rng(157);
    const LieAlgebra algebra = make_so3xR(random_spd(rng, 4));
    const Subspace d(random_matrix(rng, 4, 3));
    const Subspace f = orthogonal_complement(algebra, d);

    ControlledSystem sys(algebra, std::nullopt, +1, f.basis(), Constraint(d), "orthogonal_case");
    double max_err = 0.0;
    double max_power = 0.0;
    for (int i = 0; i < 300; ++i) {
        const Eigen::VectorXd x = d.basis() * random_vector(rng, 3);
        const Eigen::VectorXd defect = sys.closed_loop_field(x) + d_connection(algebra, d, x, x);
        max_err = std::max(max_err, defect.cwiseAbs().maxCoeff());
        max_power = std::max(max_power, std::abs(sys.input_power(x)));
    }
    CHECK(max_err < 1e-12);
    CHECK(max_power < 1e-12);  // no work done on the constraint
}

TEST_CASE("power balance: energy rate equals the input power")
{
    const auto rotor = build_rotor(1.0, 2.0, 3.0, 0.5, 0.7, 0.2);
    std::mt19937_64 rng(163);
    for (int i = 0; i < 300; ++i) {
        const Eigen::VectorXd x = random_vector(rng, 4, 2.0);
        const double energy_rate =
            rotor.system.algebra().inner(x, rotor.system.closed_loop_field(x));
        CHECK(std::abs(energy_rate - rotor.system.input_power(x)) < 1e-10);
    }
}

TEST_CASE("construction rejects ill-posed systems")
{
    const LieAlgebra a = make_so3(Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal());

    // as many inputs as dimensions
    CHECK_THROWS_AS(ControlledSystem(a, std::nullopt, +1, Eigen::MatrixXd::Identity(3, 3),
                                     std::nullopt, "bad"),
                    ContractError);

    // dependent input columns
    Eigen::MatrixXd dependent(3, 2);
    dependent << 1, 2, 0, 0, 0, 0;
    CHECK_THROWS_AS(ControlledSystem(a, std::nullopt, +1, dependent, std::nullopt, "bad"),
                    SubspaceError);

    // dimension count wrong: 1-dim constraint with 1 input in a 3-dim algebra
    CHECK_THROWS_AS(ControlledSystem(a, std::nullopt, +1, Eigen::Vector3d::UnitZ(),
                                     Constraint(Subspace(Eigen::Vector3d::UnitX())), "bad"),
                    TransversalityError);

    // correct counts but f intersects d
    Eigen::MatrixXd d_basis(3, 2);
    d_basis << 1, 0, 0, 1, 0, 0;
    try {
        ControlledSystem(a, std::nullopt, +1, Eigen::Vector3d::UnitX(),
                         Constraint(Subspace(d_basis)), "bad");
        FAIL("expected TransversalityError");
    } catch (const TransversalityError& err) {
        CHECK(err.rank_found == 2);
        CHECK(err.rank_expected == 3);
    }

    // mismatched group model
    CHECK_THROWS_AS(ControlledSystem(a, GroupModel::se3(), +1, Eigen::MatrixXd::Zero(3, 0),
                                     std::nullopt, "bad"),
                    DimensionError);
}
