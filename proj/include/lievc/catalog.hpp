#pragma once

#include <functional>

#include "lievc/system.hpp"

namespace lievc {

/// A pre-built system together with its closed-form control/drift oracles
/// (null when a system has none). The oracles are independent formulas used
/// to cross-check the generic machinery.
struct CatalogEntry {
    ControlledSystem system;
    std::function<ControlVector(const AlgebraVector&)> closed_form_control;
    std::function<AlgebraVector(const AlgebraVector&)> closed_form_drift;
};

/// Free rigid body on SO(3): metric diag(lambda), right trivialization, no
/// inputs. Closed-form drift J^{-1}(Omega x J Omega).
CatalogEntry build_so3_rigid_body(double lambda1, double lambda2, double lambda3);

/// Homogeneous body on SE(3) with mass m and gyration radius k: the
/// rolling-type constraint span{e1 - e5, e2 + e4} with four mass-weighted
/// input columns. Closed-form control (0, 0, 0, m (w1^2 + w2^2)) on the
/// constraint.
CatalogEntry build_se3_homogeneous(double mass, double gyration_radius);

/// Rigid body with an internal rotor on SO(3) x S^1: inertia lambda, rotor
/// inertia J (needs J lambda3 - J^2 > 0), momentum-shaping gain k and
/// constraint level p. Left trivialization. The affine constraint
/// (J - k lambda3) w3 + J (1 - k) adot = p is enforced by the unique law
/// u = k (lambda1 - lambda2) w1 w2.
CatalogEntry build_rotor(double lambda1, double lambda2, double lambda3, double rotor_inertia,
                         double gain, double momentum_level);

}  // namespace lievc
