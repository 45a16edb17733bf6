#pragma once

#include <optional>

#include "qgeom/core.hpp"

namespace qgeom {

/// kappa = <(dH)^4> - <(dH)^2>^2, the variance of (dH)^2.
double curvature(const HermitianOperator& h, const StateVector& psi);

/// kappa / <(dH)^2>^2. Throws StationaryState below variance_tolerance(h).
double curvature_dimensionless(const HermitianOperator& h, const StateVector& psi);

/// R = gamma / sqrt(kappa_bar); +infinity for geodesic motion.
double curvature_radius(const HermitianOperator& h, const StateVector& psi,
                        const PhysicalConstants& constants = {});

/// tau = kappa - <(dH)^3>^2 / <(dH)^2>. Throws StationaryState.
double torsion(const HermitianOperator& h, const StateVector& psi);

/// tau / <(dH)^2>^2. Throws StationaryState.
double torsion_dimensionless(const HermitianOperator& h, const StateVector& psi);

/// Orthonormal basis of span{psi0, psi'} where <psi0|psi'> = a e^{i alpha}:
///   phi1 = (psi0 + e^{-i alpha} psi') / sqrt(2(1 + a))
///   phi2 = (psi0 - e^{-i alpha} psi') / sqrt(2(1 - a))
struct EvolutionPlane {
    StateVector phi1;
    StateVector phi2;
    double alpha;
    double a;
};

EvolutionPlane evolution_plane(const StateVector& psi0, const StateVector& psi_prime);

/// I2 = |<phi1|psi1>|^2 + |<phi2|psi1>|^2
double plane_overlap(const EvolutionPlane& plane, const StateVector& psi1);

/// 1 - I2, from the squared norm of the out-of-plane residual.
double plane_deficit(const EvolutionPlane& plane, const StateVector& psi1);

/// gamma * sqrt(1 - I2). Throws ZeroProjection when psi1 is orthogonal to the plane.
double distance_to_plane(const EvolutionPlane& plane, const StateVector& psi1,
                         const PhysicalConstants& constants = {});

/// Single-point summary. Quantities that divide by the energy variance are
/// empty for stationary states; an infinite radius means geodesic motion.
struct GeometryReport {
    MomentSet moments;
    double speed = 0.0;
    double kappa = 0.0;
    std::optional<double> kappa_bar;
    std::optional<double> tau;
    std::optional<double> tau_bar;
    std::optional<double> radius;

    bool stationary() const { return !kappa_bar.has_value(); }
};

GeometryReport geometry_report(const HermitianOperator& h, const StateVector& psi,
                               const PhysicalConstants& constants = {});

} // namespace qgeom
