#pragma once

#include "qgeom/core.hpp"

namespace qgeom {

/// The geodesic between two state rays,
///   psi(xi) = C [(1 - xi) psi0 + xi e^{i phi} psi1],  0 <= xi <= 1,
/// with the canonical phase e^{i phi} = <psi1|psi0> / |<psi1|psi0>|. That
/// phase makes the family depend only on the rays, not on the representative
/// vectors. Orthogonal endpoints have no canonical phase and are rejected.
class GeodesicFamily {
public:
    GeodesicFamily(StateVector psi0, StateVector psi1);

    const StateVector& psi0() const { return psi0_; }
    const StateVector& psi1() const { return psi1_; }
    Complex phase() const { return phase_; }
    double overlap_mod() const { return overlap_mod_; }

private:
    StateVector psi0_;
    StateVector psi1_;
    Complex phase_;
    double overlap_mod_;
};

GeodesicFamily geodesic_between(const StateVector& psi0, const StateVector& psi1);

/// Point on the linear parametrization, xi in [0, 1].
StateVector point_xi(const GeodesicFamily& g, double xi);

/// Point on the angular parametrization, theta in [0, pi]; theta = pi is psi0.
StateVector point_theta(const GeodesicFamily& g, double theta);

/// Closed-form length, gamma * arccos|<psi1|psi0>|.
double geodesic_length(const GeodesicFamily& g, const PhysicalConstants& constants = {});

/// Line element ds/dtheta of the angular parametrization.
double arc_length_integrand(double overlap_mod, double theta,
                            const PhysicalConstants& constants = {});

/// Composite Simpson integral of the line element over theta in [0, pi].
/// `panels` must be even and at least 16.
double numeric_arc_length(double overlap_mod, const PhysicalConstants& constants, int panels);
double numeric_arc_length(const GeodesicFamily& g, const PhysicalConstants& constants = {},
                          int panels = 1024);

/// Length of the linear-combination curve C[(1 - xi) psi0 + xi * phase * psi1]
/// for an arbitrary unit `phase`, integrated numerically over xi. Equals
/// geodesic_length only for the canonical phase.
double phased_curve_length(const StateVector& psi0, const StateVector& psi1, Complex phase,
                           const PhysicalConstants& constants = {}, int panels = 4096);

struct GeodesicProjection {
    double distance;  // gamma * sqrt(min_xi (1 - |<probe|psi(xi)>|^2))
    double xi;        // minimizer in [0, 1]
};

/// Fubini-Study distance from `probe` to the geodesic segment: a 64-interval
/// scan locates the basin, golden-section search refines xi.
GeodesicProjection distance_to_geodesic(const StateVector& probe, const GeodesicFamily& g,
                                        const PhysicalConstants& constants = {});

} // namespace qgeom
