#include "qgeom/curvature_torsion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qgeom/state_geometry.hpp"

namespace qgeom {

namespace {

constexpr double kFlatKappaBar = 1e-12;
constexpr double kPlaneOverlapTolerance = 1e-12;
constexpr double kZeroProjection = 1e-14;

// Vectors behind kappa and tau. With u = dH psi and w = ((dH)^2 - var) psi:
//   var   = |u|^2
//   kappa = |w|^2
//   tau   = |w - (<u|w>/|u|^2) u|^2,  <u|w> = <(dH)^3>
// Each is a squared norm, so cancellation in <(dH)^4> - var^2 never occurs.
struct Deviations {
    double var;
    CVector u;
    CVector w;
};

Deviations deviations(const HermitianOperator& h, const StateVector& psi) {
    const double mean = expectation(h, psi);
    const CVector& v = psi.amplitudes();
    CVector u = h.apply(v) - mean * v;
    const double var = u.squaredNorm();
    CVector w = h.apply(u) - mean * u - var * v;
    return {var, std::move(u), std::move(w)};
}

void require_moving(const HermitianOperator& h, double var) {
    if (!(var > variance_tolerance(h)))
        throw StationaryState("energy variance " + std::to_string(var) +
                              " is below the stationarity threshold");
}

double torsion_from(const Deviations& d) {
    const Complex coeff = d.u.dot(d.w) / d.var;
    return (d.w - coeff * d.u).squaredNorm();
}

} // namespace

double curvature(const HermitianOperator& h, const StateVector& psi) {
    require_same_dim(h.dim(), psi.dim());
    return deviations(h, psi).w.squaredNorm();
}

double curvature_dimensionless(const HermitianOperator& h, const StateVector& psi) {
    require_same_dim(h.dim(), psi.dim());
    const Deviations d = deviations(h, psi);
    require_moving(h, d.var);
    return d.w.squaredNorm() / (d.var * d.var);
}

double curvature_radius(const HermitianOperator& h, const StateVector& psi,
                        const PhysicalConstants& constants) {
    const double kappa_bar = curvature_dimensionless(h, psi);
    if (kappa_bar <= kFlatKappaBar)
        return std::numeric_limits<double>::infinity();
    return constants.gamma() / std::sqrt(kappa_bar);
}

double torsion(const HermitianOperator& h, const StateVector& psi) {
    require_same_dim(h.dim(), psi.dim());
    const Deviations d = deviations(h, psi);
    require_moving(h, d.var);
    return torsion_from(d);
}

double torsion_dimensionless(const HermitianOperator& h, const StateVector& psi) {
    require_same_dim(h.dim(), psi.dim());
    const Deviations d = deviations(h, psi);
    require_moving(h, d.var);
    return torsion_from(d) / (d.var * d.var);
}

EvolutionPlane evolution_plane(const StateVector& psi0, const StateVector& psi_prime) {
    const Complex overlap = inner_product(psi0, psi_prime);
    const double a = std::abs(overlap);
    if (a <= kPlaneOverlapTolerance)
        throw OrthogonalStates("states spanning the evolution plane are orthogonal");
    // 1 - a from the orthogonal residual keeps phi2 accurate for close rays.
    const double one_minus_a = infidelity(psi0, psi_prime) / (1.0 + std::min(a, 1.0));
    if (one_minus_a <= kPlaneOverlapTolerance)
        throw DegeneratePlane("states spanning the evolution plane are the same ray");
    const double alpha = std::arg(overlap);
    const Complex rephase = std::polar(1.0, -alpha);
    const CVector& p0 = psi0.amplitudes();
    const CVector rotated = rephase * psi_prime.amplitudes();
    CVector phi1 = (p0 + rotated) / std::sqrt(2.0 * (1.0 + a));
    CVector phi2 = (p0 - rotated) / std::sqrt(2.0 * one_minus_a);
    return EvolutionPlane{StateVector(std::move(phi1)), StateVector(std::move(phi2)), alpha, a};
}

double plane_overlap(const EvolutionPlane& plane, const StateVector& psi1) {
    return std::norm(inner_product(plane.phi1, psi1)) + std::norm(inner_product(plane.phi2, psi1));
}

double plane_deficit(const EvolutionPlane& plane, const StateVector& psi1) {
    require_same_dim(plane.phi1.dim(), psi1.dim());
    const CVector& f1 = plane.phi1.amplitudes();
    const CVector& f2 = plane.phi2.amplitudes();
    const CVector& v = psi1.amplitudes();
    CVector residual = v - f1.dot(v) * f1 - f2.dot(v) * f2;
    // Second pass absorbs the small non-orthogonality of the stored basis.
    residual -= f1.dot(residual) * f1 + f2.dot(residual) * f2;
    return residual.squaredNorm() / v.squaredNorm();
}

double distance_to_plane(const EvolutionPlane& plane, const StateVector& psi1,
                         const PhysicalConstants& constants) {
    const double deficit = plane_deficit(plane, psi1);
    if (1.0 - deficit <= kZeroProjection)
        throw ZeroProjection("state has no projection onto the evolution plane");
    return constants.gamma() * std::sqrt(deficit);
}

GeometryReport geometry_report(const HermitianOperator& h, const StateVector& psi,
                               const PhysicalConstants& constants) {
    require_same_dim(h.dim(), psi.dim());
    GeometryReport report;
    report.moments = moments(h, psi);
    report.speed = evolution_speed(h, psi, constants);

    const Deviations d = deviations(h, psi);
    report.kappa = d.w.squaredNorm();
    if (d.var > variance_tolerance(h)) {
        const double var2 = d.var * d.var;
        report.kappa_bar = report.kappa / var2;
        report.tau = torsion_from(d);
        report.tau_bar = *report.tau / var2;
        report.radius = *report.kappa_bar <= kFlatKappaBar
                            ? std::numeric_limits<double>::infinity()
                            : constants.gamma() / std::sqrt(*report.kappa_bar);
    }
    return report;
}

} // namespace qgeom
