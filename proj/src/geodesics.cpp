#include "qgeom/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgeom/quadrature.hpp"
#include "qgeom/state_geometry.hpp"

namespace qgeom {

namespace {

constexpr double kOrthogonalOverlap = 1e-12;
constexpr int kCoarseScanIntervals = 64;

// Squared norm of the component of v orthogonal to u.
double orthogonal_norm2(const CVector& u, const CVector& v) {
    const Complex coeff = u.dot(v) / u.squaredNorm();
    return (v - coeff * u).squaredNorm();
}

} // namespace

GeodesicFamily::GeodesicFamily(StateVector psi0, StateVector psi1)
    : psi0_(std::move(psi0)), psi1_(std::move(psi1)) {
    const Complex overlap = inner_product(psi1_, psi0_);
    overlap_mod_ = std::abs(overlap);
    if (overlap_mod_ <= kOrthogonalOverlap)
        throw OrthogonalEndpoints("geodesic endpoints are orthogonal; the canonical phase "
                                  "<psi1|psi0>/|<psi1|psi0>| is undefined");
    phase_ = overlap / overlap_mod_;
    overlap_mod_ = std::min(overlap_mod_, 1.0);
}

GeodesicFamily geodesic_between(const StateVector& psi0, const StateVector& psi1) {
    return GeodesicFamily(psi0, psi1);
}

StateVector point_xi(const GeodesicFamily& g, double xi) {
    if (!(xi >= 0.0 && xi <= 1.0))
        throw InvalidArgument("xi must lie in [0, 1]");
    const double c = 1.0 / std::sqrt(1.0 - 2.0 * xi * (1.0 - xi) * (1.0 - g.overlap_mod()));
    CVector v = (1.0 - xi) * g.psi0().amplitudes() + (xi * g.phase()) * g.psi1().amplitudes();
    return StateVector(c * v);
}

StateVector point_theta(const GeodesicFamily& g, double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw InvalidArgument("theta must lie in [0, pi]");
    const double c = 1.0 / std::sqrt(1.0 + g.overlap_mod() * std::sin(theta));
    CVector v = std::sin(0.5 * theta) * g.psi0().amplitudes() +
                (std::cos(0.5 * theta) * g.phase()) * g.psi1().amplitudes();
    return StateVector(c * v);
}

double geodesic_length(const GeodesicFamily& g, const PhysicalConstants& constants) {
    return constants.gamma() * std::acos(g.overlap_mod());
}

double arc_length_integrand(double overlap_mod, double theta, const PhysicalConstants& constants) {
    return 0.5 * constants.gamma() * std::sqrt(1.0 - overlap_mod * overlap_mod) /
           (1.0 + overlap_mod * std::sin(theta));
}

double numeric_arc_length(double overlap_mod, const PhysicalConstants& constants, int panels) {
    if (panels < 16)
        throw InvalidArgument("numeric_arc_length needs at least 16 panels");
    if (!(overlap_mod >= 0.0 && overlap_mod <= 1.0))
        throw InvalidArgument("overlap modulus must lie in [0, 1]");
    return simpson([&](double theta) { return arc_length_integrand(overlap_mod, theta, constants); },
                   0.0, std::numbers::pi, panels);
}

double numeric_arc_length(const GeodesicFamily& g, const PhysicalConstants& constants, int panels) {
    return numeric_arc_length(g.overlap_mod(), constants, panels);
}

double phased_curve_length(const StateVector& psi0, const StateVector& psi1, Complex phase,
                           const PhysicalConstants& constants, int panels) {
    require_same_dim(psi0.dim(), psi1.dim());
    if (std::abs(std::abs(phase) - 1.0) > 1e-12)
        throw InvalidArgument("phase must be a unit complex number");
    const CVector a = psi0.amplitudes();
    const CVector b = phase * psi1.amplitudes();
    const CVector velocity = b - a;
    // |chi'_perp| / |chi| is the Fubini-Study speed of the unnormalized curve.
    auto speed = [&](double xi) {
        const CVector chi = (1.0 - xi) * a + xi * b;
        const double n2 = chi.squaredNorm();
        if (n2 == 0.0)
            throw NumericalError("curve passes through the zero vector");
        return constants.gamma() * std::sqrt(orthogonal_norm2(chi, velocity) / n2);
    };
    return simpson(speed, 0.0, 1.0, panels);
}

GeodesicProjection distance_to_geodesic(const StateVector& probe, const GeodesicFamily& g,
                                        const PhysicalConstants& constants) {
    require_same_dim(g.psi0().dim(), probe.dim());
    auto f = [&](double xi) { return infidelity(probe, point_xi(g, xi)); };

    int best = 0;
    double best_value = f(0.0);
    for (int i = 1; i <= kCoarseScanIntervals; ++i) {
        const double v = f(static_cast<double>(i) / kCoarseScanIntervals);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    const double lo = static_cast<double>(std::max(best - 1, 0)) / kCoarseScanIntervals;
    const double hi =
        static_cast<double>(std::min(best + 1, kCoarseScanIntervals)) / kCoarseScanIntervals;
    double xi = golden_section_minimize(f, lo, hi);
    double value = f(xi);
    // The basin may end at the segment boundary.
    for (double edge : {lo, hi}) {
        const double v = f(edge);
        if (v < value) {
            value = v;
            xi = edge;
        }
    }
    return {constants.gamma() * std::sqrt(value), xi};
}

} // namespace qgeom
