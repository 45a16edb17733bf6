#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qgeom/core.hpp"

namespace qgeom {

/// Values at or below this are treated as numerical zero by the scaling fit.
inline constexpr double kNoiseFloor = 1e-13;
inline constexpr std::size_t kMinCurvePoints = 6;
inline constexpr std::size_t kMinFitPoints = 5;

struct CurvePoint {
    double dt;
    double value;
};

/// Squared distance of psi' = U(dt) psi0 from the geodesic joining psi0 and
/// psi1 = U(2 dt) psi0, for each dt. Leading order: gamma^2 kappa dt^4 / (4 hbar^4).
std::vector<CurvePoint> curvature_deviation_curve(const HermitianOperator& h,
                                                  const StateVector& psi0,
                                                  std::span<const double> dts,
                                                  const PhysicalConstants& constants = {});

/// 1 - I2 for psi1 = U(ratio * dt) psi' against the plane of (psi0, psi').
/// Leading order: tau dt'^2 (dt + dt')^2 / (4 hbar^4). The first factor is
/// the second-stage step: the deficit vanishes as dt' -> 0 because psi1 then
/// falls back into the plane.
std::vector<CurvePoint> torsion_deviation_curve(const HermitianOperator& h,
                                                const StateVector& psi0,
                                                std::span<const double> dts,
                                                double dt_prime_ratio,
                                                const PhysicalConstants& constants = {});

struct ScalingFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double residual = 0.0;         // max relative misfit over the fitted points
    std::vector<double> window;    // every dt supplied, decreasing
    std::size_t points_used = 0;   // points above the noise floor
};

/// gamma^2 kappa / (4 hbar^4): coefficient of dt^4 in the curvature curve.
double predicted_curvature_prefactor(double kappa, const PhysicalConstants& constants = {});

/// tau ratio^2 (1 + ratio)^2 / (4 hbar^4): coefficient of dt^4 in the torsion
/// curve with dt' = ratio * dt.
double predicted_torsion_prefactor(double tau, double dt_prime_ratio,
                                   const PhysicalConstants& constants = {});

/// Least-squares line through (log dt, log value). The curve needs at least
/// 6 points on a decreasing geometric dt window; points at or below
/// kNoiseFloor are dropped and at least 5 must remain.
ScalingFit fit_power_law(std::span<const CurvePoint> curve);

std::vector<double> geometric_window(double start, std::size_t points, double ratio);

/// 8-point window with ratio 1/2, starting where the arc length v * 2 dt
/// equals 0.1 gamma.
std::vector<double> default_window(const HermitianOperator& h, const StateVector& psi,
                                   const PhysicalConstants& constants = {},
                                   std::size_t points = 8, double ratio = 0.5);

/// |(dH)^2 psi - <(dH)^2> psi|; zero exactly for states whose evolution
/// follows a geodesic.
double geodesic_eigencondition_residual(const HermitianOperator& h, const StateVector& psi);

/// (v_i + e^{i alpha} v_j) / sqrt(2)
StateVector make_geodesic_state(const SpectralDecomposition& spec, Eigen::Index i,
                                Eigen::Index j, double alpha);

/// omega (n . sigma) + epsilon * Id, with |n| = 1.
HermitianOperator two_level_hamiltonian(double omega, const std::array<double, 3>& n,
                                        double epsilon);

/// Moments of the eigenvalue distribution with weights |<v_k|psi>|^2.
MomentSet classical_moments(const SpectralDecomposition& spec, const StateVector& psi);

using Rng = std::mt19937_64;

/// Independent stream for one suite of a seeded run.
Rng suite_rng(std::uint64_t seed, std::uint64_t suite);

/// Gaussian entries, Hermitian part, scaled to unit Frobenius norm.
HermitianOperator random_hermitian(Eigen::Index dim, Rng& rng);

/// Normalized complex Gaussian vector.
StateVector random_state(Eigen::Index dim, Rng& rng);

} // namespace qgeom
