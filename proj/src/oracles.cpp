#include "qgeom/oracles.hpp"

#include <cmath>

#include "qgeom/curvature_torsion.hpp"
#include "qgeom/geodesics.hpp"

namespace qgeom {

namespace {

void require_positive_dts(std::span<const double> dts) {
    for (double dt : dts)
        if (!(dt > 0.0) || !std::isfinite(dt))
            throw InvalidArgument("time steps must be positive and finite");
}

void require_geometric_window(std::span<const CurvePoint> curve) {
    const double ratio = curve[1].dt / curve[0].dt;
    if (!(ratio > 0.0 && ratio < 1.0))
        throw InvalidArgument("dt window must be strictly decreasing");
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double r = curve[i].dt / curve[i - 1].dt;
        if (std::abs(r - ratio) > 1e-9 * ratio)
            throw InvalidArgument("dt window must be a geometric sequence");
    }
}

} // namespace

std::vector<CurvePoint> curvature_deviation_curve(const HermitianOperator& h,
                                                  const StateVector& psi0,
                                                  std::span<const double> dts,
                                                  const PhysicalConstants& constants) {
    require_same_dim(h.dim(), psi0.dim());
    require_positive_dts(dts);
    const SpectralDecomposition spec = spectral(h);
    std::vector<CurvePoint> out;
    out.reserve(dts.size());
    for (double dt : dts) {
        const StateVector mid = evolve(spec, psi0, dt, constants);
        const StateVector end = evolve(spec, psi0, 2.0 * dt, constants);
        const GeodesicProjection p = distance_to_geodesic(mid, geodesic_between(psi0, end), constants);
        out.push_back({dt, p.distance * p.distance});
    }
    return out;
}

std::vector<CurvePoint> torsion_deviation_curve(const HermitianOperator& h,
                                                const StateVector& psi0,
                                                std::span<const double> dts,
                                                double dt_prime_ratio,
                                                const PhysicalConstants& constants) {
    require_same_dim(h.dim(), psi0.dim());
    require_positive_dts(dts);
    if (!(dt_prime_ratio > 0.0) || !std::isfinite(dt_prime_ratio))
        throw InvalidArgument("dt' / dt ratio must be positive");
    const SpectralDecomposition spec = spectral(h);
    std::vector<CurvePoint> out;
    out.reserve(dts.size());
    for (double dt : dts) {
        const StateVector mid = evolve(spec, psi0, dt, constants);
        const StateVector end = evolve(spec, mid, dt_prime_ratio * dt, constants);
        out.push_back({dt, plane_deficit(evolution_plane(psi0, mid), end)});
    }
    return out;
}

double predicted_curvature_prefactor(double kappa, const PhysicalConstants& constants) {
    const double g = constants.gamma();
    return g * g * kappa / (4.0 * std::pow(constants.hbar(), 4));
}

double predicted_torsion_prefactor(double tau, double dt_prime_ratio,
                                   const PhysicalConstants& constants) {
    const double r = dt_prime_ratio;
    return tau * r * r * (1.0 + r) * (1.0 + r) / (4.0 * std::pow(constants.hbar(), 4));
}

ScalingFit fit_power_law(std::span<const CurvePoint> curve) {
    if (curve.size() < kMinCurvePoints)
        throw InvalidArgument("scaling fit needs at least " + std::to_string(kMinCurvePoints) +
                              " points");
    for (const auto& p : curve)
        if (!(p.value > 0.0))
            throw NonPositiveValues("scaling fit needs strictly positive values (dt = " +
                                    std::to_string(p.dt) + ")");
    require_geometric_window(curve);

    ScalingFit fit;
    double sx = 0.0, sy = 0.0;
    std::vector<std::pair<double, double>> logs;
    for (const auto& p : curve) {
        fit.window.push_back(p.dt);
        if (p.value <= kNoiseFloor)
            continue;
        logs.emplace_back(std::log(p.dt), std::log(p.value));
        sx += logs.back().first;
        sy += logs.back().second;
    }
    fit.points_used = logs.size();
    if (fit.points_used < kMinFitPoints)
        throw FlatCurve("only " + std::to_string(fit.points_used) +
                        " points lie above the noise floor; the curve is flat at numerical zero");

    const double n = static_cast<double>(logs.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : logs) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    fit.exponent = sxy / sxx;
    fit.prefactor = std::exp(my - fit.exponent * mx);
    for (const auto& p : curve) {
        if (p.value <= kNoiseFloor)
            continue;
        const double model = fit.prefactor * std::pow(p.dt, fit.exponent);
        fit.residual = std::max(fit.residual, std::abs(p.value / model - 1.0));
    }
    return fit;
}

std::vector<double> geometric_window(double start, std::size_t points, double ratio) {
    if (!(start > 0.0) || !std::isfinite(start))
        throw InvalidArgument("window start must be positive");
    if (!(ratio > 0.0 && ratio < 1.0))
        throw InvalidArgument("window ratio must lie in (0, 1)");
    std::vector<double> dts(points);
    for (std::size_t i = 0; i < points; ++i)
        dts[i] = start * std::pow(ratio, static_cast<double>(i));
    return dts;
}

std::vector<double> default_window(const HermitianOperator& h, const StateVector& psi,
                                   const PhysicalConstants& constants, std::size_t points,
                                   double ratio) {
    const double var = central_moment(h, psi, 2);
    if (!(var > variance_tolerance(h)))
        throw StationaryState("no motion: the default window is undefined for a stationary state");
    // v * 2 dt = 0.1 gamma  <=>  dt = 0.05 hbar / sqrt(var)
    return geometric_window(0.05 * constants.hbar() / std::sqrt(var), points, ratio);
}

double geodesic_eigencondition_residual(const HermitianOperator& h, const StateVector& psi) {
    require_same_dim(h.dim(), psi.dim());
    const CVector& v = psi.amplitudes();
    const double mean = expectation(h, psi);
    const CVector u = h.apply(v) - mean * v;
    const CVector w = h.apply(u) - mean * u;
    return (w - u.squaredNorm() * v).norm();
}

StateVector make_geodesic_state(const SpectralDecomposition& spec, Eigen::Index i, Eigen::Index j,
                                double alpha) {
    if (i < 0 || j < 0 || i >= spec.dim() || j >= spec.dim())
        throw InvalidArgument("eigenstate index out of range");
    if (i == j)
        throw InvalidArgument("geodesic state needs two distinct eigenstates");
    CVector v = (spec.eigenvectors.col(i) + std::polar(1.0, alpha) * spec.eigenvectors.col(j)) /
                std::sqrt(2.0);
    return StateVector(std::move(v));
}

HermitianOperator two_level_hamiltonian(double omega, const std::array<double, 3>& n,
                                        double epsilon) {
    const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (std::abs(norm - 1.0) > 1e-12)
        throw InvalidArgument("two-level axis n must be a unit vector");
    const Complex i(0.0, 1.0);
    CMatrix m(2, 2);
    m(0, 0) = omega * n[2] + epsilon;
    m(1, 1) = -omega * n[2] + epsilon;
    m(0, 1) = omega * (n[0] - i * n[1]);
    m(1, 0) = omega * (n[0] + i * n[1]);
    return HermitianOperator(std::move(m));
}

MomentSet classical_moments(const SpectralDecomposition& spec, const StateVector& psi) {
    require_same_dim(spec.dim(), psi.dim());
    const RVector weights = (spec.eigenvectors.adjoint() * psi.amplitudes()).cwiseAbs2();
    const double total = weights.sum();
    MomentSet m;
    m.mean = weights.dot(spec.eigenvalues) / total;
    for (Eigen::Index k = 0; k < weights.size(); ++k) {
        const double d = spec.eigenvalues[k] - m.mean;
        const double p = weights[k] / total;
        m.var += p * d * d;
        m.central3 += p * d * d * d;
        m.central4 += p * d * d * d * d;
    }
    return m;
}

Rng suite_rng(std::uint64_t seed, std::uint64_t suite) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(suite), static_cast<std::uint32_t>(suite >> 32)};
    return Rng(seq);
}

HermitianOperator random_hermitian(Eigen::Index dim, Rng& rng) {
    std::normal_distribution<double> normal;
    CMatrix a(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
            a(r, c) = Complex(normal(rng), normal(rng));
    CMatrix h = 0.5 * (a + a.adjoint());
    h /= h.norm();
    return HermitianOperator(std::move(h));
}

StateVector random_state(Eigen::Index dim, Rng& rng) {
    std::normal_distribution<double> normal;
    CVector v(dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        v[k] = Complex(normal(rng), normal(rng));
    return StateVector(std::move(v));
}

} // namespace qgeom
