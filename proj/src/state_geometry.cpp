#include "qgeom/state_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace qgeom {

namespace {

// Scale-free: neither a nor b has to be exactly unit norm.
double infidelity_raw(const CVector& a, const CVector& b) {
    const Complex coeff = a.dot(b) / a.squaredNorm();
    const CVector orth = b - coeff * a;
    return std::clamp(orth.squaredNorm() / b.squaredNorm(), 0.0, 1.0);
}

} // namespace

double infidelity(const StateVector& a, const StateVector& b) {
    require_same_dim(a.dim(), b.dim());
    return infidelity_raw(a.amplitudes(), b.amplitudes());
}

double fubini_study_distance(const StateVector& a, const StateVector& b,
                             const PhysicalConstants& constants) {
    return constants.gamma() * std::sqrt(infidelity(a, b));
}

double wootters_distance(const StateVector& a, const StateVector& b,
                         const PhysicalConstants& constants) {
    require_same_dim(a.dim(), b.dim());
    // atan2(sin, cos) of the ray angle; better conditioned than arccos near 0.
    const double overlap = std::min(1.0, std::abs(inner_product(a, b)));
    const double sine = std::sqrt(infidelity(a, b));
    return constants.gamma() * std::atan2(sine, overlap);
}

MetricTensor::MetricTensor(Eigen::MatrixXd g) : g_(std::move(g)) {
    if (g_.rows() != g_.cols())
        throw InvalidArgument("metric tensor must be square");
    const double scale = std::max(1.0, g_.cwiseAbs().maxCoeff());
    if ((g_ - g_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw NumericalError("metric tensor is not symmetric");
    g_ = 0.5 * (g_ + g_.transpose());
    if (g_.size() > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g_, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -1e-9 * scale)
            throw NumericalError("metric tensor is not positive semidefinite");
    }
}

MetricTensor metric_tensor(const ParamFamily& family, std::span<const double> point,
                           const PhysicalConstants& constants, double step) {
    const std::size_t k = family.params();
    if (point.size() != k)
        throw DimensionMismatch(static_cast<long>(k), static_cast<long>(point.size()));
    if (!(step > 0.0))
        throw InvalidArgument("finite-difference step must be positive");
    for (std::size_t i = 0; i < k; ++i) {
        const auto [lo, hi] = family.domain[i];
        if (point[i] - step < lo || point[i] + step > hi)
            throw InvalidArgument("point lies within one step of the domain boundary on parameter " +
                                  std::to_string(i));
    }

    const CVector psi = family.map(point).amplitudes();
    std::vector<double> shifted(point.begin(), point.end());
    std::vector<CVector> tangents;
    tangents.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        shifted[i] = point[i] + step;
        const CVector forward = family.map(shifted).amplitudes();
        shifted[i] = point[i] - step;
        const CVector backward = family.map(shifted).amplitudes();
        shifted[i] = point[i];
        require_same_dim(psi.size(), forward.size());
        CVector d = (forward - backward) / (2.0 * step);
        if (!d.allFinite())
            throw NumericalError("non-finite derivative on parameter " + std::to_string(i));
        tangents.push_back(std::move(d));
    }

    std::vector<Complex> gauge(k);
    for (std::size_t i = 0; i < k; ++i)
        gauge[i] = tangents[i].dot(psi);  // <psi_i|psi>

    const double g2 = constants.gamma() * constants.gamma();
    Eigen::MatrixXd g(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            const Complex term = tangents[i].dot(tangents[j]) - gauge[i] * std::conj(gauge[j]);
            g(i, j) = g(j, i) = g2 * term.real();
        }
    }
    return MetricTensor(std::move(g));
}

double evolution_speed(const HermitianOperator& h, const StateVector& psi,
                       const PhysicalConstants& constants) {
    const double var = std::max(0.0, central_moment(h, psi, 2));
    return constants.gamma() * std::sqrt(var) / constants.hbar();
}

} // namespace qgeom
