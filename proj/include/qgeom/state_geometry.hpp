#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qgeom/core.hpp"

namespace qgeom {

/// 1 - |<a|b>|^2, evaluated as the squared norm of the part of b orthogonal
/// to a. Keeps full relative accuracy for nearly coincident rays.
double infidelity(const StateVector& a, const StateVector& b);

/// gamma * sqrt(1 - |<a|b>|^2)
double fubini_study_distance(const StateVector& a, const StateVector& b,
                             const PhysicalConstants& constants = {});

/// gamma * arccos|<a|b>|
double wootters_distance(const StateVector& a, const StateVector& b,
                         const PhysicalConstants& constants = {});

struct Interval {
    double lo;
    double hi;
};

/// A k-parameter family of states. The map must be safe to call from
/// several threads at once.
struct ParamFamily {
    std::function<StateVector(std::span<const double>)> map;
    std::vector<Interval> domain;

    std::size_t params() const { return domain.size(); }
};

/// Real symmetric k x k metric on a parameter family, scaled by gamma^2.
class MetricTensor {
public:
    explicit MetricTensor(Eigen::MatrixXd g);

    const Eigen::MatrixXd& matrix() const { return g_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return g_(i, j); }
    Eigen::Index size() const { return g_.rows(); }

private:
    Eigen::MatrixXd g_;
};

inline constexpr double kDefaultMetricStep = 1e-5;

/// g_ij = gamma^2 Re(<psi_i|psi_j> - <psi_i|psi><psi|psi_j>) with the
/// tangent vectors psi_i from central differences of width `step`.
MetricTensor metric_tensor(const ParamFamily& family, std::span<const double> point,
                           const PhysicalConstants& constants = {},
                           double step = kDefaultMetricStep);

/// v = gamma * sqrt(<(dH)^2>) / hbar
double evolution_speed(const HermitianOperator& h, const StateVector& psi,
                       const PhysicalConstants& constants = {});

} // namespace qgeom
