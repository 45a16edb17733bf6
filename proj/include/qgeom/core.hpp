#pragma once

#include <complex>
#include <Eigen/Dense>

#include "qgeom/errors.hpp"

namespace qgeom {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Reduced Planck constant and the distance scale. Defaults: hbar = 1,
/// gamma = 2 (the Fubini-Study metric then reduces to the unit Bloch sphere
/// for two-level systems).
class PhysicalConstants {
public:
    PhysicalConstants() = default;
    PhysicalConstants(double hbar, double gamma);

    double hbar() const { return hbar_; }
    double gamma() const { return gamma_; }

private:
    double hbar_ = 1.0;
    double gamma_ = 2.0;
};

/// Normalized pure-state vector of dimension >= 2. Construction normalizes
/// its input; inputs already within 1e-14 of unit norm are kept bit-exact.
class StateVector {
public:
    explicit StateVector(CVector amplitudes);

    static StateVector basis(Eigen::Index dim, Eigen::Index k);

    const CVector& amplitudes() const { return amplitudes_; }
    Eigen::Index dim() const { return amplitudes_.size(); }
    Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }

private:
    CVector amplitudes_;
};

/// Dense Hermitian matrix. Inputs whose anti-Hermitian part is below
/// 1e-12 * max(1, |A|) are symmetrized to (A + A^dagger)/2; anything larger is
/// rejected with NotHermitian.
class HermitianOperator {
public:
    explicit HermitianOperator(CMatrix entries);

    const CMatrix& matrix() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }

    /// Frobenius norm.
    double norm() const { return entries_.norm(); }

    /// Frobenius norm of the traceless part; invariant under H -> H + eps*Id.
    double spread_norm() const;

    CVector apply(const CVector& v) const { return entries_ * v; }

private:
    CMatrix entries_;
};

struct SpectralDecomposition {
    RVector eigenvalues;   // ascending
    CMatrix eigenvectors;  // column k pairs with eigenvalues[k]

    Eigen::Index dim() const { return eigenvalues.size(); }
    StateVector eigenvector(Eigen::Index k) const;
};

struct MomentSet {
    double mean = 0.0;
    double var = 0.0;
    double central3 = 0.0;
    double central4 = 0.0;
};

/// <a|b>, antilinear in the first argument.
Complex inner_product(const StateVector& a, const StateVector& b);

/// <H> as a real number.
double expectation(const HermitianOperator& h, const StateVector& psi);

/// <psi|(H - <H>)^k|psi> for k in {1, 2, 3, 4}.
double central_moment(const HermitianOperator& h, const StateVector& psi, int k);

MomentSet moments(const HermitianOperator& h, const StateVector& psi);

/// Stationarity threshold on the energy variance: 1e-12 * spread_norm(H)^2.
double variance_tolerance(const HermitianOperator& h);

SpectralDecomposition spectral(const HermitianOperator& h);

/// exp(-i H t / hbar)|psi0> through the spectral decomposition.
StateVector evolve(const HermitianOperator& h, const StateVector& psi0, double t,
                   const PhysicalConstants& constants = {});
StateVector evolve(const SpectralDecomposition& spec, const StateVector& psi0, double t,
                   const PhysicalConstants& constants = {});

void require_same_dim(Eigen::Index expected, Eigen::Index actual);

} // namespace qgeom
