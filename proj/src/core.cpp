#include "qgeom/core.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qgeom {

namespace {

constexpr double kNormKeepTolerance = 1e-14;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kImaginaryResidue = 1e-10;

// (H - mean) v
CVector shifted_apply(const HermitianOperator& h, double mean, const CVector& v) {
    CVector out = h.apply(v);
    out -= mean * v;
    return out;
}

} // namespace

PhysicalConstants::PhysicalConstants(double hbar, double gamma) : hbar_(hbar), gamma_(gamma) {
    if (!(std::isfinite(hbar) && hbar > 0.0))
        throw InvalidArgument("hbar must be positive and finite");
    if (!(std::isfinite(gamma) && gamma > 0.0))
        throw InvalidArgument("gamma must be positive and finite");
}

StateVector::StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 2)
        throw InvalidArgument("state dimension must be at least 2");
    if (!amplitudes_.allFinite())
        throw InvalidArgument("state amplitudes must be finite");
    const double n = amplitudes_.norm();
    if (n == 0.0)
        throw InvalidArgument("cannot normalize the zero vector");
    if (std::abs(n - 1.0) > kNormKeepTolerance)
        amplitudes_ /= n;
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index k) {
    if (k < 0 || k >= dim)
        throw InvalidArgument("basis index out of range");
    CVector v = CVector::Zero(dim);
    v[k] = 1.0;
    return StateVector(std::move(v));
}

HermitianOperator::HermitianOperator(CMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
        throw InvalidArgument("Hamiltonian must be square");
    if (entries_.rows() < 2)
        throw InvalidArgument("Hamiltonian dimension must be at least 2");
    if (!entries_.allFinite())
        throw InvalidArgument("Hamiltonian entries must be finite");
    const CMatrix adjoint = entries_.adjoint();
    const double asymmetry = (entries_ - adjoint).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, entries_.norm());
    if (asymmetry > kHermitianTolerance * scale)
        throw NotHermitian("matrix is not Hermitian (max |A - A^dagger| = " +
                           std::to_string(asymmetry) + ")");
    entries_ = (entries_ + adjoint) * 0.5;
}

double HermitianOperator::spread_norm() const {
    const Complex shift = entries_.trace() / static_cast<double>(dim());
    CMatrix traceless = entries_;
    traceless.diagonal().array() -= shift;
    return traceless.norm();
}

StateVector SpectralDecomposition::eigenvector(Eigen::Index k) const {
    if (k < 0 || k >= dim())
        throw InvalidArgument("eigenvector index out of range");
    return StateVector(eigenvectors.col(k));
}

void require_same_dim(Eigen::Index expected, Eigen::Index actual) {
    if (expected != actual)
        throw DimensionMismatch(expected, actual);
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    require_same_dim(a.dim(), b.dim());
    return a.amplitudes().dot(b.amplitudes());
}

double expectation(const HermitianOperator& h, const StateVector& psi) {
    require_same_dim(h.dim(), psi.dim());
    return psi.amplitudes().dot(h.apply(psi.amplitudes())).real();
}

double central_moment(const HermitianOperator& h, const StateVector& psi, int k) {
    if (k < 1 || k > 4)
        throw InvalidArgument("central moment order must be in {1, 2, 3, 4}");
    const double mean = expectation(h, psi);

    // Split (dH)^k as (dH)^lo (dH)^hi with hi - lo in {0, 1}: even orders
    // become a squared norm and stay nonnegative.
    const int lo = k / 2;
    const int hi = k - lo;
    CVector left = psi.amplitudes();
    for (int i = 0; i < lo; ++i)
        left = shifted_apply(h, mean, left);
    CVector right = left;
    for (int i = lo; i < hi; ++i)
        right = shifted_apply(h, mean, right);

    const Complex value = left.dot(right);
    const double scale = std::max(1.0, std::pow(h.norm(), k));
    if (std::abs(value.imag()) > kImaginaryResidue * scale)
        throw NumericalError("central moment has imaginary residue " +
                             std::to_string(value.imag()));
    return value.real();
}

MomentSet moments(const HermitianOperator& h, const StateVector& psi) {
    MomentSet m;
    m.mean = expectation(h, psi);
    m.var = central_moment(h, psi, 2);
    m.central3 = central_moment(h, psi, 3);
    m.central4 = central_moment(h, psi, 4);
    return m;
}

double variance_tolerance(const HermitianOperator& h) {
    const double s = h.spread_norm();
    return 1e-12 * s * s;
}

SpectralDecomposition spectral(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success)
        throw NumericalError("Hermitian eigensolver did not converge");
    return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

StateVector evolve(const SpectralDecomposition& spec, const StateVector& psi0, double t,
                   const PhysicalConstants& constants) {
    require_same_dim(spec.dim(), psi0.dim());
    if (t == 0.0)
        return psi0;
    CVector coeffs = spec.eigenvectors.adjoint() * psi0.amplitudes();
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
        coeffs[k] *= std::polar(1.0, -spec.eigenvalues[k] * t / constants.hbar());
    return StateVector(spec.eigenvectors * coeffs);
}

StateVector evolve(const HermitianOperator& h, const StateVector& psi0, double t,
                   const PhysicalConstants& constants) {
    require_same_dim(h.dim(), psi0.dim());
    if (t == 0.0)
        return psi0;
    return evolve(spectral(h), psi0, t, constants);
}

} // namespace qgeom
