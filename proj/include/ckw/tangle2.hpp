#pragma once

// Two-qubit entanglement: the lambda spectrum of rho * rho~, tangle,
// concurrence, pure-state tangle across a cut, and entanglement of formation.

#include "ckw/qstate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <span>
#include <stdexcept>

namespace ckw {

namespace tol {
inline constexpr double kDetImaginary = 1e-10;
inline constexpr double kTangleRange = 1e-12;
inline constexpr double kSchmidtRank = 1e-10;
/// Eigenvalues of rho at or below this are treated as exact zeros when
/// factoring rho = W W^H.
inline constexpr double kFactorCutoff = 1e-14;
}  // namespace tol

/// Square roots of the eigenvalues of rho * rho~, descending.
template <typename Real>
struct BasicLambdaSpectrum {
    std::array<Real, 4> lambdas{};

    Real operator[](std::size_t i) const { return lambdas[i]; }
    Real sum_of_squares() const {
        Real s = 0;
        for (Real l : lambdas) s += l * l;
        return s;
    }
};

using LambdaSpectrum = BasicLambdaSpectrum<double>;

/// Lambda spectrum of rho = W W^H given the 4 x r factor W.
///
/// The nonzero eigenvalues of rho * rho~ coincide with those of
/// sqrt(rho) rho~ sqrt(rho), which is (W^H Y W^*)(W^H Y W^*)^H for the real
/// flip Y = sigma_y (x) sigma_y. The lambdas are therefore the singular values
/// of the r x r matrix W^H Y W^*, which keeps vanishing lambdas at rounding
/// level instead of the square root of rounding level.
template <typename Derived>
BasicLambdaSpectrum<typename Derived::RealScalar> lambda_spectrum_from_factor(
    const Eigen::MatrixBase<Derived>& w) {
    using Real = typename Derived::RealScalar;
    if (w.rows() != 4) throw std::invalid_argument("two-qubit factor must have 4 rows");
    BasicLambdaSpectrum<Real> out;
    if (w.cols() == 0) return out;
    const Eigen::Matrix<Real, 4, 4> y = spin_flip_operator<Real>();
    const CMatrix<Real> a = w.adjoint() * y.template cast<std::complex<Real>>() * w.conjugate();
    Eigen::JacobiSVD<CMatrix<Real>> svd(a);
    const auto& s = svd.singularValues();
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(4, s.size()); ++i)
        out.lambdas[static_cast<std::size_t>(i)] = s[i];
    return out;
}

/// rho = W W^H with W = V sqrt(mu) over eigenvalues mu above the factor cutoff.
template <typename Real>
CMatrix<Real> density_factor(const BasicDensityMatrix<Real>& rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(rho.matrix());
    if (es.info() != Eigen::Success) throw std::runtime_error("eigen-solver failed to converge");
    const auto& mu = es.eigenvalues();
    if (mu.minCoeff() < -tol::kNegativeEigenvalue)
        throw std::invalid_argument("density matrix is not positive semidefinite");
    Eigen::Index kept = 0;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        if (mu[i] > tol::kFactorCutoff) ++kept;
    CMatrix<Real> w(rho.matrix().rows(), kept);
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        if (mu[i] > tol::kFactorCutoff) w.col(c++) = es.eigenvectors().col(i) * std::sqrt(mu[i]);
    return w;
}

template <typename Real>
BasicLambdaSpectrum<Real> lambda_spectrum(const BasicDensityMatrix<Real>& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("lambda spectrum requires a two-qubit density matrix");
    return lambda_spectrum_from_factor(density_factor(rho));
}

template <typename Real>
Real tangle_from_spectrum(const BasicLambdaSpectrum<Real>& s) {
    const Real c = std::max(s[0] - s[1] - s[2] - s[3], Real(0));
    return c * c;
}

template <typename Real>
Real tangle_mixed(const BasicDensityMatrix<Real>& rho) {
    return tangle_from_spectrum(lambda_spectrum(rho));
}

template <typename Real>
Real concurrence(const BasicDensityMatrix<Real>& rho) {
    return std::sqrt(tangle_mixed(rho));
}

/// Tangle of the two-qubit marginal on (q1, q2) of a pure state, factoring
/// the marginal directly from the amplitudes.
template <typename Real>
Real pair_tangle(const BasicPureState<Real>& psi, int q1, int q2) {
    const int keep[2] = {q1, q2};
    return tangle_from_spectrum(lambda_spectrum_from_factor(bipartite_amplitudes(psi, keep)));
}

/// ad - bc of a Hermitian 2x2 matrix; rejects an imaginary residue above 1e-10.
template <typename Derived>
typename Derived::RealScalar det2_hermitian(const Eigen::MatrixBase<Derived>& m) {
    const auto d = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(d.imag()) > tol::kDetImaginary)
        throw std::domain_error("determinant of a Hermitian 2x2 matrix has an imaginary part");
    return d.real();
}

/// 4 det of the reduced state of `partition` (or of its complement), whichever
/// side has rank at most two. Throws std::domain_error when neither does.
template <typename Real>
Real tangle_pure_bipartite(const BasicPureState<Real>& psi, std::span<const int> partition) {
    const int n = psi.qubits();
    detail::check_subset(partition, n);
    if (static_cast<int>(partition.size()) == n)
        throw std::invalid_argument("partition must leave a non-empty complement");
    const auto m = bipartite_amplitudes(psi, partition);
    if (m.rows() == 2) return 4 * det2_hermitian((m * m.adjoint()).eval());
    if (m.cols() == 2) return 4 * det2_hermitian((m.transpose() * m.conjugate()).eval());
    // Both sides larger than a qubit: use the Schmidt coefficients.
    Eigen::JacobiSVD<CMatrix<Real>> svd(m);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] * s[i] > tol::kSchmidtRank) ++rank;
    if (rank > 2)
        throw std::domain_error("tangle undefined: both sides of the cut have rank above two");
    return s.size() > 1 ? 4 * s[0] * s[0] * s[1] * s[1] : Real(0);
}

template <typename Real>
Real tangle_pure_bipartite(const BasicPureState<Real>& psi, std::initializer_list<int> partition) {
    return tangle_pure_bipartite(psi, std::span(partition.begin(), partition.size()));
}

/// -x log2 x - (1 - x) log2 (1 - x), zero at the endpoints.
template <typename Real>
Real binary_entropy(Real x) {
    auto term = [](Real p) { return p > 0 ? -p * std::log2(p) : Real(0); };
    return term(x) + term(1 - x);
}

template <typename Real>
Real eof_from_tangle(Real tau) {
    if (!(tau >= -tol::kTangleRange && tau <= 1 + tol::kTangleRange))
        throw std::domain_error("tangle outside [0, 1]");
    tau = std::clamp(tau, Real(0), Real(1));
    return binary_entropy(Real(0.5) + Real(0.5) * std::sqrt(1 - tau));
}

}  // namespace ckw
