#pragma once

// Pure states and density matrices of a few qubits.
//
// Qubit 0 (label A) is the most significant bit of a basis index, so for three
// qubits |ijk> sits at index 4i + 2j + k.

#include "ckw/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckw {

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CMatrix2 = Eigen::Matrix<std::complex<Real>, 2, 2>;
template <typename Real>
using CMatrix4 = Eigen::Matrix<std::complex<Real>, 4, 4>;

inline constexpr int kMaxQubits = 12;

namespace tol {
inline constexpr double kNormRenormalize = 1e-6;
inline constexpr double kNormState = 1e-9;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-9;
inline constexpr double kNegativeEigenvalue = 1e-10;
}  // namespace tol

enum class Normalize { kIfClose, kAlways };

inline std::size_t dim_of(int qubits) { return std::size_t{1} << qubits; }

inline void check_qubit_count(int qubits) {
    if (qubits < 1 || qubits > kMaxQubits)
        throw std::invalid_argument("qubit count " + std::to_string(qubits) + " outside [1, " +
                                    std::to_string(kMaxQubits) + "]");
}

/// Number of qubits n with 2^n == dim, or -1.
inline int qubits_for_dim(std::size_t dim) {
    for (int n = 1; n <= kMaxQubits; ++n)
        if (dim_of(n) == dim) return n;
    return -1;
}

// ---------------------------------------------------------------------------
// Spin-flip constants

template <typename Real = double>
CMatrix2<Real> sigma_y() {
    using C = std::complex<Real>;
    CMatrix2<Real> s;
    s << C(0), C(0, -1), C(0, 1), C(0);
    return s;
}

/// Antisymmetric symbol with e(0,1) = 1, e(1,0) = -1; equals i * sigma_y.
template <typename Real = double>
Eigen::Matrix<Real, 2, 2> epsilon() {
    Eigen::Matrix<Real, 2, 2> e;
    e << 0, 1, -1, 0;
    return e;
}

/// sigma_y (x) sigma_y in the basis {|00>, |01>, |10>, |11>}; real.
template <typename Real = double>
Eigen::Matrix<Real, 4, 4> spin_flip_operator() {
    Eigen::Matrix<Real, 4, 4> y;
    y << 0, 0, 0, -1,
         0, 0, 1, 0,
         0, 1, 0, 0,
         -1, 0, 0, 0;
    return y;
}

template <typename DerivedA, typename DerivedB>
CMatrix<typename DerivedA::RealScalar> kron(const Eigen::MatrixBase<DerivedA>& a,
                                            const Eigen::MatrixBase<DerivedB>& b) {
    using Real = typename DerivedA::RealScalar;
    CMatrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// ---------------------------------------------------------------------------
// PureState

template <typename Real>
class BasicPureState {
public:
    using Scalar = std::complex<Real>;

    /// Validates length and norm. Norms within 1e-6 of one are renormalized;
    /// larger deviations throw unless `policy` is kAlways.
    static BasicPureState from_amplitudes(CVector<Real> amps, int qubits,
                                          Normalize policy = Normalize::kIfClose) {
        check_qubit_count(qubits);
        if (static_cast<std::size_t>(amps.size()) != dim_of(qubits))
            throw std::invalid_argument("expected " + std::to_string(dim_of(qubits)) +
                                        " amplitudes for " + std::to_string(qubits) +
                                        " qubits, got " + std::to_string(amps.size()));
        const Real norm = amps.norm();
        if (!(norm > 0) || !std::isfinite(norm))
            throw std::invalid_argument("amplitude vector has zero or non-finite norm");
        if (policy == Normalize::kIfClose && std::abs(norm - Real(1)) > tol::kNormRenormalize)
            throw std::invalid_argument("amplitude norm " + std::to_string(norm) +
                                        " deviates from 1 by more than 1e-6");
        amps /= norm;
        return BasicPureState(qubits, std::move(amps));
    }

    int qubits() const { return qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const CVector<Real>& amplitudes() const { return amps_; }
    const Scalar& operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

private:
    BasicPureState(int qubits, CVector<Real> amps) : qubits_(qubits), amps_(std::move(amps)) {}

    int qubits_;
    CVector<Real> amps_;
};

using PureState = BasicPureState<double>;

template <typename Real = double>
BasicPureState<Real> pure_from_amplitudes(std::span<const std::complex<Real>> amps, int qubits,
                                          Normalize policy = Normalize::kIfClose) {
    CVector<Real> v(static_cast<Eigen::Index>(amps.size()));
    std::copy(amps.begin(), amps.end(), v.data());
    return BasicPureState<Real>::from_amplitudes(std::move(v), qubits, policy);
}

inline PureState pure_from_amplitudes(std::initializer_list<std::complex<double>> amps, int qubits,
                                      Normalize policy = Normalize::kIfClose) {
    return pure_from_amplitudes<double>(std::span(amps.begin(), amps.size()), qubits, policy);
}

/// Computational basis state |index> on `qubits` qubits.
template <typename Real = double>
BasicPureState<Real> basis_state(int qubits, std::size_t index) {
    check_qubit_count(qubits);
    if (index >= dim_of(qubits)) throw std::out_of_range("basis index out of range");
    CVector<Real> v = CVector<Real>::Zero(static_cast<Eigen::Index>(dim_of(qubits)));
    v[static_cast<Eigen::Index>(index)] = 1;
    return BasicPureState<Real>::from_amplitudes(std::move(v), qubits);
}

// ---------------------------------------------------------------------------
// DensityMatrix

template <typename Real>
class BasicDensityMatrix {
public:
    using Scalar = std::complex<Real>;
    struct trusted_t {};
    static constexpr trusted_t trusted{};

    /// Validates Hermiticity (1e-10), unit trace (1e-9) and positivity.
    /// Eigenvalues in [-1e-10, 0) are clamped to zero.
    static BasicDensityMatrix from_matrix(CMatrix<Real> m, int qubits) {
        check_qubit_count(qubits);
        const auto d = static_cast<Eigen::Index>(dim_of(qubits));
        if (m.rows() != d || m.cols() != d)
            throw std::invalid_argument("density matrix must be " + std::to_string(d) + "x" +
                                        std::to_string(d));
        if (!m.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");
        const Real asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (asym > tol::kHermitian)
            throw std::invalid_argument("density matrix is not Hermitian (max |M - M^H| = " +
                                        std::to_string(asym) + ")");
        m = (Real(0.5) * (m + m.adjoint())).eval();
        const Scalar tr = m.trace();
        if (std::abs(tr - Scalar(1)) > tol::kTrace)
            throw std::invalid_argument("density matrix trace " + std::to_string(tr.real()) +
                                        " is not 1");
        Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(m);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("eigen-decomposition failed during validation");
        const Real lowest = es.eigenvalues().minCoeff();
        if (lowest < -tol::kNegativeEigenvalue)
            throw std::invalid_argument("density matrix is not positive semidefinite (eigenvalue " +
                                        std::to_string(lowest) + ")");
        if (lowest < 0) {
            const auto clamped = es.eigenvalues().cwiseMax(Real(0)).template cast<Scalar>();
            m = es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().adjoint();
        }
        return BasicDensityMatrix(trusted, std::move(m), qubits);
    }

    /// Skips validation; for matrices valid by construction.
    BasicDensityMatrix(trusted_t, CMatrix<Real> m, int qubits)
        : qubits_(qubits), m_(std::move(m)) {}

    int qubits() const { return qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const CMatrix<Real>& matrix() const { return m_; }
    const Scalar& operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

private:
    int qubits_;
    CMatrix<Real> m_;
};

using DensityMatrix = BasicDensityMatrix<double>;

template <typename Real>
BasicDensityMatrix<Real> density_from_pure(const BasicPureState<Real>& psi) {
    const auto& a = psi.amplitudes();
    return {BasicDensityMatrix<Real>::trusted, a * a.adjoint(), psi.qubits()};
}

/// p * rho1 + (1 - p) * rho2.
template <typename Real>
BasicDensityMatrix<Real> mix(const BasicDensityMatrix<Real>& rho1,
                             const BasicDensityMatrix<Real>& rho2, Real p) {
    if (rho1.qubits() != rho2.qubits()) throw std::invalid_argument("mixing states of different size");
    if (p < 0 || p > 1) throw std::invalid_argument("mixing weight outside [0, 1]");
    return {BasicDensityMatrix<Real>::trusted, p * rho1.matrix() + (1 - p) * rho2.matrix(),
            rho1.qubits()};
}

template <typename Real = double>
BasicDensityMatrix<Real> maximally_mixed(int qubits) {
    check_qubit_count(qubits);
    const auto d = static_cast<Eigen::Index>(dim_of(qubits));
    return {BasicDensityMatrix<Real>::trusted, CMatrix<Real>::Identity(d, d) / Real(d), qubits};
}

// ---------------------------------------------------------------------------
// Partial trace

namespace detail {

inline void check_subset(std::span<const int> qubits_kept, int qubits, bool allow_empty = false) {
    if (!allow_empty && qubits_kept.empty()) throw std::invalid_argument("empty qubit subset");
    std::vector<bool> seen(static_cast<std::size_t>(qubits), false);
    for (int q : qubits_kept) {
        if (q < 0 || q >= qubits)
            throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range");
        if (seen[static_cast<std::size_t>(q)])
            throw std::invalid_argument("duplicate qubit index " + std::to_string(q));
        seen[static_cast<std::size_t>(q)] = true;
    }
}

inline std::vector<int> complement(std::span<const int> subset, int qubits) {
    std::vector<int> rest;
    for (int q = 0; q < qubits; ++q)
        if (std::find(subset.begin(), subset.end(), q) == subset.end()) rest.push_back(q);
    return rest;
}

/// Full-register offsets of every basis configuration of `sub`, with sub[0] as
/// the most significant bit of the local index.
inline std::vector<std::size_t> offsets(std::span<const int> sub, int qubits) {
    std::vector<std::size_t> out(dim_of(static_cast<int>(sub.size())), 0);
    const int k = static_cast<int>(sub.size());
    for (std::size_t local = 0; local < out.size(); ++local) {
        std::size_t full = 0;
        for (int b = 0; b < k; ++b)
            if ((local >> (k - 1 - b)) & 1U) full |= std::size_t{1} << (qubits - 1 - sub[static_cast<std::size_t>(b)]);
        out[local] = full;
    }
    return out;
}

}  // namespace detail

/// Reduced density matrix on `keep`, in the order given.
template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicDensityMatrix<Real>& rho, std::span<const int> keep) {
    const int n = rho.qubits();
    detail::check_subset(keep, n);
    const auto rest = detail::complement(keep, n);
    const auto keep_off = detail::offsets(keep, n);
    const auto rest_off = detail::offsets(rest, n);
    const auto dk = static_cast<Eigen::Index>(keep_off.size());
    CMatrix<Real> out = CMatrix<Real>::Zero(dk, dk);
    const auto& m = rho.matrix();
    for (Eigen::Index r = 0; r < dk; ++r)
        for (Eigen::Index c = 0; c < dk; ++c) {
            std::complex<Real> sum{};
            for (std::size_t t : rest_off)
                sum += m(static_cast<Eigen::Index>(keep_off[static_cast<std::size_t>(r)] | t),
                         static_cast<Eigen::Index>(keep_off[static_cast<std::size_t>(c)] | t));
            out(r, c) = sum;
        }
    return {BasicDensityMatrix<Real>::trusted, std::move(out), static_cast<int>(keep.size())};
}

template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicDensityMatrix<Real>& rho,
                                       std::initializer_list<int> keep) {
    return partial_trace(rho, std::span(keep.begin(), keep.size()));
}

/// Amplitudes of `psi` arranged as a (kept x traced) matrix, so that the
/// reduced density matrix on `keep` is M * M^H.
template <typename Real>
CMatrix<Real> bipartite_amplitudes(const BasicPureState<Real>& psi, std::span<const int> keep) {
    const int n = psi.qubits();
    detail::check_subset(keep, n);
    const auto rest = detail::complement(keep, n);
    const auto keep_off = detail::offsets(keep, n);
    const auto rest_off = detail::offsets(rest, n);
    CMatrix<Real> m(static_cast<Eigen::Index>(keep_off.size()), static_cast<Eigen::Index>(rest_off.size()));
    for (std::size_t r = 0; r < keep_off.size(); ++r)
        for (std::size_t c = 0; c < rest_off.size(); ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = psi[keep_off[r] | rest_off[c]];
    return m;
}

/// Reduced density matrix of a pure state, without forming |psi><psi|.
template <typename Real>
BasicDensityMatrix<Real> reduced_density(const BasicPureState<Real>& psi, std::span<const int> keep) {
    const auto m = bipartite_amplitudes(psi, keep);
    return {BasicDensityMatrix<Real>::trusted, m * m.adjoint(), static_cast<int>(keep.size())};
}

template <typename Real>
BasicDensityMatrix<Real> reduced_density(const BasicPureState<Real>& psi, std::initializer_list<int> keep) {
    return reduced_density(psi, std::span(keep.begin(), keep.size()));
}

// ---------------------------------------------------------------------------
// Spin flip

/// (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y) for a two-qubit rho.
template <typename Real>
BasicDensityMatrix<Real> spin_flip(const BasicDensityMatrix<Real>& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("spin flip requires a two-qubit density matrix");
    const CMatrix<Real> y = spin_flip_operator<Real>().template cast<std::complex<Real>>();
    return {BasicDensityMatrix<Real>::trusted, y * rho.matrix().conjugate() * y, 2};
}

// ---------------------------------------------------------------------------
// Sampling and local operations

/// Haar-random pure state: i.i.d. standard complex Gaussians, normalized.
template <typename Real = double>
BasicPureState<Real> haar_random_pure(int qubits, Engine& engine) {
    check_qubit_count(qubits);
    std::normal_distribution<Real> normal;
    CVector<Real> v(static_cast<Eigen::Index>(dim_of(qubits)));
    for (auto& a : v) {
        const Real re = normal(engine);
        const Real im = normal(engine);
        a = {re, im};
    }
    return BasicPureState<Real>::from_amplitudes(std::move(v), qubits, Normalize::kAlways);
}

/// Deterministic in (qubits, seed, index).
template <typename Real = double>
BasicPureState<Real> haar_random_pure(int qubits, std::uint64_t seed, std::uint64_t index = 0) {
    auto engine = make_engine(seed, index);
    return haar_random_pure<Real>(qubits, engine);
}

/// Haar-random k x k unitary (QR of a Ginibre matrix with the phase fix).
template <typename Real = double>
CMatrix<Real> haar_random_unitary(int k, Engine& engine) {
    std::normal_distribution<Real> normal;
    CMatrix<Real> g(k, k);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        const Real re = normal(engine);
        const Real im = normal(engine);
        g.data()[i] = {re, im};
    }
    Eigen::HouseholderQR<CMatrix<Real>> qr(g);
    CMatrix<Real> q = qr.householderQ();
    const CMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (int j = 0; j < k; ++j) {
        const auto d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

/// (U_0 (x) U_1 (x) ... ) |psi>, one 2x2 unitary per qubit.
template <typename Real>
BasicPureState<Real> apply_local(const BasicPureState<Real>& psi, std::span<const CMatrix<Real>> unitaries) {
    const int n = psi.qubits();
    if (static_cast<int>(unitaries.size()) != n)
        throw std::invalid_argument("need one single-qubit unitary per qubit");
    CVector<Real> v = psi.amplitudes();
    for (int q = 0; q < n; ++q) {
        const auto& u = unitaries[static_cast<std::size_t>(q)];
        const std::size_t bit = std::size_t{1} << (n - 1 - q);
        for (std::size_t i = 0; i < psi.dim(); ++i) {
            if (i & bit) continue;
            const auto i0 = static_cast<Eigen::Index>(i);
            const auto i1 = static_cast<Eigen::Index>(i | bit);
            const auto a0 = v[i0];
            const auto a1 = v[i1];
            v[i0] = u(0, 0) * a0 + u(0, 1) * a1;
            v[i1] = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
    return BasicPureState<Real>::from_amplitudes(std::move(v), n);
}

/// Qubit k of the result is qubit perm[k] of `psi`.
template <typename Real>
BasicPureState<Real> permute_qubits(const BasicPureState<Real>& psi, std::span<const int> perm) {
    const int n = psi.qubits();
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation size mismatch");
    detail::check_subset(perm, n);
    CVector<Real> v(psi.amplitudes().size());
    for (std::size_t out = 0; out < psi.dim(); ++out) {
        std::size_t in = 0;
        for (int k = 0; k < n; ++k)
            if ((out >> (n - 1 - k)) & 1U) in |= std::size_t{1} << (n - 1 - perm[static_cast<std::size_t>(k)]);
        v[static_cast<Eigen::Index>(out)] = psi[in];
    }
    return BasicPureState<Real>::from_amplitudes(std::move(v), n);
}

}  // namespace ckw
