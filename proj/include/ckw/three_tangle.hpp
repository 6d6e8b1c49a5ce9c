#pragma once

// Three-qubit residual tangle: the R matrix on the range of rho_AB rho~_AB,
// the cube invariants d1, d2, d3, and the epsilon-tensor form.

#include "ckw/qstate.hpp"
#include "ckw/tangle2.hpp"

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace ckw {

template <typename Real>
struct BasicCubeInvariants {
    std::complex<Real> d1;  ///< body diagonals, each corner used twice
    std::complex<Real> d2;  ///< diagonal planes
    std::complex<Real> d3;  ///< tetrahedra

    std::complex<Real> combination() const { return d1 - Real(2) * d2 + Real(4) * d3; }
};

using CubeInvariants = BasicCubeInvariants<double>;
template <typename Real>
using BasicRMatrix = CMatrix2<Real>;
using RMatrix = BasicRMatrix<double>;

namespace detail {

template <typename Real>
void require_three_qubits(const BasicPureState<Real>& psi) {
    if (psi.qubits() != 3)
        throw std::invalid_argument("expected a three-qubit state, got " +
                                    std::to_string(psi.qubits()) + " qubits");
}

/// a_{ijk} accessor.
template <typename Real>
struct Cube {
    const BasicPureState<Real>& psi;
    const std::complex<Real>& operator()(int i, int j, int k) const {
        return psi[static_cast<std::size_t>(4 * i + 2 * j + k)];
    }
};

}  // namespace detail

/// R_ij = sum a_{klj} a*_{mni} s_{mp} s_{nq} a*_{pqr} a_{str} s_{sk} s_{tl}
/// with s = sigma_y, expressed in the (generally non-orthogonal) basis
/// |v_0> = sum a_{ij0}|ij0>, |v_1> = sum a_{ij1}|ij1>. Only det R is basis
/// independent.
template <typename Real>
BasicRMatrix<Real> r_matrix(const BasicPureState<Real>& psi) {
    detail::require_three_qubits(psi);
    const detail::Cube<Real> a{psi};
    const CMatrix2<Real> s = sigma_y<Real>();
    BasicRMatrix<Real> r = BasicRMatrix<Real>::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            std::complex<Real> sum{};
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    for (int m = 0; m < 2; ++m)
                        for (int n = 0; n < 2; ++n)
                            for (int p = 0; p < 2; ++p)
                                for (int q = 0; q < 2; ++q)
                                    for (int rr = 0; rr < 2; ++rr)
                                        for (int ss = 0; ss < 2; ++ss)
                                            for (int t = 0; t < 2; ++t)
                                                sum += a(k, l, j) * std::conj(a(m, n, i)) *
                                                       s(m, p) * s(n, q) *
                                                       std::conj(a(p, q, rr)) * a(ss, t, rr) *
                                                       s(ss, k) * s(t, l);
            r(i, j) = sum;
        }
    return r;
}

template <typename Real>
BasicCubeInvariants<Real> cube_invariants(const BasicPureState<Real>& psi) {
    detail::require_three_qubits(psi);
    const detail::Cube<Real> a{psi};
    auto sq = [](const std::complex<Real>& z) { return z * z; };
    BasicCubeInvariants<Real> out;
    out.d1 = sq(a(0, 0, 0)) * sq(a(1, 1, 1)) + sq(a(0, 0, 1)) * sq(a(1, 1, 0)) +
             sq(a(0, 1, 0)) * sq(a(1, 0, 1)) + sq(a(1, 0, 0)) * sq(a(0, 1, 1));
    out.d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) +
             a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
             a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) +
             a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
             a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) +
             a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    out.d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) +
             a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    return out;
}

/// tau_ABC = 4 |d1 - 2 d2 + 4 d3|.
template <typename Real>
Real three_tangle(const BasicPureState<Real>& psi) {
    return 4 * std::abs(cube_invariants(psi).combination());
}

/// 2 |sum a_{ijk} a_{i'j'm} a_{npk'} a_{n'p'm'} e_{ii'} e_{jj'} e_{kk'} e_{mm'} e_{nn'} e_{pp'}|
/// by plain enumeration of all twelve indices.
template <typename Real>
Real three_tangle_epsilon(const BasicPureState<Real>& psi) {
    detail::require_three_qubits(psi);
    const detail::Cube<Real> a{psi};
    const auto e = epsilon<Real>();
    std::complex<Real> sum{};
    for (unsigned bits = 0; bits < 4096; ++bits) {
        std::array<int, 12> x{};
        for (int b = 0; b < 12; ++b) x[static_cast<std::size_t>(b)] = static_cast<int>((bits >> b) & 1U);
        const auto [i, ip, j, jp, k, kp, m, mp, n, np, p, pp] = x;
        const Real sign = e(i, ip) * e(j, jp) * e(k, kp) * e(m, mp) * e(n, np) * e(p, pp);
        if (sign == 0) continue;
        sum += sign * a(i, j, k) * a(ip, jp, m) * a(n, p, kp) * a(np, pp, mp);
    }
    return 2 * std::abs(sum);
}

/// tau_{f(xy)} - tau_{fx} - tau_{fy} for focus qubit f, from the pure-state
/// and two-qubit tangles of the marginals.
template <typename Real>
Real residual_tangle_spectral(const BasicPureState<Real>& psi, int focus) {
    detail::require_three_qubits(psi);
    if (focus < 0 || focus > 2) throw std::invalid_argument("focus must be qubit 0, 1 or 2");
    const int x = (focus + 1) % 3;
    const int y = (focus + 2) % 3;
    const int f[1] = {focus};
    const auto rho = density_from_pure(psi);
    const int fx[2] = {focus, x};
    const int fy[2] = {focus, y};
    return tangle_pure_bipartite(psi, std::span<const int>(f)) -
           tangle_mixed(partial_trace(rho, std::span<const int>(fx))) -
           tangle_mixed(partial_trace(rho, std::span<const int>(fy)));
}

}  // namespace ckw
