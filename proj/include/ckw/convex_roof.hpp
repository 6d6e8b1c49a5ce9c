#pragma once

// Upper bounds on the convex roof of tau_A(BC) for mixed three-qubit states.
//
// Every pure-state decomposition of rho with m elements is generated by an
// m x r isometry V acting on the scaled eigenvectors sqrt(mu_j)|e_j> of rho,
// so the roof is a minimization over the complex Stiefel manifold.

#include "ckw/qstate.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ckw {

namespace tol {
inline constexpr double kRank = 1e-10;
inline constexpr double kIsometry = 1e-8;
inline constexpr double kDropWeight = 1e-14;
inline constexpr double kReconstruction = 1e-8;
inline constexpr double kMixedMargin = 1e-8;
}  // namespace tol

struct Component {
    double p = 0;
    PureState psi;
};

struct Decomposition {
    std::vector<Component> components;
};

/// sum_i p_i |psi_i><psi_i|.
CMatrix<double> reconstruct(const Decomposition& d);

/// Eigenvalues and eigenvectors of rho above the rank cutoff, descending.
struct Eigenbasis {
    Eigen::VectorXd values;
    CMatrix<double> vectors;  ///< columns are eigenvectors
    Eigen::Index rank() const { return values.size(); }
};

Eigenbasis support_eigenbasis(const DensityMatrix& rho);

/// Components |phi_i> = sum_j V_ij sqrt(mu_j) |e_j>, normalized, with
/// p_i = <phi_i|phi_i>; weights below 1e-14 are dropped.
Decomposition decomposition_from_mixing(const DensityMatrix& rho, const CMatrix<double>& v);

/// sum_i p_i tau_A(BC)(psi_i).
double average_tangle_a_bc(const Decomposition& d);

struct RoofConfig {
    int components = 0;           ///< decomposition size m; 0 selects rank^2
    int restarts = 16;
    std::size_t max_evals = 20000;  ///< per restart
    double initial_step = 0.3;
    double step_decay = 0.95;
    double min_step = 1e-6;
    int plateau = 10;             ///< consecutive rejections before the step decays
    std::uint64_t seed = 0;
    unsigned threads = 0;         ///< 0: hardware concurrency
};

/// best is an upper bound on the roof, never a certified minimum.
struct RoofResult {
    double upper_bound = 0;
    Decomposition best;
    int restarts_used = 0;
    std::size_t evaluations = 0;
    int rank = 0;
    int components_cap = 0;  ///< m actually used
};

/// Multi-restart stochastic descent over m x r isometries. Restart 0 starts at
/// the eigendecomposition; the others at Haar-random isometries. Deterministic
/// in (rho, cfg) regardless of thread count, and nonincreasing in max_evals.
RoofResult minimize_tau_a_bc(const DensityMatrix& rho, const RoofConfig& cfg = {});

struct MixedMonogamyReport {
    double tau_ab = 0;
    double tau_ac = 0;
    double roof_upper_bound = 0;
    double margin = 0;   ///< roof_upper_bound - tau_ab - tau_ac
    bool failed = false; ///< margin < -1e-8
    RoofResult roof;
};

MixedMonogamyReport mixed_monogamy_check(const DensityMatrix& rho, const RoofConfig& cfg = {});

}  // namespace ckw
