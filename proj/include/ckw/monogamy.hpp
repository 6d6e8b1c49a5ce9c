#pragma once

// Checks of the tangle monogamy relations on three-qubit pure states and on
// the n-qubit W family, plus a seeded batch driver over Haar samples.

#include "ckw/qstate.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace ckw {

namespace tol {
inline constexpr double kSlack = 1e-10;
inline constexpr double kResidualIdentity = 1e-9;
inline constexpr double kPermutationSpread = 1e-12;
inline constexpr double kFormulaAgreement = 1e-9;
inline constexpr double kEqualityGap = 1e-9;
}  // namespace tol

inline constexpr int kMaxEqualityQubits = 10;

/// Tangles of a focus qubit f with the others x, y (x, y in cyclic order).
struct MonogamyReport {
    int focus = 0;
    double tau_ab = 0;    ///< tau_{fx}
    double tau_ac = 0;    ///< tau_{fy}
    double tau_a_bc = 0;  ///< tau_{f(xy)} = 4 det rho_f
    double slack = 0;     ///< tau_a_bc - tau_ab - tau_ac
    double tau_abc = 0;   ///< three-tangle
};

MonogamyReport ckw_check(const PureState& psi, int focus = 0);

struct TraceIdentities {
    double trace_ab = 0;         ///< Tr(rho_AB rho~_AB), by direct product
    double det_combination = 0;  ///< 2 (det rho_A + det rho_B - det rho_C)
    double four_det_a = 0;       ///< 4 det rho_A
    double trace_ac = 0;         ///< Tr(rho_AC rho~_AC)
};

TraceIdentities trace_identity_check(const PureState& psi);

/// sum_i alpha_i |0..1..0> with the 1 on qubit i.
PureState wstate_generalized(std::span<const std::complex<double>> alphas);

struct EqualityReport {
    double lhs = 0;  ///< sum_{j>=2} tau_{1j}
    double rhs = 0;  ///< tau_{1(2..n)}
    double gap = 0;  ///< rhs - lhs
};

EqualityReport nqubit_equality_check(std::span<const std::complex<double>> alphas);

enum class VerifyMode { kPure3Ckw, kPermInvariance, kFormulaEquiv, kNQubit };

std::string_view to_string(VerifyMode mode);
std::optional<VerifyMode> parse_verify_mode(std::string_view name);

struct BatchOptions {
    int qubits = 4;                    ///< register size for kNQubit
    unsigned threads = 0;              ///< 0: hardware concurrency
    std::optional<double> tolerance;   ///< overrides the mode's primary tolerance
};

inline constexpr std::size_t kHistogramBins = 100;

/// Per-mode meaning of the sampled quantity ("slack") and of the checked
/// deviation ("gap"):
///   pure3_ckw       slack = tau_A(BC) - tau_AB - tau_AC, gap = |slack - tau_ABC|
///   perm_invariance slack = tau_ABC, gap = spread over the six qubit orders
///   formula_equiv   slack = tau_ABC, gap = max pairwise deviation of the three forms
///   nqubit          slack = tau_1(2..n) - sum tau_1j, gap = |slack|
struct BatchStats {
    VerifyMode mode = VerifyMode::kPure3Ckw;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    int qubits = 3;
    double min_slack = 0;
    double max_gap = 0;
    double mean_slack = 0;
    std::size_t violations = 0;
    std::array<std::size_t, kHistogramBins> histogram{};  ///< slack on [0, 1]
    std::optional<std::size_t> first_violation_index;
    std::optional<PureState> first_violation;
};

/// Deterministic in (n_samples, seed, mode, qubits) for any thread count.
BatchStats batch_verify(std::size_t n_samples, std::uint64_t seed, VerifyMode mode,
                        const BatchOptions& options = {});

/// Random W-family amplitudes for sample `index`.
std::vector<std::complex<double>> random_w_amplitudes(int qubits, std::uint64_t seed, std::uint64_t index);

}  // namespace ckw
