#include "ckw/monogamy.hpp"

#include "ckw/parallel.hpp"
#include "ckw/tangle2.hpp"
#include "ckw/three_tangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ckw {

MonogamyReport ckw_check(const PureState& psi, int focus) {
    detail::require_three_qubits(psi);
    if (focus < 0 || focus > 2) throw std::invalid_argument("focus must be qubit 0, 1 or 2");
    const int x = (focus + 1) % 3;
    const int y = (focus + 2) % 3;
    const auto rho = density_from_pure(psi);
    const auto rho_f = partial_trace(rho, {focus});

    MonogamyReport r;
    r.focus = focus;
    r.tau_ab = tangle_mixed(partial_trace(rho, {focus, x}));
    r.tau_ac = tangle_mixed(partial_trace(rho, {focus, y}));
    r.tau_a_bc = 4 * det2_hermitian(rho_f.matrix());
    r.slack = r.tau_a_bc - r.tau_ab - r.tau_ac;
    r.tau_abc = three_tangle(psi);
    return r;
}

TraceIdentities trace_identity_check(const PureState& psi) {
    detail::require_three_qubits(psi);
    const auto rho = density_from_pure(psi);
    auto flip_trace = [&](std::initializer_list<int> pair) {
        const auto r = partial_trace(rho, pair);
        return (r.matrix() * spin_flip(r).matrix()).trace().real();
    };
    auto det_of = [&](int q) { return det2_hermitian(partial_trace(rho, {q}).matrix()); };

    const double det_a = det_of(0);
    const double det_b = det_of(1);
    const double det_c = det_of(2);
    TraceIdentities t;
    t.trace_ab = flip_trace({0, 1});
    t.trace_ac = flip_trace({0, 2});
    t.det_combination = 2 * (det_a + det_b - det_c);
    t.four_det_a = 4 * det_a;
    return t;
}

namespace {

void check_alphas(std::span<const std::complex<double>> alphas, int max_qubits) {
    const int n = static_cast<int>(alphas.size());
    if (n < 2) throw std::invalid_argument("W-family state needs at least two qubits");
    if (n > max_qubits)
        throw std::invalid_argument("W-family state with " + std::to_string(n) +
                                    " qubits exceeds the supported " + std::to_string(max_qubits));
    double norm2 = 0;
    for (const auto& a : alphas) norm2 += std::norm(a);
    if (std::abs(norm2 - 1) > tol::kNormRenormalize)
        throw std::invalid_argument("W-family amplitudes must have unit norm");
}

}  // namespace

PureState wstate_generalized(std::span<const std::complex<double>> alphas) {
    check_alphas(alphas, kMaxQubits);
    const int n = static_cast<int>(alphas.size());
    CVector<double> v = CVector<double>::Zero(static_cast<Eigen::Index>(dim_of(n)));
    for (int i = 0; i < n; ++i) v[Eigen::Index{1} << (n - 1 - i)] = alphas[static_cast<std::size_t>(i)];
    return PureState::from_amplitudes(std::move(v), n);
}

EqualityReport nqubit_equality_check(std::span<const std::complex<double>> alphas) {
    check_alphas(alphas, kMaxEqualityQubits);
    const auto psi = wstate_generalized(alphas);
    EqualityReport r;
    for (int j = 1; j < psi.qubits(); ++j) r.lhs += tangle_mixed(reduced_density(psi, {0, j}));
    r.rhs = tangle_pure_bipartite(psi, {0});
    r.gap = r.rhs - r.lhs;
    return r;
}

std::vector<std::complex<double>> random_w_amplitudes(int qubits, std::uint64_t seed, std::uint64_t index) {
    if (qubits < 2 || qubits > kMaxEqualityQubits)
        throw std::invalid_argument("W-family register size must be in [2, 10]");
    auto engine = make_engine(seed, index);
    std::normal_distribution<double> normal;
    std::vector<std::complex<double>> a(static_cast<std::size_t>(qubits));
    double norm2 = 0;
    for (auto& z : a) {
        const double re = normal(engine);
        const double im = normal(engine);
        z = {re, im};
        norm2 += std::norm(z);
    }
    for (auto& z : a) z /= std::sqrt(norm2);
    return a;
}

std::string_view to_string(VerifyMode mode) {
    switch (mode) {
        case VerifyMode::kPure3Ckw: return "pure3_ckw";
        case VerifyMode::kPermInvariance: return "perm_invariance";
        case VerifyMode::kFormulaEquiv: return "formula_equiv";
        case VerifyMode::kNQubit: return "nqubit";
    }
    return "unknown";
}

std::optional<VerifyMode> parse_verify_mode(std::string_view name) {
    for (auto m : {VerifyMode::kPure3Ckw, VerifyMode::kPermInvariance, VerifyMode::kFormulaEquiv,
                   VerifyMode::kNQubit})
        if (to_string(m) == name) return m;
    return std::nullopt;
}

namespace {

struct Sample {
    double slack = 0;
    double gap = 0;
    bool violation = false;
};

constexpr int kPermutations[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

Sample evaluate(VerifyMode mode, const PureState& psi, double tolerance) {
    Sample s;
    switch (mode) {
        case VerifyMode::kPure3Ckw: {
            const auto r = ckw_check(psi, 0);
            s.slack = r.slack;
            s.gap = std::abs(r.slack - r.tau_abc);
            s.violation = r.slack < -tolerance || s.gap > tol::kResidualIdentity;
            break;
        }
        case VerifyMode::kPermInvariance: {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (const auto& p : kPermutations) {
                const double t = three_tangle(permute_qubits(psi, std::span<const int>(p)));
                lo = std::min(lo, t);
                hi = std::max(hi, t);
            }
            s.slack = three_tangle(psi);
            s.gap = hi - lo;
            s.violation = s.gap > tolerance;
            break;
        }
        case VerifyMode::kFormulaEquiv: {
            const double a = three_tangle(psi);
            const double b = three_tangle_epsilon(psi);
            const double c = residual_tangle_spectral(psi, 0);
            s.slack = a;
            s.gap = std::max({std::abs(a - b), std::abs(a - c), std::abs(b - c)});
            s.violation = s.gap > tolerance;
            break;
        }
        case VerifyMode::kNQubit: {
            std::vector<std::complex<double>> alphas(static_cast<std::size_t>(psi.qubits()));
            for (int i = 0; i < psi.qubits(); ++i)
                alphas[static_cast<std::size_t>(i)] = psi[std::size_t{1} << (psi.qubits() - 1 - i)];
            const auto r = nqubit_equality_check(alphas);
            s.slack = r.gap;
            s.gap = std::abs(r.gap);
            s.violation = s.gap > tolerance;
            break;
        }
    }
    return s;
}

double default_tolerance(VerifyMode mode) {
    switch (mode) {
        case VerifyMode::kPure3Ckw: return tol::kSlack;
        case VerifyMode::kPermInvariance: return tol::kPermutationSpread;
        case VerifyMode::kFormulaEquiv: return tol::kFormulaAgreement;
        case VerifyMode::kNQubit: return tol::kEqualityGap;
    }
    return 0;
}

PureState draw(VerifyMode mode, int qubits, std::uint64_t seed, std::uint64_t index) {
    if (mode == VerifyMode::kNQubit) return wstate_generalized(random_w_amplitudes(qubits, seed, index));
    return haar_random_pure(3, seed, index);
}

}  // namespace

BatchStats batch_verify(std::size_t n_samples, std::uint64_t seed, VerifyMode mode,
                        const BatchOptions& options) {
    if (n_samples == 0) throw std::invalid_argument("n_samples must be at least 1");
    const int qubits = mode == VerifyMode::kNQubit ? options.qubits : 3;
    if (mode == VerifyMode::kNQubit && (qubits < 2 || qubits > kMaxEqualityQubits))
        throw std::invalid_argument("nqubit mode needs 2 <= qubits <= 10");
    const double tolerance = options.tolerance.value_or(default_tolerance(mode));

    std::vector<Sample> samples(n_samples);
    parallel_for(n_samples, options.threads, [&](std::size_t i) {
        samples[i] = evaluate(mode, draw(mode, qubits, seed, i), tolerance);
    });

    BatchStats stats;
    stats.mode = mode;
    stats.n_samples = n_samples;
    stats.seed = seed;
    stats.qubits = qubits;
    stats.min_slack = std::numeric_limits<double>::infinity();
    double sum = 0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const auto& s = samples[i];
        stats.min_slack = std::min(stats.min_slack, s.slack);
        stats.max_gap = std::max(stats.max_gap, s.gap);
        sum += s.slack;
        const auto bin = static_cast<std::size_t>(
            std::clamp(s.slack * static_cast<double>(kHistogramBins), 0.0, static_cast<double>(kHistogramBins - 1)));
        ++stats.histogram[bin];
        if (s.violation) {
            if (!stats.first_violation_index) {
                stats.first_violation_index = i;
                stats.first_violation = draw(mode, qubits, seed, i);
            }
            ++stats.violations;
        }
    }
    stats.mean_slack = sum / static_cast<double>(n_samples);
    return stats;
}

}  // namespace ckw
