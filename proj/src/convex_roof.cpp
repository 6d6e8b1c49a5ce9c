#include "ckw/convex_roof.hpp"

#include "ckw/parallel.hpp"
#include "ckw/tangle2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace ckw {

namespace {

void require_three_qubits(const DensityMatrix& rho) {
    if (rho.qubits() != 3) throw std::invalid_argument("convex roof requires a three-qubit density matrix");
}

/// p * tau_A(BC) of the normalized state, from the unnormalized |phi>:
/// 4 det rho_A(phi) / <phi|phi>. Zero for weights below the drop threshold.
double weighted_tangle(const Eigen::Ref<const CVector<double>>& phi) {
    const auto x = phi.head<4>();
    const auto y = phi.tail<4>();
    const double xx = x.squaredNorm();
    const double yy = y.squaredNorm();
    const double p = xx + yy;
    if (p < tol::kDropWeight) return 0;
    const double det = xx * yy - std::norm(x.dot(y));
    return 4 * std::max(det, 0.0) / p;
}

/// Columns are the unnormalized components for isometry v.
CMatrix<double> components_of(const CMatrix<double>& scaled_basis, const CMatrix<double>& v) {
    return scaled_basis * v.transpose();
}

double objective(const CMatrix<double>& scaled_basis, const CMatrix<double>& v) {
    const CMatrix<double> phi = components_of(scaled_basis, v);
    double sum = 0;
    for (Eigen::Index i = 0; i < phi.cols(); ++i) sum += weighted_tangle(phi.col(i));
    return sum;
}

CMatrix<double> polar_retract(const CMatrix<double>& x) {
    Eigen::JacobiSVD<CMatrix<double>> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix<double> random_gaussian(Eigen::Index rows, Eigen::Index cols, Engine& engine) {
    std::normal_distribution<double> normal;
    CMatrix<double> z(rows, cols);
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        const double re = normal(engine);
        const double im = normal(engine);
        z.data()[i] = {re, im};
    }
    return z;
}

/// Projection of z onto the tangent space of the Stiefel manifold at v.
CMatrix<double> tangent(const CMatrix<double>& v, const CMatrix<double>& z) {
    const CMatrix<double> vz = v.adjoint() * z;
    return z - v * (0.5 * (vz + vz.adjoint()));
}

struct RestartOutcome {
    CMatrix<double> v;
    double value = std::numeric_limits<double>::infinity();
    std::size_t evaluations = 0;
};

RestartOutcome descend(const CMatrix<double>& scaled_basis, int m, int r, int restart, const RoofConfig& cfg) {
    auto engine = make_engine(cfg.seed, static_cast<std::uint64_t>(restart));
    RestartOutcome out;
    if (restart == 0) {
        out.v = CMatrix<double>::Identity(m, r);
    } else {
        out.v = haar_random_unitary<double>(m, engine).leftCols(r);
    }
    out.value = objective(scaled_basis, out.v);
    out.evaluations = 1;

    double step = cfg.initial_step;
    int rejected = 0;
    while (out.evaluations < cfg.max_evals && step >= cfg.min_step) {
        CMatrix<double> dir = tangent(out.v, random_gaussian(m, r, engine));
        const double norm = dir.norm();
        if (norm > 0) dir /= norm;
        const CMatrix<double> candidate = polar_retract(out.v + step * dir);
        const double value = objective(scaled_basis, candidate);
        ++out.evaluations;
        if (value < out.value) {
            out.v = candidate;
            out.value = value;
            rejected = 0;
        } else if (++rejected >= cfg.plateau) {
            step *= cfg.step_decay;
            rejected = 0;
        }
    }
    return out;
}

}  // namespace

CMatrix<double> reconstruct(const Decomposition& d) {
    if (d.components.empty()) throw std::invalid_argument("empty decomposition");
    const auto dim = static_cast<Eigen::Index>(d.components.front().psi.dim());
    CMatrix<double> m = CMatrix<double>::Zero(dim, dim);
    for (const auto& c : d.components) m += c.p * c.psi.amplitudes() * c.psi.amplitudes().adjoint();
    return m;
}

Eigenbasis support_eigenbasis(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix<double>> es(rho.matrix());
    if (es.info() != Eigen::Success) throw std::runtime_error("eigen-solver failed to converge");
    const auto& mu = es.eigenvalues();
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = mu.size() - 1; i >= 0; --i)
        if (mu[i] > tol::kRank) kept.push_back(i);
    Eigenbasis b;
    b.values.resize(static_cast<Eigen::Index>(kept.size()));
    b.vectors.resize(rho.matrix().rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) {
        b.values[static_cast<Eigen::Index>(j)] = mu[kept[j]];
        b.vectors.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(kept[j]);
    }
    return b;
}

namespace {

CMatrix<double> scaled_support(const Eigenbasis& basis) {
    return basis.vectors * basis.values.cwiseSqrt().cast<std::complex<double>>().asDiagonal();
}

}  // namespace

Decomposition decomposition_from_mixing(const DensityMatrix& rho, const CMatrix<double>& v) {
    const auto basis = support_eigenbasis(rho);
    const Eigen::Index r = basis.rank();
    if (v.cols() != r)
        throw std::invalid_argument("mixing matrix needs " + std::to_string(r) + " columns (rank of rho)");
    if (v.rows() < r) throw std::invalid_argument("mixing matrix has fewer rows than the rank of rho");
    const CMatrix<double> gram = v.adjoint() * v;
    if ((gram - CMatrix<double>::Identity(r, r)).cwiseAbs().maxCoeff() > tol::kIsometry)
        throw std::invalid_argument("mixing matrix columns are not orthonormal");

    const CMatrix<double> phi = components_of(scaled_support(basis), v);
    Decomposition d;
    for (Eigen::Index i = 0; i < phi.cols(); ++i) {
        const double p = phi.col(i).squaredNorm();
        if (p < tol::kDropWeight) continue;
        d.components.push_back({p, PureState::from_amplitudes(phi.col(i), rho.qubits(), Normalize::kAlways)});
    }
    return d;
}

double average_tangle_a_bc(const Decomposition& d) {
    double sum = 0;
    for (const auto& c : d.components) sum += c.p * tangle_pure_bipartite(c.psi, {0});
    return sum;
}

RoofResult minimize_tau_a_bc(const DensityMatrix& rho, const RoofConfig& cfg) {
    require_three_qubits(rho);
    if (cfg.restarts < 1) throw std::invalid_argument("roof search needs at least one restart");
    if (cfg.max_evals < 1) throw std::invalid_argument("roof search needs a positive evaluation budget");
    if (!(cfg.initial_step > 0) || !(cfg.step_decay > 0 && cfg.step_decay < 1) || cfg.plateau < 1)
        throw std::invalid_argument("invalid step schedule");

    const auto basis = support_eigenbasis(rho);
    const int r = static_cast<int>(basis.rank());
    const int m = cfg.components == 0 ? r * r : cfg.components;
    if (m < r)
        throw std::invalid_argument("decomposition size " + std::to_string(m) + " is below the rank " +
                                    std::to_string(r));
    const CMatrix<double> scaled = scaled_support(basis);

    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
    parallel_for(outcomes.size(), cfg.threads, [&](std::size_t i) {
        outcomes[i] = descend(scaled, m, r, static_cast<int>(i), cfg);
    });

    std::size_t best = 0;
    RoofResult result;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        result.evaluations += outcomes[i].evaluations;
        if (outcomes[i].value < outcomes[best].value) best = i;
    }
    result.best = decomposition_from_mixing(rho, outcomes[best].v);
    result.upper_bound = average_tangle_a_bc(result.best);
    result.restarts_used = cfg.restarts;
    result.rank = r;
    result.components_cap = m;
    return result;
}

MixedMonogamyReport mixed_monogamy_check(const DensityMatrix& rho, const RoofConfig& cfg) {
    require_three_qubits(rho);
    MixedMonogamyReport rep;
    rep.tau_ab = tangle_mixed(partial_trace(rho, {0, 1}));
    rep.tau_ac = tangle_mixed(partial_trace(rho, {0, 2}));
    rep.roof = minimize_tau_a_bc(rho, cfg);
    rep.roof_upper_bound = rep.roof.upper_bound;
    rep.margin = rep.roof_upper_bound - rep.tau_ab - rep.tau_ac;
    rep.failed = rep.margin < -tol::kMixedMargin;
    return rep;
}

}  // namespace ckw
