// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include "ckw/builtins.hpp"
#include "ckw/convex_roof.hpp"
#include "ckw/monogamy.hpp"
#include "ckw/tangle2.hpp"
#include "ckw/three_tangle.hpp"

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace ckw;
using C = std::complex<double>;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Detail {
public:
    template <typename T>
    Detail& operator()(const std::string& key, T value) {
        if (!os_.str().empty()) os_ << ' ';
        os_ << key << '=' << value;
        return *this;
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

std::vector<C> random_complex_unit(int n, Engine& engine) {
    std::normal_distribution<double> normal;
    std::vector<C> v(static_cast<std::size_t>(n));
    double norm2 = 0;
    for (auto& z : v) {
        const double re = normal(engine);
        const double im = normal(engine);
        z = {re, im};
        norm2 += std::norm(z);
    }
    for (auto& z : v) z /= std::sqrt(norm2);
    return v;
}

DensityMatrix random_mixed(int qubits, Engine& engine) {
    const auto d = static_cast<Eigen::Index>(dim_of(qubits));
    std::normal_distribution<double> normal;
    CMatrix<double> g(d, d);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        const double re = normal(engine);
        const double im = normal(engine);
        g.data()[i] = {re, im};
    }
    CMatrix<double> m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix::from_matrix(std::move(m), qubits);
}

std::map<std::string, double> run_compute(const std::string& args, int& code) {
    const std::string cmd = std::string(CKW_CLI_PATH) + " compute " + args;
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while (pipe && (n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pipe ? pclose(pipe) : -1;
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::map<std::string, double> values;
    std::istringstream in(out);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        if (comma != std::string::npos) values[line.substr(0, comma)] = std::stod(line.substr(comma + 1));
    }
    return values;
}

// 1. GHZ: tau_A(BC) = 1, tau_AB = tau_AC = 0, tau_ABC = 1 within 1e-10; < 0.1 s.
Outcome ghz_identity() {
    const auto t0 = Clock::now();
    int code = 0;
    const auto v = run_compute("--builtin ghz", code);
    const double elapsed = seconds_since(t0);
    Outcome o;
    o.pass = code == 0 && v.count("tau_ABC") && std::abs(v.at("tau_A(BC)") - 1) < 1e-10 &&
             std::abs(v.at("tau_AB")) < 1e-10 && std::abs(v.at("tau_AC")) < 1e-10 &&
             std::abs(v.at("tau_ABC") - 1) < 1e-10 && elapsed < 0.1;
    o.detail = Detail()("exit", code)("tau_A(BC)", v.count("tau_A(BC)") ? v.at("tau_A(BC)") : -1)(
                   "tau_ABC", v.count("tau_ABC") ? v.at("tau_ABC") : -1)("seconds", elapsed)
                   .str();
    return o;
}

// 2. EoF: E_AB = E_AC = 0.601 +- 0.001, E_A(BC) = 1 +- 1e-9, E_AB + E_AC > 1.
Outcome eof_counterexample() {
    const auto r = ckw_check(eof_example_state(), 0);
    const double e_ab = eof_from_tangle(r.tau_ab);
    const double e_ac = eof_from_tangle(r.tau_ac);
    const double e_a_bc = eof_from_tangle(r.tau_a_bc);
    Outcome o;
    o.pass = std::abs(e_ab - 0.601) <= 0.001 && std::abs(e_ac - 0.601) <= 0.001 && std::abs(e_a_bc - 1) <= 1e-9 &&
             e_ab + e_ac > 1;
    o.detail = Detail()("E_AB", e_ab)("E_AC", e_ac)("E_A(BC)", e_a_bc)("sum", e_ab + e_ac).str();
    return o;
}

// 3. W-like family: closed-form tangles and zero slack/three-tangle, 1e-10.
Outcome eq15_family() {
    auto engine = make_engine(3003);
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        const auto abc = random_complex_unit(3, engine);
        const auto psi = wstate_generalized(abc);
        const double a2 = std::norm(abc[0]), b2 = std::norm(abc[1]), c2 = std::norm(abc[2]);
        const auto r = ckw_check(psi, 0);
        worst = std::max({worst, std::abs(r.tau_ab - 4 * a2 * b2), std::abs(r.tau_ac - 4 * a2 * c2),
                          std::abs(r.tau_a_bc - 4 * a2 * (b2 + c2)), std::abs(r.slack), std::abs(r.tau_abc)});
    }
    return {worst < 1e-10, Detail()("samples", 100)("max_deviation", worst).str()};
}

// 4. CKW sweep: 1e5 Haar states, no slack below -1e-10; < 60 s single-threaded.
Outcome ckw_sweep() {
    BatchOptions opts;
    opts.threads = 1;
    const auto t0 = Clock::now();
    const auto s = batch_verify(100000, 42, VerifyMode::kPure3Ckw, opts);
    const double elapsed = seconds_since(t0);
    return {s.violations == 0 && s.min_slack >= -1e-10 && elapsed < 60,
            Detail()("samples", s.n_samples)("violations", s.violations)("min_slack", s.min_slack)(
                "max_residual_gap", s.max_gap)("seconds", elapsed)
                .str()};
}

// 5. Three formulas agree within 1e-9; permutation spread below 1e-12.
Outcome formula_equivalence() {
    const auto eq = batch_verify(10000, 5005, VerifyMode::kFormulaEquiv);
    const auto perm = batch_verify(10000, 5005, VerifyMode::kPermInvariance);
    return {eq.max_gap < 1e-9 && perm.max_gap < 1e-12,
            Detail()("max_formula_deviation", eq.max_gap)("max_permutation_spread", perm.max_gap).str()};
}

// 6. Trace identities within 1e-10 on 1e4 Haar states.
Outcome trace_identities() {
    double worst_first = 0, worst_sum = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        const auto t = trace_identity_check(haar_random_pure(3, 6006, i));
        worst_first = std::max(worst_first, std::abs(t.trace_ab - t.det_combination));
        worst_sum = std::max(worst_sum, std::abs(t.trace_ab + t.trace_ac - t.four_det_a));
    }
    return {worst_first < 1e-10 && worst_sum < 1e-10,
            Detail()("max_trace_vs_dets", worst_first)("max_sum_vs_4detA", worst_sum).str()};
}

// 7. n-qubit W family: |gap| < 1e-9 for n = 2..10; uniform case 4(n-1)/n^2 within 1e-12.
Outcome nqubit_equality() {
    double worst_gap = 0, worst_uniform = 0;
    for (int n = 2; n <= 10; ++n) {
        BatchOptions opts;
        opts.qubits = n;
        worst_gap = std::max(worst_gap, batch_verify(1000, 7007, VerifyMode::kNQubit, opts).max_gap);
        const std::vector<C> uniform(static_cast<std::size_t>(n), 1 / std::sqrt(static_cast<double>(n)));
        const auto r = nqubit_equality_check(uniform);
        const double expected = 4.0 * (n - 1) / (n * n);
        worst_uniform = std::max({worst_uniform, std::abs(r.lhs - expected), std::abs(r.rhs - expected)});
    }
    return {worst_gap < 1e-9 && worst_uniform < 1e-12,
            Detail()("max_gap", worst_gap)("max_uniform_deviation", worst_uniform).str()};
}

// 8. Roof: GHZ mixture bound <= 1e-6; 100 rank-2 states without a margin
//    below -1e-8; < 5 min.
Outcome convex_roof_sanity() {
    const auto t0 = Clock::now();
    const double mixture_bound = minimize_tau_a_bc(ghz_mixture()).upper_bound;
    int failures = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < 100; ++i) {
        const auto rho = reduced_density(haar_random_pure(4, 8008, i), {0, 1, 2});
        const auto rep = mixed_monogamy_check(rho);
        failures += rep.margin < -1e-8;
        min_margin = std::min(min_margin, rep.margin);
    }
    const double elapsed = seconds_since(t0);
    return {mixture_bound <= 1e-6 && failures == 0 && elapsed < 300,
            Detail()("mixture_upper_bound", mixture_bound)("failures", failures)("min_margin", min_margin)(
                "seconds", elapsed)
                .str()};
}

// 9. Local-unitary invariance (1e-10, 1e3 samples), spin-flip involution
//    (1e-12), tangle convexity (1e-10, 1e3 mixtures).
Outcome invariance_suite() {
    auto engine = make_engine(9009);
    double lu_tangle = 0, lu_three = 0, involution = 0, convexity_excess = -1;
    std::uniform_real_distribution<double> uni(0, 1);
    for (int t = 0; t < 1000; ++t) {
        const auto rho = random_mixed(2, engine);
        const auto u = kron(haar_random_unitary<double>(2, engine), haar_random_unitary<double>(2, engine));
        const auto rotated = DensityMatrix::from_matrix(u * rho.matrix() * u.adjoint(), 2);
        lu_tangle = std::max(lu_tangle, std::abs(tangle_mixed(rotated) - tangle_mixed(rho)));

        const auto psi = haar_random_pure(3, engine);
        std::vector<CMatrix<double>> locals;
        for (int q = 0; q < 3; ++q) locals.push_back(haar_random_unitary<double>(2, engine));
        lu_three = std::max(lu_three, std::abs(three_tangle(apply_local(psi, std::span<const CMatrix<double>>(locals))) -
                                               three_tangle(psi)));

        involution = std::max(involution, (spin_flip(spin_flip(rho)).matrix() - rho.matrix()).cwiseAbs().maxCoeff());

        const auto other = density_from_pure(haar_random_pure(2, engine));
        const double p = uni(engine);
        const double excess =
            tangle_mixed(mix(rho, other, p)) - (p * tangle_mixed(rho) + (1 - p) * tangle_mixed(other));
        convexity_excess = std::max(convexity_excess, excess);
    }
    return {lu_tangle < 1e-10 && lu_three < 1e-10 && involution < 1e-12 && convexity_excess <= 1e-10,
            Detail()("lu_tangle", lu_tangle)("lu_three_tangle", lu_three)("involution", involution)(
                "max_convexity_excess", convexity_excess)
                .str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 GHZ identity", ghz_identity},
        {"2 EoF counterexample", eof_counterexample},
        {"3 W-like equality family", eq15_family},
        {"4 CKW inequality sweep", ckw_sweep},
        {"5 three-formula equivalence", formula_equivalence},
        {"6 trace identities", trace_identities},
        {"7 n-qubit equality", nqubit_equality},
        {"8 convex roof sanity", convex_roof_sanity},
        {"9 invariance suite", invariance_suite},
    };
    std::cout.precision(3);
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " criteria passed" << std::endl;
    return failed;
}
