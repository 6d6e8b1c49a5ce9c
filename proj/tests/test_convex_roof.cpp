#include "ckw/builtins.hpp"
#include "ckw/convex_roof.hpp"
#include "ckw/tangle2.hpp"
#include "test_support.hpp"

#include "doctest.h"

#include <cmath>

using namespace ckw;
using C = std::complex<double>;

namespace {

DensityMatrix rank2_from_four_qubits(std::uint64_t seed, std::uint64_t index) {
    return reduced_density(haar_random_pure(4, seed, index), {0, 1, 2});
}

CMatrix<double> random_isometry(int m, int r, Engine& engine) {
    return haar_random_unitary<double>(m, engine).leftCols(r);
}

RoofConfig quick_config() {
    RoofConfig cfg;
    cfg.restarts = 4;
    cfg.max_evals = 3000;
    cfg.threads = 1;
    return cfg;
}

}  // namespace

TEST_CASE("decomposition_from_mixing") {
    const auto rho = ghz_mixture();

    SUBCASE("identity recovers the eigendecomposition") {
        const auto d = decomposition_from_mixing(rho, CMatrix<double>::Identity(2, 2));
        REQUIRE(d.components.size() == 2);
        for (const auto& c : d.components) {
            CHECK(c.p == doctest::Approx(0.5));
            CHECK(tangle_pure_bipartite(c.psi, {0}) == 0);
        }
        CHECK(average_tangle_a_bc(d) == 0);
    }

    SUBCASE("balanced mixing gives GHZ-type components") {
        const double s = 1 / std::sqrt(2.0);
        CMatrix<double> v(2, 2);
        v << s, s, s, -s;
        const auto d = decomposition_from_mixing(rho, v);
        REQUIRE(d.components.size() == 2);
        for (const auto& c : d.components) {
            CHECK(c.p == doctest::Approx(0.5).epsilon(1e-14));
            CHECK(std::abs(c.psi[0]) == doctest::Approx(s).epsilon(1e-14));
            CHECK(std::abs(c.psi[7]) == doctest::Approx(s).epsilon(1e-14));
        }
        // relative sign differs between the two components
        const C r0 = d.components[0].psi[7] / d.components[0].psi[0];
        const C r1 = d.components[1].psi[7] / d.components[1].psi[0];
        CHECK(std::abs(r0 + r1) < 1e-14);
        CHECK(average_tangle_a_bc(d) == doctest::Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("random isometries reconstruct rho") {
        auto engine = make_engine(61);
        for (int t = 0; t < 50; ++t) {
            const auto mixed = testing::random_mixed(3, engine, 1 + t % 4);
            const int r = 1 + t % 4;
            const auto v = random_isometry(r * r + 1, r, engine);
            const auto d = decomposition_from_mixing(mixed, v);
            double total = 0;
            for (const auto& c : d.components) {
                CHECK(c.p >= 0);
                total += c.p;
            }
            CHECK(std::abs(total - 1) < 1e-9);
            CHECK(testing::max_abs_diff(reconstruct(d), mixed.matrix()) < 1e-8);
        }
    }

    SUBCASE("errors") {
        CHECK_THROWS_AS(decomposition_from_mixing(rho, CMatrix<double>::Ones(2, 2)), std::invalid_argument);
        CHECK_THROWS_AS(decomposition_from_mixing(rho, CMatrix<double>::Identity(1, 1)), std::invalid_argument);
        CHECK_THROWS_AS(decomposition_from_mixing(rho, CMatrix<double>::Identity(3, 3)), std::invalid_argument);
    }
}

TEST_CASE("average_tangle_a_bc") {
    Decomposition single{{{1.0, ghz_state()}}};
    CHECK(average_tangle_a_bc(single) == doctest::Approx(1.0).epsilon(1e-14));
    const auto psi = haar_random_pure(3, 4);
    CHECK(average_tangle_a_bc(Decomposition{{{1.0, psi}}}) == tangle_pure_bipartite(psi, {0}));
}

TEST_CASE("minimize_tau_a_bc") {
    SUBCASE("pure GHZ has a unique decomposition") {
        const auto res = minimize_tau_a_bc(density_from_pure(ghz_state()));
        CHECK(res.upper_bound == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(res.rank == 1);
        CHECK(res.components_cap == 1);
    }

    SUBCASE("GHZ mixture reaches zero") {
        const auto res = minimize_tau_a_bc(ghz_mixture());
        CHECK(res.upper_bound <= 1e-6);
        CHECK(res.components_cap == 4);
        CHECK(res.restarts_used == 16);
    }

    SUBCASE("pure inputs give the pure-state tangle") {
        for (std::uint64_t i = 0; i < 5; ++i) {
            const auto psi = haar_random_pure(3, 71, i);
            const auto res = minimize_tau_a_bc(density_from_pure(psi), quick_config());
            CHECK(std::abs(res.upper_bound - tangle_pure_bipartite(psi, {0})) < 1e-12);
        }
    }

    SUBCASE("bound sits above the pairwise tangles and below sampled decompositions") {
        auto engine = make_engine(90);
        for (std::uint64_t i = 0; i < 5; ++i) {
            const auto rho = rank2_from_four_qubits(12, i);
            const auto res = minimize_tau_a_bc(rho);
            const double pairs = tangle_mixed(partial_trace(rho, {0, 1})) + tangle_mixed(partial_trace(rho, {0, 2}));
            CHECK(res.upper_bound >= pairs - 1e-8);
            CHECK(std::abs(res.upper_bound - average_tangle_a_bc(res.best)) < 1e-12);
            CHECK(testing::max_abs_diff(reconstruct(res.best), rho.matrix()) < 1e-8);
            for (int t = 0; t < 20; ++t) {
                const auto d = decomposition_from_mixing(rho, random_isometry(4, 2, engine));
                CHECK(average_tangle_a_bc(d) >= res.upper_bound - 1e-12);
            }
        }
    }

    SUBCASE("determinism and thread independence") {
        const auto rho = rank2_from_four_qubits(13, 0);
        auto cfg = quick_config();
        const auto a = minimize_tau_a_bc(rho, cfg);
        cfg.threads = 3;
        const auto b = minimize_tau_a_bc(rho, cfg);
        CHECK(a.upper_bound == b.upper_bound);
        CHECK(a.evaluations == b.evaluations);
    }

    SUBCASE("more evaluations never worsen the bound") {
        const auto rho = rank2_from_four_qubits(14, 0);
        auto cfg = quick_config();
        double prev = 2;
        for (std::size_t evals : {10u, 100u, 1000u, 5000u}) {
            cfg.max_evals = evals;
            const double ub = minimize_tau_a_bc(rho, cfg).upper_bound;
            CHECK(ub <= prev);
            prev = ub;
        }
    }

    SUBCASE("invalid configurations") {
        auto cfg = quick_config();
        cfg.restarts = 0;
        CHECK_THROWS_AS(minimize_tau_a_bc(ghz_mixture(), cfg), std::invalid_argument);
        cfg = quick_config();
        cfg.components = 1;
        CHECK_THROWS_AS(minimize_tau_a_bc(ghz_mixture(), cfg), std::invalid_argument);
        CHECK_THROWS_AS(minimize_tau_a_bc(werner_state(0.5)), std::invalid_argument);
    }
}

TEST_CASE("tangle convexity over decompositions") {
    // The pairwise tangle of rho never exceeds the weighted pairwise tangles
    // of any decomposition's components.
    auto engine = make_engine(5);
    for (std::uint64_t i = 0; i < 10; ++i) {
        const auto rho = rank2_from_four_qubits(33, i);
        const double tau_ab = tangle_mixed(partial_trace(rho, {0, 1}));
        const double tau_ac = tangle_mixed(partial_trace(rho, {0, 2}));
        for (int t = 0; t < 20; ++t) {
            const auto d = decomposition_from_mixing(rho, random_isometry(4, 2, engine));
            double avg_ab = 0, avg_ac = 0;
            for (const auto& c : d.components) {
                avg_ab += c.p * pair_tangle(c.psi, 0, 1);
                avg_ac += c.p * pair_tangle(c.psi, 0, 2);
            }
            CHECK(tau_ab <= avg_ab + 1e-9);
            CHECK(tau_ac <= avg_ac + 1e-9);
        }
    }
}

TEST_CASE("mixed_monogamy_check") {
    const auto ghz = mixed_monogamy_check(density_from_pure(ghz_state()));
    CHECK(ghz.margin == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(ghz.failed);

    const auto mixture = mixed_monogamy_check(ghz_mixture());
    CHECK(std::abs(mixture.tau_ab) < 1e-14);
    CHECK(std::abs(mixture.tau_ac) < 1e-14);
    CHECK(mixture.margin >= -1e-8);
    CHECK_FALSE(mixture.failed);

    for (std::uint64_t i = 0; i < 5; ++i) {
        const auto rep = mixed_monogamy_check(rank2_from_four_qubits(50, i), quick_config());
        CHECK_FALSE(rep.failed);
    }
}
