#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dircoul/model.hpp"

using namespace dircoul;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("effective_kappa is k - a")
{
    CHECK(effective_kappa({0, 3, 3}, {0, 0, 0, 0}) == 1.5);
    CHECK(effective_kappa({0, 1, 1}, {0, 0, 1.0, 0}) == -0.5);
    CHECK(effective_kappa({0, -3, -3}, {0, 0, 0.25, 0}) == -1.75);
}

TEST_CASE("gamma_exponent values and the forbidden band")
{
    CHECK(gamma_exponent(1.5, {0, 0, 0, 0}).value() == 1.5);
    CHECK_FALSE(gamma_exponent(0.5, {0, 0, 0, 0}).ok());
    CHECK(gamma_exponent(0.5, {0, 0, 0, 0}).reason() == RejectReason::GammaTooSmall);
    CHECK_THAT(gamma_exponent(1.5, {0.6, 0.8, 0, 0}).value(),
               WithinRel(1.3304134695650071, 1e-14));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 2000; ++t) {
        PotentialConfig cfg{u(rng), u(rng), 0, 0};
        const double kbar = 3.0 * u(rng);
        const bool inside = kbar * kbar <= 0.25 + cfg.alpha_sigma * cfg.alpha_delta;
        CHECK(gamma_exponent(kbar, cfg).ok() == !inside);
    }
}

TEST_CASE("scale_radius")
{
    const ScaledState s{1.5, 1.5, 1.5, 0.0, 0.5, 0.0};
    CHECK(scale_radius(0.0, s) == 0.0);
    CHECK(scale_radius(1.0, s) == 1.0);

    const auto st = make_scaled_state({0, 0, 0, 0.2}, {0, 3, 3}, 0.0);
    CHECK_THAT(scale_radius(2.0, st.value()), WithinRel(4.0792156108742279, 1e-14));
}

TEST_CASE("make_scaled_state window")
{
    CHECK_THROWS_AS(make_scaled_state({0, 0, 0, 0.0}, {0, 3, 3}, 1.0), std::domain_error);
    const auto st = make_scaled_state({0, 0, 0, 0.2}, {2, 3, 3}, 0.3);
    CHECK(st.value().xi == 2.0 + st.value().gamma);
    CHECK_FALSE(make_scaled_state({0.6, 0.8, 1.0, 0.0}, {0, 1, 1}, 0.0).ok());
}

TEST_CASE("charge conjugation transformation and involution")
{
    const PotentialConfig cfg{0.6, 0.8, 0.0, 0.2};
    const QuantumNumbers q{1, 3, 3};
    const auto [ccfg, cq] = charge_conjugate(cfg, q);
    CHECK(ccfg.alpha_sigma == -0.8);
    CHECK(ccfg.alpha_delta == -0.6);
    CHECK(ccfg.a == 0.0);
    CHECK(ccfg.bbar == -0.2);
    CHECK(cq.two_k == -3);
    CHECK(cq.two_mj == 3);

    const auto [c2cfg, c2q] = charge_conjugate(ccfg, cq);
    CHECK(c2cfg.alpha_sigma == cfg.alpha_sigma);
    CHECK(c2cfg.alpha_delta == cfg.alpha_delta);
    CHECK(c2cfg.a == cfg.a);
    CHECK(c2cfg.bbar == cfg.bbar);
    CHECK(c2q.two_k == q.two_k);

    // pure tensor: only the sign of b and k flip
    const auto [tc, tq] = charge_conjugate({0, 0, 0, 0.7}, {0, 5, 5});
    CHECK(tc.alpha_sigma == 0.0);
    CHECK(tc.alpha_delta == 0.0);
    CHECK(tc.bbar == -0.7);
    CHECK(tq.two_k == -5);

    // kbar maps to -kbar
    CHECK_THAT(effective_kappa(cq, ccfg), WithinAbs(-effective_kappa(q, cfg), 1e-15));
}

TEST_CASE("quantum number validity")
{
    CHECK(valid_circular({0, 3, -3}));
    CHECK(valid_circular({4, -1, 1}));
    CHECK_FALSE(valid_circular({-1, 3, 3}));
    CHECK_FALSE(valid_circular({0, 2, 2}));  // k must be half-integer
    CHECK_FALSE(valid_circular({0, 3, 5}));  // |k| = |m_j|
}

TEST_CASE("spherical mapping")
{
    const auto q = spherical_quantum_numbers(0, 1, 1);
    CHECK(q.two_k == -2);
    CHECK_THAT(effective_kappa(q, {0, 0, 0.3, 0}), WithinAbs(-1.0 - 0.3, 1e-15));

    CHECK_THROWS_AS(spherical_quantum_numbers(0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(spherical_quantum_numbers(-1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(spherical_quantum_numbers(0, 1, 3), std::invalid_argument); // |m_j| <= j

    // spherical mode is the circular problem evaluated at k = -k_s
    for (int ks : {-2, -1, 1, 2, 3}) {
        const auto qs = spherical_quantum_numbers(2, ks, 1);
        CHECK(qs.two_k == -2 * ks);
        CHECK(qs.nf == 2);
    }
}
