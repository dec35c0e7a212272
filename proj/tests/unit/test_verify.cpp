#include <doctest.h>

#include "instances.hpp"
#include "omega/error.hpp"
#include "omega/verify.hpp"

using namespace omega;
using namespace omega::testing;

TEST_CASE("verify passes on I2 and on random instances") {
    VerifyOptions o;
    o.random_policies = 20;
    const auto r = verify(build_product(instance_i2(), accept_on_g()), o);
    CHECK(r.pass());
    for (const auto& z : r.records) {
        CHECK(z.policies == 22);
        CHECK(z.theorem2_identity_max_error <= 1e-8);
    }

    Rng rng(127);
    o.tail_episodes = 500;
    o.zetas = {0.5, 0.9, 0.99};
    for (int i = 0; i < 30; ++i) {
        const auto rep = verify(build_product(random_mdp(rng, {}), random_nba(rng, {})), o);
        CHECK(rep.pass());
    }
}

TEST_CASE("verify on the accepting self-loop") {
    VerifyOptions o;
    o.zetas = {0.3, 0.9};
    const auto r = verify(build_product(accepting_self_loop(), accept_on_g()), o);
    CHECK(r.pass());
    for (const auto& z : r.records) CHECK(z.prob1_equivalence_failures == 0);
}

TEST_CASE("pass flags follow the tolerances") {
    VerifyOptions o;
    o.random_policies = 5;
    o.identity_tol = -1.0;  // nothing can meet a negative tolerance
    const auto r = verify(build_product(instance_i2(), accept_on_g()), o);
    CHECK_FALSE(r.pass());
    for (const auto& z : r.records) {
        CHECK_FALSE(z.pass_identity);
        CHECK(z.pass_bounds);
    }
}

TEST_CASE("sweep thresholds") {
    const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    const auto i2 = sweep(build_product(instance_i2(), accept_on_g()), grid);
    REQUIRE(i2.empirical_zeta0);
    CHECK(*i2.empirical_zeta0 == doctest::Approx(0.6));
    for (const auto& pt : i2.points) CHECK(pt.is_optimal == (pt.zeta > 0.55));

    const auto loop = sweep(build_product(accepting_self_loop(), accept_on_g()), grid);
    CHECK(*loop.empirical_zeta0 == doctest::Approx(0.1));
    const auto never = sweep(build_product(never_accepting(), accept_on_g()), grid);
    for (const auto& pt : never.points) CHECK(pt.psat_opt == 0.0);

    CHECK_THROWS_AS(sweep(build_product(instance_i2(), accept_on_g()), {0.5, 0.4}), SemanticError);
}

TEST_CASE("strategy identifiers") {
    const auto p = build_product(instance_i2(), accept_on_g());
    CHECK(strategy_id(p, Strategy{{1, 0, 0}}) == "s0@0=b/0;sA@0=a/0;sR@0=a/0");
}
