#include <doctest.h>

#include "brute_force.hpp"
#include "instances.hpp"
#include "omega/error.hpp"
#include "omega/hoa.hpp"
#include "omega/product.hpp"
#include "omega/shaping.hpp"
#include "omega/solvers.hpp"

#include <cmath>
#include <filesystem>

using namespace omega;
using namespace omega::testing;

namespace {
const std::filesystem::path kData = OMEGA_DATA_DIR;

void check_stochastic(const ProductMdp& p) {
    for (std::size_t v = 0; v < p.num_states(); ++v) {
        REQUIRE_FALSE(p.choices[v].empty());
        for (const auto& c : p.choices[v]) {
            double mass = 0.0;
            for (const auto& e : c.edges) {
                CHECK(e.target < p.num_states());
                mass += e.prob;
            }
            CHECK(std::abs(mass - 1.0) <= 1e-12);
        }
    }
}
}  // namespace

TEST_CASE("one-state product") {
    const auto p = build_product(accepting_self_loop(), accept_on_g());
    REQUIRE(p.num_states() == 1);
    REQUIRE(p.choices[0].size() == 1);
    REQUIRE(p.choices[0][0].edges.size() == 1);
    CHECK(p.choices[0][0].edges[0].accepting);
    CHECK(p.state_name(0) == "(s,0)");
    CHECK(p.choice_name(0, 0) == "a/0");
}

TEST_CASE("I2 product: reachable states and lifted acceptance") {
    const Mdp m = instance_i2();
    const auto p = build_product(m, accept_on_g());
    // One automaton state, so the reachable product mirrors the three MDP states.
    CHECK(p.num_states() == 3);
    check_stochastic(p);
    std::size_t accepting = 0;
    for (std::size_t v = 0; v < p.num_states(); ++v)
        for (const auto& c : p.choices[v])
            for (const auto& e : c.edges) {
                CHECK(e.accepting == (m.alphabet[e.symbol] == "g"));
                accepting += e.accepting;
            }
    CHECK(accepting == 2);
}

TEST_CASE("lifted acceptance agrees with an independent scan") {
    Rng rng(41);
    RandomSpec spec;
    spec.deterministic = false;
    for (int i = 0; i < 200; ++i) {
        const Mdp m = random_mdp(rng, spec);
        const Nba a = random_nba(rng, spec);
        const auto p = build_product(m, a);
        CHECK(p.num_states() <= m.num_states() * a.num_states);
        check_stochastic(p);
        for (std::size_t v = 0; v < p.num_states(); ++v)
            for (const auto& c : p.choices[v])
                for (const auto& e : c.edges) {
                    const auto q2 = p.states[e.target].automaton_state;
                    CHECK(*c.automaton_successor(e.symbol) == q2);
                    CHECK(e.accepting == accepting_by_definition(m, a, p.states[v].mdp_state,
                                                                 p.states[v].automaton_state, c.action,
                                                                 p.states[e.target].mdp_state, q2));
                }
    }
}

TEST_CASE("deterministic automata keep one pair per action") {
    Rng rng(43);
    for (int i = 0; i < 200; ++i) {
        const Mdp m = random_mdp(rng, {});
        const auto p = build_product(m, random_nba(rng, {}));
        for (std::size_t v = 0; v < p.num_states(); ++v) CHECK(p.choices[v].size() == m.choices[p.states[v].mdp_state].size());
    }
}

TEST_CASE("product construction errors") {
    Nba wrong = accept_on_g();
    wrong.alphabet = {"g", "x"};
    try {
        build_product(instance_i2(), wrong);
        FAIL("alphabet mismatch accepted");
    } catch (const SemanticError& e) {
        CHECK(e.kind == SemanticError::Kind::AlphabetMismatch);
    }
    const Nba ldba = load_hoa(kData / "nondet2.hoa");
    try {
        build_product(instance_i2(), ldba);
        FAIL("incomplete automaton accepted");
    } catch (const SemanticError& e) {
        CHECK(e.kind == SemanticError::Kind::IncompleteAutomaton);
    }
    const auto p = build_product(instance_i2(), complete_with_trap(ldba));
    check_stochastic(p);
    Mdp bad = instance_i2();
    bad.choices[0][0].edges[0].prob = 0.4;
    CHECK_THROWS_AS(build_product(bad, accept_on_g()), ValidationError);
}

TEST_CASE("reachable restriction leaves values unchanged") {
    Rng rng(47);
    RandomSpec spec;
    spec.deterministic = false;
    for (int i = 0; i < 60; ++i) {
        const Mdp m = random_mdp(rng, spec);
        const Nba a = random_nba(rng, spec);
        const auto reach = build_product(m, a);
        const auto full = build_product(m, a, {false});
        CHECK(full.num_states() == m.num_states() * a.num_states);
        const auto v0 = *full.index_of(reach.states[reach.initial]);
        for (Mode mode : {Mode::ReachTarget, Mode::TotalReward, Mode::BiasedDiscount}) {
            const auto r = solve_optimal(augment(reach, 0.9, mode));
            const auto f = solve_optimal(augment(full, 0.9, mode));
            CHECK(std::abs(r.value[reach.initial] - f.value[v0]) <= 1e-12 * std::max(1.0, r.value[reach.initial]));
        }
    }
}

TEST_CASE("controller projection and recomposition") {
    SUBCASE("single product state") {
        const auto p = build_product(accepting_self_loop(), accept_on_g());
        const auto c = project_strategy(p, Strategy{{0}});
        CHECK(c.memory_states == 1);
        CHECK(c.rules.size() == 1);
    }
    SUBCASE("random instances") {
        Rng rng(53);
        RandomSpec spec;
        spec.deterministic = false;
        for (int i = 0; i < 100; ++i) {
            const Mdp m = random_mdp(rng, spec);
            const Nba a = random_nba(rng, spec);
            const auto p = build_product(m, a);
            Strategy f;
            for (std::size_t v = 0; v < p.num_states(); ++v) f.choice.push_back(uniform(rng, 0, p.choices[v].size() - 1));
            const auto c = project_strategy(p, f);
            CHECK(recompose(p, c) == f);

            // Drive M with the controller and the product with f side by side.
            std::size_t s = m.initial, mem = c.initial_memory, v = p.initial;
            Rng walk(i);
            for (int step = 0; step < 30; ++step) {
                const auto* r = c.rule(s, mem);
                REQUIRE(r != nullptr);
                const auto& pc = p.choices[v][f.choice[v]];
                CHECK(r->action == pc.action);
                const auto st = sample_step(m, s, r->action, walk);
                s = st.successor;
                mem = r->update.at(st.symbol);
                v = *p.index_of({s, mem});
            }
        }
    }
    SUBCASE("deterministic automaton memory tracks the label history") {
        const Nba a = load_hoa(kData / "gf_g_det.hoa");
        const Mdp m = instance_i2();
        const auto p = build_product(m, a);
        const auto c = project_strategy(p, Strategy(std::vector<std::size_t>(p.num_states(), 0)));
        for (const auto& [key, rule] : c.rules)
            for (const auto& [sym, next] : rule.update) CHECK(next == a.successors(key.second, a.symbol_index(m.alphabet[sym]))[0]->target);
    }
}
