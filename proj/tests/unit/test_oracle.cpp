#include <doctest.h>

#include "brute_force.hpp"
#include "instances.hpp"
#include "omega/hoa.hpp"
#include "omega/oracle.hpp"
#include "omega/solvers.hpp"

#include <cmath>
#include <filesystem>

using namespace omega;
using namespace omega::testing;

namespace {
const std::filesystem::path kData = OMEGA_DATA_DIR;

Strategy random_choice(const ProductMdp& p, Rng& rng) {
    Strategy f;
    for (std::size_t v = 0; v < p.num_states(); ++v) f.choice.push_back(uniform(rng, 0, p.choices[v].size() - 1));
    return f;
}

RandomSpec small_spec() {
    RandomSpec s;
    s.max_mdp_states = 3;
    s.max_automaton_states = 2;
    s.max_actions = 2;
    return s;
}
}  // namespace

TEST_CASE("MECs of the hand instances") {
    const auto loop = build_product(accepting_self_loop(), accept_on_g());
    const auto m1 = mec_decomposition(loop);
    REQUIRE(m1.size() == 1);
    CHECK(m1[0].states == std::vector<std::size_t>{0});
    CHECK(is_accepting(loop, m1[0]));

    const auto p = build_product(instance_i2(), accept_on_g());
    const auto ms = mec_decomposition(p);
    REQUIRE(ms.size() == 2);
    const auto sA = *p.index_of({1, 0}), sR = *p.index_of({2, 0});
    for (const auto& ec : ms) {
        CHECK_FALSE(ec.contains(p.initial));
        CHECK(ec.states.size() == 1);
        CHECK(is_accepting(p, ec) == ec.contains(sA));
    }
    CHECK((ms[0].contains(sA) || ms[1].contains(sA)));
    CHECK((ms[0].contains(sR) || ms[1].contains(sR)));
}

TEST_CASE("MEC decomposition matches subset enumeration") {
    Rng rng(101);
    RandomSpec spec;
    spec.max_mdp_states = 4;
    spec.max_automaton_states = 2;
    spec.deterministic = false;
    int tested = 0;
    while (tested < 150) {
        const auto p = build_product(random_mdp(rng, spec), random_nba(rng, spec));
        if (p.num_states() > 8) continue;
        ++tested;
        auto got = mec_decomposition(p);
        std::vector<std::vector<std::size_t>> states;
        for (const auto& ec : got) states.push_back(ec.states);
        std::sort(states.begin(), states.end());
        CHECK(states == maximal_end_components_by_subsets(p));
        for (const auto& ec : got) {
            // Retained choices stay inside the component.
            for (std::size_t i = 0; i < ec.states.size(); ++i) {
                CHECK_FALSE(ec.choices[i].empty());
                for (auto c : ec.choices[i])
                    for (const auto& e : p.choices[ec.states[i]][c].edges) CHECK(ec.contains(e.target));
            }
        }
    }
}

TEST_CASE("Buchi values of the hand instances") {
    CHECK(buchi_value(build_product(accepting_self_loop(), accept_on_g())).values[0] == doctest::Approx(1.0));
    CHECK(buchi_value(build_product(never_accepting(), accept_on_g())).values[0] == 0.0);

    const auto p = build_product(instance_i2(), accept_on_g());
    const auto b = buchi_value(p);
    CHECK(std::abs(b.values[0] - 0.5) <= 1e-12);
    CHECK(p.choices[0][b.strategy.choice[0]].action == 0);
    CHECK(std::abs(policy_buchi_probability(p, Strategy{{0, 0, 0}}) - 0.5) <= 1e-12);
    CHECK(policy_buchi_probability(p, Strategy{{1, 0, 0}}) == 0.0);
    Rng rng(0);
    const auto loop = build_product(accepting_self_loop(), accept_on_g());
    CHECK(policy_buchi_probability(loop, random_choice(loop, rng)) == doctest::Approx(1.0));
}

TEST_CASE("Buchi value matches exhaustive strategy enumeration") {
    Rng rng(103);
    const RandomSpec spec = small_spec();
    int tested = 0;
    while (tested < 150) {
        const auto p = build_product(random_mdp(rng, spec), random_nba(rng, spec));
        if (p.num_states() > 6) continue;
        ++tested;
        const auto b = buchi_value(p);
        const auto brute = buchi_by_enumeration(p);
        CHECK((b.values - brute).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK((policy_buchi_probabilities(p, b.strategy) - b.values).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("probability one under a strategy matches reaching the target surely") {
    Rng rng(107);
    for (int i = 0; i < 100; ++i) {
        const auto p = build_product(random_mdp(rng, {}), random_nba(rng, {}));
        const auto reach = augment(p, 0.9, Mode::ReachTarget);
        for (int k = 0; k < 5; ++k) {
            const auto f = random_choice(p, rng);
            const auto pr = policy_buchi_probabilities(p, f);
            const auto vr = evaluate_policy(reach, f);
            for (std::size_t v = 0; v < p.num_states(); ++v)
                CHECK((std::abs(pr[long(v)] - 1.0) <= 1e-9) == (std::abs(vr[v] - 1.0) <= 1e-9));
        }
    }
}

TEST_CASE("Buchi value is invariant under renaming and padding the automaton") {
    Rng rng(109);
    for (int i = 0; i < 80; ++i) {
        const Mdp m = random_mdp(rng, {});
        const Nba a = random_nba(rng, {});
        const double base = buchi_value(build_product(m, a)).values[0];

        Nba renamed = a;
        std::vector<std::size_t> perm(a.num_states);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        renamed.initial = perm[a.initial];
        for (auto& t : renamed.transitions) {
            t.source = perm[t.source];
            t.target = perm[t.target];
        }
        CHECK(std::abs(buchi_value(build_product(m, renamed)).values[0] - base) <= 1e-10);

        Nba padded = a;
        const std::size_t extra = padded.num_states++;
        for (std::size_t s = 0; s < a.alphabet.size(); ++s) padded.transitions.push_back({extra, s, extra, true});
        CHECK(std::abs(buchi_value(build_product(m, padded)).values[0] - base) <= 1e-10);
    }
}

TEST_CASE("a nondeterministic automaton without a gfm assertion yields lower bounds") {
    Nba ldba = complete_with_trap(load_hoa(kData / "nondet2.hoa"));
    CHECK(ldba.gfm_asserted);
    ldba.gfm_asserted = false;
    CHECK(buchi_value(build_product(instance_i2(), ldba)).lower_bound_only);
}

TEST_CASE("limit-deterministic automaton for eventually-always g on I2") {
    // Under a, half the mass settles in sA where g holds forever.
    const auto p = build_product(instance_i2(), complete_with_trap(load_hoa(kData / "nondet2.hoa")));
    CHECK(std::abs(buchi_value(p).values[p.initial] - 0.5) <= 1e-10);
}
