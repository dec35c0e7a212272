#include <doctest.h>

#include "brute_force.hpp"
#include "instances.hpp"
#include "omega/automata.hpp"
#include "omega/error.hpp"
#include "omega/hoa.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace omega;
using namespace omega::testing;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::filesystem::path kData = OMEGA_DATA_DIR;

SemanticError::Kind semantic_kind(const std::string& text) {
    try {
        parse_hoa(text);
    } catch (const SemanticError& e) {
        return e.kind;
    }
    FAIL("expected a semantic error");
    return SemanticError::Kind::InvalidArgument;
}

std::vector<std::string> names(const Nba& a, const std::vector<std::size_t>& w) {
    std::vector<std::string> out;
    for (auto s : w) out.push_back(a.alphabet[s]);
    return out;
}

}  // namespace

TEST_CASE("minimal one-state HOA body") {
    const auto a = parse_hoa(
        "HOA: v1\nStates: 1\nStart: 0\nAP: 2 \"g\" \"n\"\nacc-name: Buchi\nAcceptance: 1 Inf(0)\n"
        "--BODY--\nState: 0\n[0] 0 {0}\n[1] 0\n--END--\n");
    CHECK(a.num_states == 1);
    CHECK(a.transitions.size() == 2);
    CHECK(a.num_accepting() == 1);
    CHECK(a.gfm_asserted);
    CHECK(is_deterministic(a));
    CHECK(is_complete(a));
}

TEST_CASE("corpus files round-trip through the canonical form") {
    for (const char* name : {"accept_g.hoa", "nondet2.hoa", "gf_g_det.hoa"}) {
        CAPTURE(name);
        const std::string text = slurp(kData / name);
        const Nba a = parse_hoa(text);
        CHECK(serialize_hoa(a) == text);
        const Nba b = parse_hoa(serialize_hoa(a));
        CHECK(b.transitions == a.transitions);
        CHECK(b.gfm_asserted == a.gfm_asserted);
    }
}

TEST_CASE("random automata round-trip") {
    Rng rng(11);
    RandomSpec spec;
    spec.deterministic = false;
    for (int i = 0; i < 100; ++i) {
        Nba a = random_nba(rng, spec);
        a.gfm_asserted = true;
        const Nba b = parse_hoa(serialize_hoa(a));
        CHECK(b.transitions == a.transitions);
        CHECK(serialize_hoa(b) == serialize_hoa(a));
    }
}

TEST_CASE("HOA rejections are reported by class") {
    const std::string head = "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"g\"\n";
    const std::string body = "--BODY--\nState: 0\n[0] 0 {0}\n--END--\n";
    CHECK(semantic_kind(head + "Acceptance: 2 Inf(0)&Inf(1)\n" + body) == SemanticError::Kind::NonBuchiAcceptance);
    CHECK(semantic_kind(head + "Acceptance: 1 Fin(0)\n" + body) == SemanticError::Kind::NonBuchiAcceptance);
    CHECK(semantic_kind(head + "acc-name: co-Buchi\nAcceptance: 1 Inf(0)\n" + body) ==
          SemanticError::Kind::NonBuchiAcceptance);
    CHECK(semantic_kind(head + "Acceptance: 1 Inf(0)\n--BODY--\nState: 0 {0}\n[0] 0\n--END--\n") ==
          SemanticError::Kind::StateBasedAcceptance);
    CHECK(semantic_kind(head + "Acceptance: 1 Inf(0)\n--BODY--\nState: 0\n[0] 3\n--END--\n") ==
          SemanticError::Kind::UndeclaredState);
    CHECK(semantic_kind(head + "Acceptance: 1 Inf(0)\n--BODY--\nState: 0\n[!0] 0\n--END--\n") ==
          SemanticError::Kind::UnsupportedLabel);

    try {
        parse_hoa("HOA: v1\nStates: 1\nStart 0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.column > 0);
    }
}

TEST_CASE("disjunctive labels expand into one transition per symbol") {
    const auto a = parse_hoa(
        "HOA: v1\nStates: 1\nStart: 0\nAP: 2 \"g\" \"n\"\nAcceptance: 1 Inf(0)\n"
        "--BODY--\nState: 0\n[0 | 1] 0 {0}\n--END--\n");
    REQUIRE(a.transitions.size() == 2);
    CHECK(a.transitions[0].symbol == 0);
    CHECK(a.transitions[1].symbol == 1);
    CHECK(a.num_accepting() == 2);
}

TEST_CASE("determinism and completeness") {
    Nba a = accept_on_g();
    CHECK(is_deterministic(a));
    CHECK(is_complete(a));

    Nba b = a;
    b.num_states = 2;
    b.transitions.push_back({0, 0, 1, false});
    b.transitions.push_back({1, 0, 1, false});
    b.transitions.push_back({1, 1, 1, false});
    CHECK_FALSE(is_deterministic(b));

    Nba c = a;
    c.transitions.pop_back();
    CHECK_FALSE(is_complete(c));
    CHECK(is_complete(complete_with_trap(c)));
    CHECK(complete_with_trap(c).num_accepting() == c.num_accepting());

    Rng rng(3);
    RandomSpec spec;
    spec.deterministic = false;
    for (int i = 0; i < 300; ++i) {
        Nba r = random_nba(rng, spec);
        // Knock out a random transition now and then so completeness varies.
        if (i % 3 == 0 && r.transitions.size() > 1) r.transitions.erase(r.transitions.begin() + (i % r.transitions.size()));
        CHECK(is_deterministic(r) == deterministic_by_pairs(r));
        CHECK(is_complete(r) == complete_by_scan(r));
    }
}

TEST_CASE("lasso acceptance on small examples") {
    const Nba a = accept_on_g();
    CHECK(accepts_lasso(a, {{}, {"g"}}));
    CHECK_FALSE(accepts_lasso(a, {{}, {"n"}}));
    CHECK(accepts_lasso(a, {{"n", "n"}, {"n", "g"}}));
    CHECK_FALSE(accepts_lasso(a, {{"g", "g"}, {"n"}}));
    CHECK_THROWS_AS(accepts_lasso(a, {{}, {"x"}}), SemanticError);
    CHECK_THROWS_AS(accepts_lasso(a, {{}, {}}), SemanticError);
}

TEST_CASE("lasso search matches run enumeration on the nondeterministic corpus automaton") {
    const Nba a = complete_with_trap(load_hoa(kData / "nondet2.hoa"));
    const std::size_t k = a.alphabet.size();
    // Every lasso with |prefix| <= 2 and 1 <= |cycle| <= 3.
    for (std::size_t plen = 0; plen <= 2; ++plen)
        for (std::size_t clen = 1; clen <= 3; ++clen) {
            std::size_t total = 1;
            for (std::size_t i = 0; i < plen + clen; ++i) total *= k;
            for (std::size_t code = 0; code < total; ++code) {
                std::vector<std::size_t> pre, cyc;
                std::size_t x = code;
                for (std::size_t i = 0; i < plen; ++i, x /= k) pre.push_back(x % k);
                for (std::size_t i = 0; i < clen; ++i, x /= k) cyc.push_back(x % k);
                CHECK(accepts_lasso(a, {names(a, pre), names(a, cyc)}) == lasso_by_run_enumeration(a, pre, cyc));
            }
        }
}

TEST_CASE("lasso search matches run enumeration on random automata") {
    Rng rng(17);
    RandomSpec spec;
    spec.deterministic = false;
    for (int i = 0; i < 300; ++i) {
        const Nba a = random_nba(rng, spec);
        std::vector<std::size_t> pre(uniform(rng, 0, 3)), cyc(uniform(rng, 1, 3));
        for (auto& s : pre) s = uniform(rng, 0, 1);
        for (auto& s : cyc) s = uniform(rng, 0, 1);
        CHECK(accepts_lasso(a, {names(a, pre), names(a, cyc)}) == lasso_by_run_enumeration(a, pre, cyc));
    }
}

TEST_CASE("deterministic complete automata explore a single run") {
    Rng rng(23);
    RandomSpec spec;
    for (int i = 0; i < 300; ++i) {
        const Nba a = random_nba(rng, spec);
        REQUIRE(is_deterministic(a));
        LassoWord w;
        for (std::size_t j = uniform(rng, 0, 4); j > 0; --j) w.prefix.push_back(a.alphabet[uniform(rng, 0, 1)]);
        for (std::size_t j = uniform(rng, 1, 4); j > 0; --j) w.cycle.push_back(a.alphabet[uniform(rng, 0, 1)]);
        const auto r = lasso_search(a, w);
        CHECK(r.explored <= w.prefix.size() + a.num_states * w.cycle.size());
    }
}

TEST_CASE("acceptance is invariant under cycle rotation") {
    Rng rng(29);
    RandomSpec spec;
    spec.deterministic = false;
    for (int i = 0; i < 300; ++i) {
        const Nba a = random_nba(rng, spec);
        LassoWord w;
        for (std::size_t j = uniform(rng, 0, 3); j > 0; --j) w.prefix.push_back(a.alphabet[uniform(rng, 0, 1)]);
        for (std::size_t j = uniform(rng, 1, 4); j > 0; --j) w.cycle.push_back(a.alphabet[uniform(rng, 0, 1)]);
        LassoWord r = w;
        r.prefix.push_back(w.cycle.front());
        std::rotate(r.cycle.begin(), r.cycle.begin() + 1, r.cycle.end());
        CHECK(accepts_lasso(a, w) == accepts_lasso(a, r));
    }
}
