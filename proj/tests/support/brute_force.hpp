#pragma once

// Test-only ground truth. Each routine enumerates its search space directly
// and shares no code path with the library routine it checks.

#include "omega/automata.hpp"
#include "omega/oracle.hpp"
#include "omega/product.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

namespace omega::testing {

inline bool deterministic_by_pairs(const Nba& a) {
    for (const auto& t1 : a.transitions)
        for (const auto& t2 : a.transitions)
            if (t1.source == t2.source && t1.symbol == t2.symbol && t1.target != t2.target) return false;
    return true;
}

inline bool complete_by_scan(const Nba& a) {
    for (std::size_t q = 0; q < a.num_states; ++q)
        for (std::size_t s = 0; s < a.alphabet.size(); ++s) {
            bool found = false;
            for (const auto& t : a.transitions) found |= t.source == q && t.symbol == s;
            if (!found) return false;
        }
    return true;
}

/// Enumerates every run prefix on prefix.cycle^omega up to length
/// |prefix| + 2 |Q| |cycle| and looks for a repeated (state, cycle phase)
/// with an accepting transition in between.
inline bool lasso_by_run_enumeration(const Nba& a, const std::vector<std::size_t>& prefix,
                                     const std::vector<std::size_t>& cycle) {
    const std::size_t p = prefix.size(), c = cycle.size();
    const std::size_t horizon = p + 2 * a.num_states * c;
    auto letter = [&](std::size_t t) { return t < p ? prefix[t] : cycle[(t - p) % c]; };
    std::vector<std::size_t> run{a.initial};
    std::vector<bool> acc;
    std::function<bool()> dfs = [&]() -> bool {
        const std::size_t t = run.size() - 1;
        if (t >= p) {
            for (std::size_t t1 = p; t1 < t; ++t1) {
                if ((t - t1) % c != 0 || run[t1] != run[t]) continue;
                for (std::size_t k = t1; k < t; ++k)
                    if (acc[k]) return true;
            }
        }
        if (t == horizon) return false;
        for (const auto& tr : a.transitions) {
            if (tr.source != run.back() || tr.symbol != letter(t)) continue;
            run.push_back(tr.target);
            acc.push_back(tr.accepting);
            if (dfs()) return true;
            run.pop_back();
            acc.pop_back();
        }
        return false;
    };
    return dfs();
}

/// Lifted acceptance recomputed from the automaton and MDP directly.
inline bool accepting_by_definition(const Mdp& m, const Nba& a, std::size_t s, std::size_t q, std::size_t action,
                                    std::size_t s2, std::size_t q2) {
    const auto* c = m.find_choice(s, action);
    if (c == nullptr) return false;
    for (const auto& e : c->edges) {
        if (e.target != s2 || !(e.prob > 0.0)) continue;
        const auto sym = a.symbol_index(m.alphabet[*e.label]);
        for (const auto& t : a.transitions)
            if (t.source == q && t.symbol == sym && t.target == q2 && t.accepting) return true;
    }
    return false;
}

/// All end components found by subset enumeration (at most 12 states).
inline std::vector<std::vector<std::size_t>> maximal_end_components_by_subsets(const ProductMdp& p) {
    const std::size_t n = p.num_states();
    if (n > 12) throw std::invalid_argument("subset oracle is capped at 12 states");
    std::vector<std::uint32_t> ecs;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        auto in = [&](std::size_t v) { return (mask >> v) & 1u; };
        std::vector<std::vector<std::size_t>> succ(n);
        bool ok = true;
        for (std::size_t v = 0; v < n && ok; ++v) {
            if (!in(v)) continue;
            bool any = false;
            for (const auto& c : p.choices[v]) {
                const bool closed = std::all_of(c.edges.begin(), c.edges.end(),
                                                [&](const ProductEdge& e) { return !(e.prob > 0.0) || in(e.target); });
                if (!closed) continue;
                any = true;
                for (const auto& e : c.edges)
                    if (e.prob > 0.0) succ[v].push_back(e.target);
            }
            ok = any;
        }
        if (!ok) continue;
        // Strong connectivity: every member reaches every member.
        for (std::size_t v = 0; v < n && ok; ++v) {
            if (!in(v)) continue;
            std::vector<bool> seen(n, false);
            std::vector<std::size_t> todo{v};
            seen[v] = true;
            while (!todo.empty()) {
                auto x = todo.back();
                todo.pop_back();
                for (auto y : succ[x])
                    if (!seen[y]) {
                        seen[y] = true;
                        todo.push_back(y);
                    }
            }
            for (std::size_t w = 0; w < n; ++w)
                if (in(w) && !seen[w]) ok = false;
        }
        if (ok) ecs.push_back(mask);
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto m : ecs) {
        const bool maximal = std::none_of(ecs.begin(), ecs.end(), [&](std::uint32_t o) { return o != m && (o & m) == m; });
        if (!maximal) continue;
        std::vector<std::size_t> states;
        for (std::size_t v = 0; v < n; ++v)
            if ((m >> v) & 1u) states.push_back(v);
        out.push_back(std::move(states));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Invokes `visit` on every positional strategy.
inline void for_each_strategy(const ProductMdp& p, const std::function<void(const Strategy&)>& visit) {
    Strategy f;
    f.choice.assign(p.num_states(), 0);
    for (;;) {
        visit(f);
        std::size_t v = 0;
        while (v < p.num_states() && ++f.choice[v] == p.choices[v].size()) f.choice[v++] = 0;
        if (v == p.num_states()) return;
    }
}

/// Best Buchi probability at every state over all positional strategies.
inline Eigen::VectorXd buchi_by_enumeration(const ProductMdp& p) {
    Eigen::VectorXd best = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.num_states()));
    for_each_strategy(p, [&](const Strategy& f) { best = best.cwiseMax(policy_buchi_probabilities(p, f)); });
    return best;
}

}  // namespace omega::testing
