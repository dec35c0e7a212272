#include "omega/automata.hpp"
#include "omega/error.hpp"
#include "omega/graph.hpp"

#include <algorithm>
#include <map>

namespace omega {

std::size_t Nba::symbol_index(std::string_view name) const {
    auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end())
        throw SemanticError(SemanticError::Kind::UnknownName,
                            "symbol '" + std::string(name) + "' is not in the automaton alphabet");
    return static_cast<std::size_t>(it - alphabet.begin());
}

std::size_t Nba::num_accepting() const {
    return static_cast<std::size_t>(
        std::count_if(transitions.begin(), transitions.end(), [](const auto& t) { return t.accepting; }));
}

std::vector<const NbaTransition*> Nba::successors(std::size_t state, std::size_t symbol) const {
    std::vector<const NbaTransition*> out;
    for (const auto& t : transitions)
        if (t.source == state && t.symbol == symbol) out.push_back(&t);
    return out;
}

void Nba::check_invariants() const {
    using K = SemanticError::Kind;
    if (num_states == 0) throw SemanticError(K::UndeclaredState, "automaton has no states");
    if (initial >= num_states) throw SemanticError(K::UndeclaredState, "initial state is not declared");
    for (const auto& t : transitions) {
        if (t.source >= num_states || t.target >= num_states)
            throw SemanticError(K::UndeclaredState, "transition references an undeclared state");
        if (t.symbol >= alphabet.size())
            throw SemanticError(K::UnsupportedLabel, "transition symbol outside the alphabet");
    }
}

bool is_deterministic(const Nba& a) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
    for (const auto& t : a.transitions) {
        auto [it, fresh] = seen.try_emplace({t.source, t.symbol}, t.target);
        if (!fresh && it->second != t.target) return false;
    }
    return true;
}

bool is_complete(const Nba& a) {
    std::vector<bool> covered(a.num_states * a.alphabet.size(), false);
    for (const auto& t : a.transitions) covered[t.source * a.alphabet.size() + t.symbol] = true;
    return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
}

LassoSearch lasso_search(const Nba& a, const LassoWord& w) {
    if (w.cycle.empty())
        throw SemanticError(SemanticError::Kind::InvalidArgument, "lasso word needs a nonempty cycle");
    std::vector<std::size_t> word;
    for (const auto& s : w.prefix) word.push_back(a.symbol_index(s));
    for (const auto& s : w.cycle) word.push_back(a.symbol_index(s));
    const std::size_t prefix_len = w.prefix.size();
    const std::size_t len = word.size();
    auto next_pos = [&](std::size_t i) { return i + 1 < len ? i + 1 : prefix_len; };

    // Nodes are (state, position) pairs, discovered lazily from the start node.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> id;
    std::vector<std::pair<std::size_t, std::size_t>> nodes;
    Adjacency succ;
    std::vector<std::pair<std::size_t, std::size_t>> accepting_edges;
    auto intern = [&](std::size_t q, std::size_t i) {
        auto [it, fresh] = id.try_emplace({q, i}, nodes.size());
        if (fresh) {
            nodes.emplace_back(q, i);
            succ.emplace_back();
        }
        return std::pair{it->second, fresh};
    };
    std::vector<std::size_t> todo{intern(a.initial, 0).first};
    while (!todo.empty()) {
        const auto v = todo.back();
        todo.pop_back();
        const auto [q, i] = nodes[v];
        for (const auto* t : a.successors(q, word[i])) {
            auto [u, fresh] = intern(t->target, next_pos(i));
            succ[v].push_back(u);
            if (t->accepting) accepting_edges.emplace_back(v, u);
            if (fresh) todo.push_back(u);
        }
    }

    LassoSearch out;
    out.explored = nodes.size();
    const auto scc = strongly_connected_components(succ);
    out.accepted = std::any_of(accepting_edges.begin(), accepting_edges.end(), [&](const auto& e) {
        return scc.component[e.first] == scc.component[e.second];
    });
    return out;
}

bool accepts_lasso(const Nba& a, const LassoWord& w) { return lasso_search(a, w).accepted; }

Nba complete_with_trap(const Nba& a) {
    if (is_complete(a)) return a;
    Nba out = a;
    const std::size_t trap = out.num_states++;
    for (std::size_t q = 0; q < out.num_states; ++q)
        for (std::size_t s = 0; s < out.alphabet.size(); ++s)
            if (q == trap || a.successors(q, s).empty()) out.transitions.push_back({q, s, trap, false});
    return out;
}

}  // namespace omega
