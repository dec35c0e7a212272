#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace omega {

/// One element of the transition relation. `accepting` marks membership in
/// the acceptance set, which is a subset of the transitions.
struct NbaTransition {
    std::size_t source = 0;
    std::size_t symbol = 0;
    std::size_t target = 0;
    bool accepting = false;

    friend bool operator==(const NbaTransition&, const NbaTransition&) = default;
};

/// Nondeterministic Buchi automaton over a flat alphabet with
/// transition-based acceptance.
///
/// Immutable after construction in practice; the members are public so
/// builders and tests can assemble instances directly. Call
/// `check_invariants` after hand assembly.
struct Nba {
    std::vector<std::string> alphabet;
    std::size_t num_states = 0;
    std::size_t initial = 0;
    std::vector<NbaTransition> transitions;
    /// True when the automaton may be trusted to be good-for-MDPs. Values
    /// computed through a product with a non-GFM automaton are lower bounds.
    bool gfm_asserted = false;

    std::size_t symbol_index(std::string_view name) const;  ///< throws SemanticError
    std::size_t num_accepting() const;

    /// Successor transitions of (state, symbol), in transition order.
    std::vector<const NbaTransition*> successors(std::size_t state, std::size_t symbol) const;

    /// Throws SemanticError on index out of range.
    void check_invariants() const;
};

/// Ultimately periodic word prefix . cycle^omega, given as symbol names.
struct LassoWord {
    std::vector<std::string> prefix;
    std::vector<std::string> cycle;
};

bool is_deterministic(const Nba& a);
bool is_complete(const Nba& a);

struct LassoSearch {
    bool accepted = false;
    std::size_t explored = 0;  ///< (state, position) nodes visited
};

/// Decides whether some run on the lasso word passes an accepting transition
/// infinitely often. Searches the finite graph of (automaton state, word
/// position) pairs for a reachable cycle through an accepting edge.
LassoSearch lasso_search(const Nba& a, const LassoWord& w);
bool accepts_lasso(const Nba& a, const LassoWord& w);

/// Adds a non-accepting trap state absorbing every missing (state, symbol)
/// pair. Returns `a` unchanged if it is already complete.
Nba complete_with_trap(const Nba& a);

}  // namespace omega
