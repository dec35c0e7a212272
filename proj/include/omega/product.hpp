#pragma once

#include "omega/automata.hpp"
#include "omega/mdp.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace omega {

struct ProductState {
    std::size_t mdp_state = 0;
    std::size_t automaton_state = 0;
    friend bool operator==(const ProductState&, const ProductState&) = default;
};

struct ProductEdge {
    std::size_t target = 0;      ///< product state index
    double prob = 0.0;
    bool accepting = false;      ///< the transition belongs to the lifted acceptance set
    std::size_t symbol = 0;      ///< MDP label of the underlying (s, a, s')
};

/// An action pair of the product: an MDP action together with the automaton
/// successor chosen for each symbol that the action's successors can emit.
/// When every successor carries the same symbol this is the pair (a, q').
struct ProductChoice {
    std::size_t action = 0;
    std::vector<std::pair<std::size_t, std::size_t>> resolution;  ///< (symbol, q') sorted by symbol
    std::vector<ProductEdge> edges;

    std::optional<std::size_t> automaton_successor(std::size_t symbol) const;
};

/// Product of a labelled MDP with a Buchi automaton. State 0 is (s0, q0).
struct ProductMdp {
    std::vector<ProductState> states;
    std::size_t initial = 0;
    std::vector<std::vector<ProductChoice>> choices;

    // Back references for reporting.
    std::vector<std::string> mdp_state_names;
    std::vector<std::string> action_names;
    std::vector<std::string> alphabet;
    std::size_t automaton_states = 0;
    bool gfm_asserted = true;

    std::size_t num_states() const { return states.size(); }
    std::optional<std::size_t> index_of(ProductState s) const;
    std::string state_name(std::size_t p) const;
    std::string choice_name(std::size_t p, std::size_t c) const;
};

struct ProductOptions {
    bool reachable_only = true;
};

/// Builds M x A. The MDP must validate and share the automaton's alphabet
/// (as a set); the automaton must be complete.
/// Throws SemanticError (AlphabetMismatch, IncompleteAutomaton) or
/// ValidationError.
ProductMdp build_product(const Mdp& m, const Nba& a, const ProductOptions& opts = {});

/// Positional pure strategy: one choice index per product state.
struct Strategy {
    std::vector<std::size_t> choice;

    friend bool operator==(const Strategy&, const Strategy&) = default;
};

bool is_valid_strategy(const ProductMdp& p, const Strategy& f);

/// Finite-memory controller for the MDP whose memory is the automaton state.
/// In (s, q) it plays `action`, and after observing the label of the taken
/// transition moves its memory to `update[symbol]`.
struct ControllerRule {
    std::size_t action = 0;
    std::map<std::size_t, std::size_t> update;  ///< symbol -> next memory
};

struct FiniteStateController {
    std::size_t memory_states = 0;
    std::size_t initial_memory = 0;
    std::map<std::pair<std::size_t, std::size_t>, ControllerRule> rules;  ///< keyed by (mdp state, memory)

    const ControllerRule* rule(std::size_t mdp_state, std::size_t memory) const;
};

FiniteStateController project_strategy(const ProductMdp& p, const Strategy& f);

/// Recomposes a controller with the product's automaton component. Throws
/// SemanticError if some product state has no matching choice.
Strategy recompose(const ProductMdp& p, const FiniteStateController& c);

}  // namespace omega
