#pragma once

#include "omega/product.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace omega {

/// Closed, strongly connected sub-MDP. `choices[i]` are the retained choice
/// indices of `states[i]`; every retained choice keeps all its mass inside.
struct EndComponent {
    std::vector<std::size_t> states;  ///< sorted
    std::vector<std::vector<std::size_t>> choices;

    bool contains(std::size_t v) const;
};

/// Maximal end components by iterated SCC refinement. Components are sorted
/// by their smallest state.
std::vector<EndComponent> mec_decomposition(const ProductMdp& p);

/// An end component is accepting if a retained choice has an accepting edge.
bool is_accepting(const ProductMdp& p, const EndComponent& ec);

struct BuchiSolution {
    Eigen::VectorXd values;  ///< max probability of passing accepting transitions infinitely often
    Strategy strategy;       ///< positional; attains `values`
    std::vector<EndComponent> mecs;
    std::vector<bool> accepting;  ///< per MEC
    bool lower_bound_only = false;  ///< the automaton was not asserted good-for-MDPs
};

/// Maximal Buchi satisfaction probability on the product: the maximal
/// probability of reaching the union of accepting MECs. Inside an accepting
/// MEC the strategy steers positionally towards one accepting choice.
BuchiSolution buchi_value(const ProductMdp& p);

/// Per-state probability, under `f`, of passing accepting transitions
/// infinitely often (absorption into accepting bottom SCCs).
Eigen::VectorXd policy_buchi_probabilities(const ProductMdp& p, const Strategy& f);
double policy_buchi_probability(const ProductMdp& p, const Strategy& f);

}  // namespace omega
