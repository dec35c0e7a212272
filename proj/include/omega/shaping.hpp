#pragma once

#include "omega/mdp.hpp"
#include "omega/product.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace omega {

/// Payoff semantics on top of a product.
///  - ReachTarget:    accepting transitions divert to a stop state t with
///                    probability 1 - zeta; payoff 1 iff t is reached.
///  - TotalReward:    same transition structure; every accepting transition
///                    pays 1, whether or not it diverts to t.
///  - BiasedDiscount: the product itself; the (i+1)-th accepting transition
///                    pays zeta^i.
enum class Mode { ReachTarget, TotalReward, BiasedDiscount };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s);  ///< "reach" | "total" | "biased"

/// One outcome of a product choice after shaping. The value contribution of
/// a branch is prob * (reward + continuation * V(target)).
struct Branch {
    std::size_t target = 0;     ///< product state, or the model's stop state
    double prob = 0.0;
    double reward = 0.0;
    double continuation = 1.0;  ///< 0 into the stop state
    bool accepting = false;     ///< originates from an accepting transition
    bool stops = false;         ///< enters the stop state
    std::size_t symbol = 0;
};

struct AugmentedModel {
    std::shared_ptr<const ProductMdp> base;
    double zeta = 0.5;
    Mode mode = Mode::TotalReward;
    std::optional<std::size_t> target;  ///< stop state index (= base->num_states()) if present
    std::vector<std::vector<std::vector<Branch>>> branches;  ///< [state][choice][branch]

    /// Product states plus the stop state when present.
    std::size_t num_states() const { return base->num_states() + (target ? 1 : 0); }
    std::size_t num_product_states() const { return base->num_states(); }
    std::size_t initial() const { return base->initial; }
    /// Largest value any strategy can reach in this mode.
    double value_bound() const;
};

/// Builds the shaped model. ReachTarget and TotalReward share one transition
/// structure; BiasedDiscount keeps the product's. Throws SemanticError for
/// zeta outside (0, 1).
AugmentedModel augment(std::shared_ptr<const ProductMdp> p, double zeta, Mode mode);
AugmentedModel augment(const ProductMdp& p, double zeta, Mode mode);

/// Payoff of a finite run of `model`. Throws SemanticError if the run is not
/// supported by the model.
double run_payoff(const AugmentedModel& model, const RunRecord& r);

/// Closed form of the zeta-biased payoff for n accepting transitions.
double biased_payoff(double zeta, std::size_t n);

using PolicyFn = std::function<std::size_t(std::size_t state, Rng& rng)>;

/// Simulates one episode from the initial state until the stop state or
/// `max_steps` steps. States and actions in the record are product state and
/// choice indices.
RunRecord simulate_episode(const AugmentedModel& model, const PolicyFn& policy, std::size_t max_steps, Rng& rng);
RunRecord simulate_episode(const AugmentedModel& model, const Strategy& f, std::size_t max_steps, Rng& rng);

}  // namespace omega
