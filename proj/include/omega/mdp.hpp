#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace omega {

/// Every stochastic operation takes its generator explicitly.
using Rng = std::mt19937_64;

/// Draws u in [0, 1) from `rng`.
double uniform01(Rng& rng);

/// Inverse-CDF sampling over `weights` (nonnegative). Entries with weight 0
/// are never returned.
template <typename Weights>
std::size_t sample_index(const Weights& weights, Rng& rng) {
    const double u = uniform01(rng);
    double acc = 0.0;
    std::size_t last = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] > 0.0)) continue;
        acc += weights[i];
        last = i;
        if (u < acc) return i;
    }
    return last;  // rounding: u landed above a mass that sums to 1 - ulp
}

struct MdpEdge {
    std::size_t target = 0;
    double prob = 0.0;
    std::optional<std::size_t> label;  ///< symbol index; required iff prob > 0
};

struct MdpChoice {
    std::size_t action = 0;
    std::vector<MdpEdge> edges;
};

/// Finite MDP whose transitions (s, a, s') carry symbols of a shared
/// alphabet. `choices[s]` lists the available actions of s in action-index
/// order; edges keep input order.
struct Mdp {
    std::vector<std::string> state_names;
    std::vector<std::string> action_names;
    std::vector<std::string> alphabet;
    std::size_t initial = 0;
    std::vector<std::vector<MdpChoice>> choices;

    std::size_t num_states() const { return state_names.size(); }
    const MdpChoice* find_choice(std::size_t state, std::size_t action) const;
};

/// Mass tolerance for distributions read from input. No renormalization.
inline constexpr double kMassTolerance = 1e-12;

/// One human-readable entry per invariant violation; empty iff valid.
std::vector<std::string> validate(const Mdp& m);

/// Throws ValidationError if `validate` reports anything.
void require_valid(const Mdp& m);

struct Step {
    std::size_t successor;
    std::size_t symbol;
};

/// Samples a successor of (s, a) and returns it with its label.
/// Throws SemanticError if `a` is not available in `s`.
Step sample_step(const Mdp& m, std::size_t s, std::size_t a, Rng& rng);

inline constexpr std::size_t kUnboundedCount = std::numeric_limits<std::size_t>::max();

/// A finite run prefix, as recorded by simulation. States and actions index
/// whichever model produced the run (MDP or product).
struct RunRecord {
    std::vector<std::size_t> states;   ///< length steps + 1
    std::vector<std::size_t> actions;  ///< length steps
    std::vector<std::size_t> labels;   ///< length steps
    std::vector<bool> accepting;       ///< per step: an accepting transition was taken
    bool reached_target = false;       ///< run stopped in the target
    /// Number of accepting transitions; kUnboundedCount marks a run
    /// known to take infinitely many.
    std::size_t accepting_count = 0;

    std::size_t steps() const { return actions.size(); }
    /// Accepting transitions that did not divert to the target.
    std::size_t accepting_continued() const {
        return accepting_count - (reached_target && accepting_count > 0 ? 1 : 0);
    }
};

}  // namespace omega
