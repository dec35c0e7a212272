#pragma once

#include "omega/product.hpp"
#include "omega/shaping.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>

namespace omega {

struct SolveOptions {
    double tol = 1e-10;
    std::size_t max_iter = 1'000'000;
    /// Policy evaluation switches from a dense LU solve to iteration above
    /// this many states.
    std::size_t dense_limit = 10'000;
    /// Choices within tie_tolerance * max(1, |best|) of the best are ties.
    double tie_tolerance = 1e-8;
    /// Replace the value-iteration estimate by the exact value of the
    /// extracted strategy when that strategy is Bellman-consistent.
    bool polish = true;
    /// Called with every value-iteration iterate (iteration index from 1).
    std::function<void(std::size_t, const Eigen::VectorXd&)> observer;
};

/// Values over the model's states; the stop state, when present, is last and
/// holds 0.
struct ValueVector {
    Eigen::VectorXd values;
    Mode mode = Mode::TotalReward;
    double zeta = 0.5;
    double residual = 0.0;
    std::size_t iterations = 0;

    double operator[](std::size_t i) const { return values[static_cast<Eigen::Index>(i)]; }
};

struct Solution {
    ValueVector value;
    Strategy strategy;
};

/// Expected one-step payoff plus continuation value of choice c in state v.
double choice_value(const AugmentedModel& m, std::size_t v, std::size_t c, const Eigen::VectorXd& values);

/// Optimal Bellman operator: max over choices of `choice_value`.
Eigen::VectorXd bellman_update(const AugmentedModel& m, const Eigen::VectorXd& values);

/// Bellman operator of a fixed strategy.
Eigen::VectorXd policy_update(const AugmentedModel& m, const Strategy& f, const Eigen::VectorXd& values);

/// Value iteration from the zero vector (least fixpoint) followed by greedy
/// extraction. Throws ConvergenceError after max_iter iterations.
Solution solve_optimal(const AugmentedModel& m, const SolveOptions& opts = {});

/// Exact value of a positional strategy: states that cannot earn payoff are
/// fixed at 0, the rest solve (I - P) v = r by LU with partial pivoting.
ValueVector evaluate_policy(const AugmentedModel& m, const Strategy& f, const SolveOptions& opts = {});

/// Argmax choice per state, lowest index among ties, with one refinement:
/// among tied choices the strategy prefers those that make progress towards
/// a payoff-earning choice, so that ties never trap it in a payoff-free cycle.
Strategy greedy_policy(const AugmentedModel& m, const ValueVector& v, double tie_tolerance = 1e-8);

}  // namespace omega
