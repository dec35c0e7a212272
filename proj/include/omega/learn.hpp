#pragma once

#include "omega/automata.hpp"
#include "omega/mdp.hpp"
#include "omega/product.hpp"
#include "omega/shaping.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace omega {

struct LearnConfig {
    double zeta = 0.9;
    Mode mode = Mode::TotalReward;  ///< ReachTarget rewards only the arrival at t
    std::size_t episodes = 50'000;
    std::size_t max_steps = 1000;
    double alpha0 = 1.0;
    double alpha_visits = 1000.0;     ///< alpha = alpha0 / (1 + visits / alpha_visits)
    double epsilon0 = 0.3;
    double epsilon_final = 0.01;
    double epsilon_decay_fraction = 0.5;  ///< linear decay over this share of the episodes
    bool optimistic = false;              ///< initialize q at the value bound instead of 0
    std::uint64_t seed = 0;

    double epsilon(std::size_t episode) const;
    void check() const;  ///< throws SemanticError
};

/// Tabular Q-values over (product state, choice), stored flat.
class QTable {
public:
    QTable() = default;
    QTable(const AugmentedModel& m, double init);

    double& operator()(std::size_t v, std::size_t c) { return q_[offset(v, c)]; }
    double operator()(std::size_t v, std::size_t c) const { return q_[offset(v, c)]; }
    std::uint64_t& visits(std::size_t v, std::size_t c) { return visits_[static_cast<std::size_t>(offset(v, c))]; }
    std::uint64_t visits(std::size_t v, std::size_t c) const { return visits_[static_cast<std::size_t>(offset(v, c))]; }

    std::size_t num_states() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t num_choices(std::size_t v) const { return offsets_[v + 1] - offsets_[v]; }
    double max(std::size_t v) const;
    std::size_t argmax(std::size_t v) const;  ///< lowest index among ties

    const Eigen::VectorXd& values() const { return q_; }
    friend bool operator==(const QTable& a, const QTable& b);

private:
    Eigen::Index offset(std::size_t v, std::size_t c) const { return static_cast<Eigen::Index>(offsets_[v] + c); }

    std::vector<std::size_t> offsets_;
    Eigen::VectorXd q_;
    std::vector<std::uint64_t> visits_;
};

/// One epsilon-greedy Q-learning episode on a shaped model from the initial
/// state, ending at the stop state or after cfg.max_steps steps. Updates
/// bootstrap on every step except the one entering the stop state; the
/// update target r + c * max q(s') uses the branch's continuation c, which is
/// 1 in the stop-state models. Estimates are kept inside [0, value_bound].
RunRecord run_episode(const AugmentedModel& m, QTable& qt, const LearnConfig& cfg, std::size_t episode, Rng& rng);

struct CurvePoint {
    std::size_t episode;
    double total_reward;
    double epsilon;
};

struct TrainResult {
    AugmentedModel model;
    QTable table;
    Strategy policy;
    std::vector<CurvePoint> curve;
};

/// Builds the product and its shaped model and runs cfg.episodes episodes.
/// BiasedDiscount is learned through the stop-state simulation (TotalReward),
/// which has the same expected payoff.
TrainResult train(const Mdp& m, const Nba& a, const LearnConfig& cfg);
TrainResult train(const ProductMdp& p, const LearnConfig& cfg);

/// Trains starting from a given table, e.g. for fixpoint checks.
TrainResult train(const AugmentedModel& model, QTable init, const LearnConfig& cfg);

}  // namespace omega
