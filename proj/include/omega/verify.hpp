#pragma once

#include "omega/product.hpp"
#include "omega/solvers.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace omega {

/// Uniformly random positional strategy.
Strategy random_strategy(const ProductMdp& p, Rng& rng);

/// Compact strategy id without commas, e.g. "s0@0=a/0;sA@0=a/0".
std::string strategy_id(const ProductMdp& p, const Strategy& f);

struct VerifyOptions {
    std::vector<double> zetas{0.5, 0.9};
    std::size_t random_policies = 50;
    std::uint64_t seed = 0;
    double identity_tol = 1e-8;
    double bound_tol = 1e-9;
    double prob1_tol = 1e-6;
    double theorem3_tol = 1e-12;
    std::size_t tail_episodes = 10'000;
    std::vector<std::size_t> tail_counts{1, 5, 10};
    std::size_t tail_max_steps = 1000;  // truncation only lowers the observed frequencies
    SolveOptions solve;
};

struct TailCheck {
    std::size_t n = 0;
    double frequency = 0.0;  ///< share of episodes with >= n non-stopping accepting transitions
    double bound = 0.0;      ///< zeta^n + 3 sqrt(zeta^n / episodes)
    bool ok = false;
};

/// Checks for one zeta over the optimal strategies and the sampled ones.
struct ZetaRecord {
    double zeta = 0.0;
    std::size_t policies = 0;
    /// max |PReach(f) - (1 - zeta) ETotal(f)| over strategies and states
    double theorem2_identity_max_error = 0.0;
    /// ETotal values outside [0, 1/(1 - zeta)] (with tolerance)
    std::size_t bound_violations = 0;
    /// states where "Buchi probability 1" and "ETotal = 1/(1 - zeta)" disagree
    std::size_t prob1_equivalence_failures = 0;
    /// states where "Buchi probability 1" and "PReach = 1" disagree
    std::size_t reach_prob1_failures = 0;
    /// max |ETotal - EDisct| over per-strategy and optimal values
    double theorem3_max_error = 0.0;
    std::vector<TailCheck> tail_bound_check;

    bool pass_identity = false;
    bool pass_bounds = false;
    bool pass_prob1 = false;
    bool pass_theorem3 = false;
    bool pass_tail = false;
    bool pass() const { return pass_identity && pass_bounds && pass_prob1 && pass_theorem3 && pass_tail; }
};

struct VerifyReport {
    std::vector<ZetaRecord> records;
    bool lower_bound_only = false;
    bool pass() const;
};

/// For each zeta: evaluates the ReachTarget- and TotalReward-optimal
/// strategies plus `random_policies` sampled ones in all three modes and
/// against the Buchi oracle; then runs the Monte Carlo tail check with the
/// TotalReward-optimal strategy.
VerifyReport verify(const ProductMdp& p, const VerifyOptions& opts);

struct SweepPoint {
    double zeta = 0.0;
    Strategy policy;      ///< greedy TotalReward-optimal strategy
    std::string policy_id;
    double psat_policy = 0.0;  ///< its Buchi probability at the initial state
    double psat_opt = 0.0;     ///< optimal Buchi probability at the initial state
    bool is_optimal = false;
};

struct ThresholdReport {
    std::vector<SweepPoint> points;
    /// Smallest grid zeta from which every larger grid point is optimal.
    std::optional<double> empirical_zeta0;
};

/// `grid` must be ascending inside (0, 1).
ThresholdReport sweep(const ProductMdp& p, const std::vector<double>& grid, double tol = 1e-9,
                      const SolveOptions& solve = {});

}  // namespace omega
