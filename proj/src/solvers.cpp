#include "omega/solvers.hpp"
#include "omega/error.hpp"
#include "omega/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace omega {
namespace {

using Eigen::Index;
using Eigen::VectorXd;

double expected_reward(const std::vector<Branch>& bs) {
    double r = 0.0;
    for (const auto& b : bs) r += b.prob * b.reward;
    return r;
}

VectorXd zeros(const AugmentedModel& m) { return VectorXd::Zero(static_cast<Index>(m.num_states())); }

// Nodes that, under `f`, reach a payoff-earning choice with positive probability.
std::vector<bool> earning_states(const AugmentedModel& m, const Strategy& f) {
    const std::size_t n = m.num_product_states();
    Adjacency succ(m.num_states());
    std::vector<bool> earns(m.num_states(), false);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& bs = m.branches[v][f.choice[v]];
        earns[v] = expected_reward(bs) > 0.0;
        for (const auto& b : bs)
            if (b.prob > 0.0 && b.continuation > 0.0) succ[v].push_back(b.target);
    }
    auto out = backward_reachable(succ, earns);
    if (m.target) out[*m.target] = false;
    return out;
}

ValueVector make_value(const AugmentedModel& m, VectorXd values, double residual, std::size_t iterations) {
    ValueVector out;
    out.values = std::move(values);
    out.mode = m.mode;
    out.zeta = m.zeta;
    out.residual = residual;
    out.iterations = iterations;
    return out;
}

}  // namespace

double choice_value(const AugmentedModel& m, std::size_t v, std::size_t c, const VectorXd& values) {
    double acc = 0.0;
    for (const auto& b : m.branches[v][c])
        acc += b.prob * (b.reward + b.continuation * values[static_cast<Index>(b.target)]);
    return acc;
}

VectorXd bellman_update(const AugmentedModel& m, const VectorXd& values) {
    VectorXd out = zeros(m);
    for (std::size_t v = 0; v < m.num_product_states(); ++v) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < m.branches[v].size(); ++c) best = std::max(best, choice_value(m, v, c, values));
        out[static_cast<Index>(v)] = m.branches[v].empty() ? 0.0 : best;
    }
    return out;
}

VectorXd policy_update(const AugmentedModel& m, const Strategy& f, const VectorXd& values) {
    VectorXd out = zeros(m);
    for (std::size_t v = 0; v < m.num_product_states(); ++v)
        out[static_cast<Index>(v)] = choice_value(m, v, f.choice[v], values);
    return out;
}

Solution solve_optimal(const AugmentedModel& m, const SolveOptions& opts) {
    if (!(opts.tol > 0.0)) throw SemanticError(SemanticError::Kind::InvalidArgument, "tolerance must be positive");
    VectorXd v = zeros(m);
    double residual = std::numeric_limits<double>::infinity();
    std::size_t it = 0;
    while (residual > opts.tol) {
        if (it == opts.max_iter) throw ConvergenceError(residual, it);
        VectorXd next = bellman_update(m, v);
        residual = (next - v).lpNorm<Eigen::Infinity>();
        v = std::move(next);
        ++it;
        if (opts.observer) opts.observer(it, v);
    }

    Solution out;
    out.value = make_value(m, v, residual, it);
    out.strategy = greedy_policy(m, out.value, opts.tie_tolerance);
    if (!opts.polish) return out;

    ValueVector exact = evaluate_policy(m, out.strategy, opts);
    const VectorXd improved = bellman_update(m, exact.values);
    const double slack = opts.tie_tolerance * std::max(1.0, m.value_bound());
    const bool dominates = ((exact.values - v).array() >= -slack).all();
    const double bellman_gap = (improved - exact.values).lpNorm<Eigen::Infinity>();
    if (dominates && bellman_gap <= slack) {
        exact.residual = bellman_gap;
        exact.iterations = it;
        out.value = std::move(exact);
    }
    return out;
}

ValueVector evaluate_policy(const AugmentedModel& m, const Strategy& f, const SolveOptions& opts) {
    if (!is_valid_strategy(*m.base, f))
        throw SemanticError(SemanticError::Kind::InvalidArgument, "strategy does not match the model");
    const auto earning = earning_states(m, f);
    std::vector<Index> local(m.num_states(), -1);
    std::vector<std::size_t> global;
    for (std::size_t v = 0; v < m.num_product_states(); ++v) {
        if (!earning[v]) continue;
        local[v] = static_cast<Index>(global.size());
        global.push_back(v);
    }
    const auto k = static_cast<Index>(global.size());

    VectorXd values = zeros(m);
    if (global.size() <= opts.dense_limit) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k, k);
        VectorXd rhs(k);
        for (Index i = 0; i < k; ++i) {
            const auto& bs = m.branches[global[static_cast<std::size_t>(i)]][f.choice[global[static_cast<std::size_t>(i)]]];
            rhs[i] = expected_reward(bs);
            for (const auto& b : bs) {
                const Index j = local[b.target];
                if (j >= 0) a(i, j) -= b.prob * b.continuation;
            }
        }
        const VectorXd x = a.partialPivLu().solve(rhs);
        if (!x.allFinite()) throw Error("policy evaluation: singular system");
        for (Index i = 0; i < k; ++i) values[static_cast<Index>(global[static_cast<std::size_t>(i)])] = x[i];
        const double residual = (policy_update(m, f, values) - values).lpNorm<Eigen::Infinity>();
        return make_value(m, std::move(values), residual, 0);
    }

    double residual = std::numeric_limits<double>::infinity();
    std::size_t it = 0;
    while (residual > opts.tol) {
        if (it == opts.max_iter) throw ConvergenceError(residual, it);
        VectorXd next = policy_update(m, f, values);
        residual = (next - values).lpNorm<Eigen::Infinity>();
        values = std::move(next);
        ++it;
    }
    return make_value(m, std::move(values), residual, it);
}

Strategy greedy_policy(const AugmentedModel& m, const ValueVector& value, double tie_tolerance) {
    const std::size_t n = m.num_product_states();
    std::vector<std::vector<std::size_t>> ties(n);
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t k = m.branches[v].size();
        std::vector<double> q(k);
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) best = std::max(best, q[c] = choice_value(m, v, c, value.values));
        const double slack = tie_tolerance * std::max(1.0, std::abs(best));
        for (std::size_t c = 0; c < k; ++c)
            if (q[c] >= best - slack) ties[v].push_back(c);
    }

    // Layered assignment: first states whose tied choices earn payoff
    // directly, then states with a tied choice leading into assigned states.
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    Strategy f;
    f.choice.assign(n, unset);
    std::deque<std::size_t> frontier;
    for (std::size_t v = 0; v < n; ++v) {
        for (auto c : ties[v]) {
            if (expected_reward(m.branches[v][c]) > 0.0) {
                f.choice[v] = c;
                frontier.push_back(v);
                break;
            }
        }
    }
    Adjacency pred(n);
    for (std::size_t v = 0; v < n; ++v)
        for (auto c : ties[v])
            for (const auto& b : m.branches[v][c])
                if (b.prob > 0.0 && b.target < n) pred[b.target].push_back(v);
    while (!frontier.empty()) {
        const auto w = frontier.front();
        frontier.pop_front();
        std::sort(pred[w].begin(), pred[w].end());
        for (auto v : pred[w]) {
            if (f.choice[v] != unset) continue;
            for (auto c : ties[v]) {
                const auto& bs = m.branches[v][c];
                const bool progresses = std::any_of(bs.begin(), bs.end(), [&](const Branch& b) {
                    return b.prob > 0.0 && b.target < n && f.choice[b.target] != unset;
                });
                if (progresses) {
                    f.choice[v] = c;
                    frontier.push_back(v);
                    break;
                }
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (f.choice[v] == unset) f.choice[v] = ties[v].empty() ? 0 : ties[v].front();
    return f;
}

}  // namespace omega
