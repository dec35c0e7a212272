#include "omega/verify.hpp"
#include "omega/error.hpp"
#include "omega/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace omega {

Strategy random_strategy(const ProductMdp& p, Rng& rng) {
    Strategy f;
    f.choice.resize(p.num_states());
    for (std::size_t v = 0; v < p.num_states(); ++v)
        f.choice[v] = std::uniform_int_distribution<std::size_t>(0, p.choices[v].size() - 1)(rng);
    return f;
}

std::string strategy_id(const ProductMdp& p, const Strategy& f) {
    std::string out;
    for (std::size_t v = 0; v < p.num_states(); ++v) {
        if (v) out += ';';
        out += p.mdp_state_names[p.states[v].mdp_state] + "@" + std::to_string(p.states[v].automaton_state) + "=" +
               p.choice_name(v, f.choice[v]);
    }
    return out;
}

bool VerifyReport::pass() const {
    return std::all_of(records.begin(), records.end(), [](const ZetaRecord& r) { return r.pass(); });
}

VerifyReport verify(const ProductMdp& product, const VerifyOptions& opts) {
    auto p = std::make_shared<const ProductMdp>(product);
    VerifyReport report;
    report.lower_bound_only = !p->gfm_asserted;
    Rng rng(opts.seed);
    const auto n = static_cast<Eigen::Index>(p->num_states());

    for (double zeta : opts.zetas) {
        const auto reach = augment(p, zeta, Mode::ReachTarget);
        const auto total = augment(p, zeta, Mode::TotalReward);
        const auto biased = augment(p, zeta, Mode::BiasedDiscount);
        const double bound = 1.0 / (1.0 - zeta);

        ZetaRecord rec;
        rec.zeta = zeta;
        const auto opt_reach = solve_optimal(reach, opts.solve);
        const auto opt_total = solve_optimal(total, opts.solve);
        const auto opt_biased = solve_optimal(biased, opts.solve);
        rec.theorem3_max_error =
            (opt_total.value.values.head(n) - opt_biased.value.values.head(n)).lpNorm<Eigen::Infinity>();

        std::vector<Strategy> policies{opt_reach.strategy, opt_total.strategy};
        for (std::size_t i = 0; i < opts.random_policies; ++i) policies.push_back(random_strategy(*p, rng));
        rec.policies = policies.size();

        for (const auto& f : policies) {
            const Eigen::VectorXd pr = evaluate_policy(reach, f, opts.solve).values.head(n);
            const Eigen::VectorXd et = evaluate_policy(total, f, opts.solve).values.head(n);
            const Eigen::VectorXd eb = evaluate_policy(biased, f, opts.solve).values.head(n);
            const auto buchi = policy_buchi_probabilities(*p, f);

            rec.theorem2_identity_max_error =
                std::max(rec.theorem2_identity_max_error, (pr - (1.0 - zeta) * et).lpNorm<Eigen::Infinity>());
            rec.theorem3_max_error = std::max(rec.theorem3_max_error, (et - eb).lpNorm<Eigen::Infinity>());
            for (Eigen::Index v = 0; v < n; ++v) {
                if (et[v] < -opts.bound_tol || et[v] > bound + opts.bound_tol) ++rec.bound_violations;
                const bool sure = std::abs(buchi[v] - 1.0) <= opts.prob1_tol;
                if (sure != (std::abs(et[v] - bound) <= opts.prob1_tol)) ++rec.prob1_equivalence_failures;
                if (sure != (std::abs(pr[v] - 1.0) <= opts.prob1_tol)) ++rec.reach_prob1_failures;
            }
        }

        // Tail of the accepting count under the TotalReward-optimal strategy.
        std::vector<std::size_t> counts;
        counts.reserve(opts.tail_episodes);
        for (std::size_t e = 0; e < opts.tail_episodes; ++e)
            counts.push_back(simulate_episode(total, opt_total.strategy, opts.tail_max_steps, rng).accepting_continued());
        for (auto k : opts.tail_counts) {
            TailCheck t;
            t.n = k;
            const auto hits = std::count_if(counts.begin(), counts.end(), [&](std::size_t c) { return c >= k; });
            t.frequency = opts.tail_episodes ? static_cast<double>(hits) / static_cast<double>(opts.tail_episodes) : 0.0;
            const double pk = std::pow(zeta, static_cast<double>(k));
            t.bound = pk + 3.0 * std::sqrt(pk / static_cast<double>(std::max<std::size_t>(opts.tail_episodes, 1)));
            t.ok = t.frequency <= t.bound;
            rec.tail_bound_check.push_back(t);
        }

        rec.pass_identity = rec.theorem2_identity_max_error <= opts.identity_tol;
        rec.pass_bounds = rec.bound_violations == 0;
        rec.pass_prob1 = rec.prob1_equivalence_failures == 0 && rec.reach_prob1_failures == 0;
        rec.pass_theorem3 = rec.theorem3_max_error <= opts.theorem3_tol;
        rec.pass_tail = std::all_of(rec.tail_bound_check.begin(), rec.tail_bound_check.end(),
                                    [](const TailCheck& t) { return t.ok; });
        report.records.push_back(std::move(rec));
    }
    return report;
}

ThresholdReport sweep(const ProductMdp& product, const std::vector<double>& grid, double tol, const SolveOptions& solve) {
    if (!std::is_sorted(grid.begin(), grid.end()) || std::adjacent_find(grid.begin(), grid.end()) != grid.end())
        throw SemanticError(SemanticError::Kind::InvalidArgument, "zeta grid must be strictly ascending");
    auto p = std::make_shared<const ProductMdp>(product);
    const double opt = buchi_value(*p).values[static_cast<Eigen::Index>(p->initial)];
    ThresholdReport out;
    for (double zeta : grid) {
        const auto sol = solve_optimal(augment(p, zeta, Mode::TotalReward), solve);
        SweepPoint pt;
        pt.zeta = zeta;
        pt.policy = sol.strategy;
        pt.policy_id = strategy_id(*p, sol.strategy);
        pt.psat_policy = policy_buchi_probability(*p, sol.strategy);
        pt.psat_opt = opt;
        pt.is_optimal = std::abs(pt.psat_policy - opt) <= tol;
        out.points.push_back(std::move(pt));
    }
    for (auto it = out.points.rbegin(); it != out.points.rend() && it->is_optimal; ++it) out.empirical_zeta0 = it->zeta;
    return out;
}

}  // namespace omega
