#include "omega/learn.hpp"
#include "omega/error.hpp"

#include <algorithm>

namespace omega {

double LearnConfig::epsilon(std::size_t episode) const {
    const double horizon = epsilon_decay_fraction * static_cast<double>(episodes);
    if (horizon <= 0.0 || static_cast<double>(episode) >= horizon) return epsilon_final;
    const double t = static_cast<double>(episode) / horizon;
    return epsilon0 + t * (epsilon_final - epsilon0);
}

void LearnConfig::check() const {
    auto bad = [](const char* what) { throw SemanticError(SemanticError::Kind::InvalidArgument, what); };
    if (!(zeta > 0.0 && zeta < 1.0)) bad("zeta must lie in (0, 1)");
    if (episodes == 0) bad("episodes must be positive");
    if (max_steps == 0) bad("max_steps must be positive");
    if (!(alpha0 > 0.0 && alpha0 <= 1.0)) bad("alpha0 must lie in (0, 1]");
    if (!(alpha_visits > 0.0)) bad("alpha decay scale must be positive");
    if (!(epsilon0 >= 0.0 && epsilon0 <= 1.0) || !(epsilon_final >= 0.0 && epsilon_final <= 1.0))
        bad("exploration rates must lie in [0, 1]");
}

QTable::QTable(const AugmentedModel& m, double init) {
    offsets_.push_back(0);
    for (std::size_t v = 0; v < m.num_product_states(); ++v) offsets_.push_back(offsets_.back() + m.branches[v].size());
    q_ = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(offsets_.back()), init);
    visits_.assign(offsets_.back(), 0);
}

double QTable::max(std::size_t v) const { return (*this)(v, argmax(v)); }

std::size_t QTable::argmax(std::size_t v) const {
    std::size_t best = 0;
    for (std::size_t c = 1; c < num_choices(v); ++c)
        if ((*this)(v, c) > (*this)(v, best)) best = c;
    return best;
}

bool operator==(const QTable& a, const QTable& b) {
    return a.offsets_ == b.offsets_ && a.visits_ == b.visits_ && a.q_.size() == b.q_.size() &&
           std::equal(a.q_.begin(), a.q_.end(), b.q_.begin());
}

RunRecord run_episode(const AugmentedModel& m, QTable& qt, const LearnConfig& cfg, std::size_t episode, Rng& rng) {
    const double eps = cfg.epsilon(episode);
    const double hi = m.value_bound();
    const PolicyFn behave = [&](std::size_t v, Rng& g) {
        const std::size_t k = qt.num_choices(v);
        if (eps > 0.0 && uniform01(g) < eps) return std::uniform_int_distribution<std::size_t>(0, k - 1)(g);
        return qt.argmax(v);
    };

    RunRecord r;
    std::size_t v = m.initial();
    r.states.push_back(v);
    std::vector<double> w;
    for (std::size_t step = 0; step < cfg.max_steps; ++step) {
        const std::size_t c = behave(v, rng);
        const auto& bs = m.branches[v][c];
        w.clear();
        for (const auto& b : bs) w.push_back(b.prob);
        const Branch& b = bs[sample_index(w, rng)];

        const double target = b.stops ? b.reward : b.reward + b.continuation * qt.max(b.target);
        auto& n = qt.visits(v, c);
        const double alpha = cfg.alpha0 / (1.0 + static_cast<double>(n) / cfg.alpha_visits);
        ++n;
        double& q = qt(v, c);
        q = std::clamp(q + alpha * (target - q), 0.0, hi);

        r.actions.push_back(c);
        r.labels.push_back(b.symbol);
        r.accepting.push_back(b.accepting);
        r.states.push_back(b.target);
        if (b.accepting) ++r.accepting_count;
        if (b.stops) {
            r.reached_target = true;
            break;
        }
        v = b.target;
    }
    return r;
}

TrainResult train(const AugmentedModel& model, QTable init, const LearnConfig& cfg) {
    cfg.check();
    TrainResult out{model, std::move(init), {}, {}};
    Rng rng(cfg.seed);
    out.curve.reserve(cfg.episodes);
    for (std::size_t e = 0; e < cfg.episodes; ++e) {
        const auto r = run_episode(out.model, out.table, cfg, e, rng);
        out.curve.push_back({e, run_payoff(out.model, r), cfg.epsilon(e)});
    }
    out.policy.choice.resize(out.model.num_product_states());
    for (std::size_t v = 0; v < out.policy.choice.size(); ++v) out.policy.choice[v] = out.table.argmax(v);
    return out;
}

TrainResult train(const ProductMdp& p, const LearnConfig& cfg) {
    cfg.check();
    const Mode mode = cfg.mode == Mode::BiasedDiscount ? Mode::TotalReward : cfg.mode;
    auto model = augment(p, cfg.zeta, mode);
    QTable init(model, cfg.optimistic ? model.value_bound() : 0.0);
    return train(model, std::move(init), cfg);
}

TrainResult train(const Mdp& m, const Nba& a, const LearnConfig& cfg) { return train(build_product(m, a), cfg); }

}  // namespace omega
