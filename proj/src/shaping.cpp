#include "omega/shaping.hpp"
#include "omega/error.hpp"

#include <cmath>

namespace omega {

std::string_view to_string(Mode m) {
    switch (m) {
    case Mode::ReachTarget: return "reach";
    case Mode::TotalReward: return "total";
    case Mode::BiasedDiscount: return "biased";
    }
    return "?";
}

Mode parse_mode(std::string_view s) {
    if (s == "reach") return Mode::ReachTarget;
    if (s == "total") return Mode::TotalReward;
    if (s == "biased") return Mode::BiasedDiscount;
    throw SemanticError(SemanticError::Kind::InvalidArgument, "unknown mode '" + std::string(s) + "'");
}

double AugmentedModel::value_bound() const { return mode == Mode::ReachTarget ? 1.0 : 1.0 / (1.0 - zeta); }

AugmentedModel augment(std::shared_ptr<const ProductMdp> p, double zeta, Mode mode) {
    if (!(zeta > 0.0 && zeta < 1.0))
        throw SemanticError(SemanticError::Kind::InvalidArgument, "zeta must lie in the open interval (0, 1)");
    AugmentedModel out;
    out.zeta = zeta;
    out.mode = mode;
    const std::size_t n = p->num_states();
    if (mode != Mode::BiasedDiscount) out.target = n;
    out.branches.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (const auto& ch : p->choices[v]) {
            auto& bs = out.branches[v].emplace_back();
            for (const auto& e : ch.edges) {
                if (mode == Mode::BiasedDiscount) {
                    bs.push_back({e.target, e.prob, e.accepting ? 1.0 : 0.0, e.accepting ? zeta : 1.0, e.accepting,
                                  false, e.symbol});
                    continue;
                }
                if (!e.accepting) {
                    bs.push_back({e.target, e.prob, 0.0, 1.0, false, false, e.symbol});
                    continue;
                }
                const double pay = mode == Mode::TotalReward ? 1.0 : 0.0;
                bs.push_back({e.target, zeta * e.prob, pay, 1.0, true, false, e.symbol});
                bs.push_back({n, (1.0 - zeta) * e.prob, 1.0, 0.0, true, true, e.symbol});
            }
        }
    }
    out.base = std::move(p);
    return out;
}

AugmentedModel augment(const ProductMdp& p, double zeta, Mode mode) {
    return augment(std::make_shared<const ProductMdp>(p), zeta, mode);
}

double biased_payoff(double zeta, std::size_t n) {
    if (n == kUnboundedCount) return 1.0 / (1.0 - zeta);
    return (1.0 - std::pow(zeta, static_cast<double>(n))) / (1.0 - zeta);
}

double run_payoff(const AugmentedModel& model, const RunRecord& r) {
    const auto bad = [](const char* why) {
        return SemanticError(SemanticError::Kind::InvalidArgument, std::string("run not supported by model: ") + why);
    };
    if (r.states.size() != r.actions.size() + 1 || r.accepting.size() != r.actions.size())
        throw bad("inconsistent record lengths");
    if (r.states.empty() || r.states.front() != model.initial()) throw bad("does not start in the initial state");
    std::size_t counted = 0;
    for (std::size_t i = 0; i < r.steps(); ++i) {
        const auto v = r.states[i], c = r.actions[i], w = r.states[i + 1];
        if (v >= model.num_product_states() || c >= model.branches[v].size()) throw bad("unknown state or choice");
        bool found = false;
        for (const auto& b : model.branches[v][c])
            if (b.target == w && b.prob > 0.0 && b.accepting == r.accepting[i]) found = true;
        if (!found) throw bad("transition has probability 0");
        if (model.target && w == *model.target && i + 1 != r.steps()) throw bad("continues after the stop state");
        counted += r.accepting[i] ? 1 : 0;
    }
    if (r.accepting_count != kUnboundedCount && r.accepting_count != counted) throw bad("accepting count mismatch");
    const bool at_target = model.target && r.states.back() == *model.target;
    if (at_target != r.reached_target) throw bad("target flag mismatch");

    switch (model.mode) {
    case Mode::ReachTarget: return r.reached_target ? 1.0 : 0.0;
    case Mode::TotalReward:
        return r.accepting_count == kUnboundedCount ? std::numeric_limits<double>::infinity()
                                                    : static_cast<double>(r.accepting_count);
    case Mode::BiasedDiscount: {
        if (r.accepting_count == kUnboundedCount) return 1.0 / (1.0 - model.zeta);
        double total = 0.0, weight = 1.0;
        for (std::size_t i = 0; i < r.steps(); ++i) {
            if (!r.accepting[i]) continue;
            total += weight;
            weight *= model.zeta;
        }
        return total;
    }
    }
    return 0.0;
}

RunRecord simulate_episode(const AugmentedModel& model, const PolicyFn& policy, std::size_t max_steps, Rng& rng) {
    RunRecord r;
    std::size_t v = model.initial();
    r.states.push_back(v);
    std::vector<double> w;
    for (std::size_t step = 0; step < max_steps; ++step) {
        const std::size_t c = policy(v, rng);
        const auto& bs = model.branches[v][c];
        w.clear();
        for (const auto& b : bs) w.push_back(b.prob);
        const auto& b = bs[sample_index(w, rng)];
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

RunRecord simulate_episode(const AugmentedModel& model, const Strategy& f, std::size_t max_steps, Rng& rng) {
    return simulate_episode(model, [&](std::size_t v, Rng&) { return f.choice.at(v); }, max_steps, rng);
}

}  // namespace omega
