#include "omega/report.hpp"

#include <cmath>
#include <iomanip>
#include <map>

namespace omega {
namespace {

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json model_json(const ProductMdp& p, const std::vector<std::vector<std::vector<Branch>>>& branches,
                std::optional<std::size_t> target) {
    Json out;
    auto& states = out["states"] = Json::array();
    for (std::size_t v = 0; v < p.num_states(); ++v) states.push_back(p.state_name(v));
    if (target) states.push_back("t");

    std::vector<std::string> actions;
    std::map<std::string, std::size_t> seen;
    for (std::size_t v = 0; v < p.num_states(); ++v)
        for (std::size_t c = 0; c < p.choices[v].size(); ++c)
            if (seen.emplace(p.choice_name(v, c), actions.size()).second) actions.push_back(p.choice_name(v, c));
    out["actions"] = actions;
    out["alphabet"] = p.alphabet;
    out["initial"] = p.state_name(p.initial);
    if (target) out["target"] = "t";

    auto& ts = out["transitions"] = Json::array();
    Json accepting = Json::array();
    for (std::size_t v = 0; v < p.num_states(); ++v) {
        for (std::size_t c = 0; c < branches[v].size(); ++c) {
            double to_target = 0.0;
            std::optional<std::size_t> target_label;
            bool mixed = false;
            for (const auto& b : branches[v][c]) {
                if (b.stops) {
                    to_target += b.prob;
                    if (target_label && *target_label != b.symbol) mixed = true;
                    target_label = b.symbol;
                    continue;
                }
                if (b.accepting) accepting.push_back(ts.size());
                Json t;
                t["from"] = p.state_name(v);
                t["action"] = p.choice_name(v, c);
                t["to"] = p.state_name(b.target);
                t["prob"] = b.prob;
                t["label"] = p.alphabet[b.symbol];
                ts.push_back(std::move(t));
            }
            if (to_target > 0.0) {
                accepting.push_back(ts.size());
                Json t;
                t["from"] = p.state_name(v);
                t["action"] = p.choice_name(v, c);
                t["to"] = "t";
                t["prob"] = to_target;
                t["label"] = mixed ? Json(nullptr) : Json(p.alphabet[*target_label]);
                ts.push_back(std::move(t));
            }
        }
    }
    out["accepting"] = std::move(accepting);
    return out;
}

Json values_json(const ProductMdp& p, const Eigen::VectorXd& v) {
    Json out = Json::object();
    for (std::size_t i = 0; i < p.num_states(); ++i) out[p.state_name(i)] = number(v[static_cast<Eigen::Index>(i)]);
    return out;
}

}  // namespace

Json product_to_json(const ProductMdp& p) {
    std::vector<std::vector<std::vector<Branch>>> raw(p.num_states());
    for (std::size_t v = 0; v < p.num_states(); ++v)
        for (const auto& c : p.choices[v]) {
            auto& bs = raw[v].emplace_back();
            for (const auto& e : c.edges) bs.push_back({e.target, e.prob, 0.0, 1.0, e.accepting, false, e.symbol});
        }
    Json out = model_json(p, raw, std::nullopt);
    out["gfm_asserted"] = p.gfm_asserted;
    return out;
}

Json augmented_to_json(const AugmentedModel& m) {
    Json out = model_json(*m.base, m.branches, m.target);
    if (!m.target) out["target"] = nullptr;
    out["zeta"] = m.zeta;
    out["mode"] = to_string(m.mode);
    return out;
}

Json strategy_to_json(const ProductMdp& p, const Strategy& f) {
    Json out = Json::object();
    for (std::size_t v = 0; v < p.num_states(); ++v) out[p.state_name(v)] = p.choice_name(v, f.choice[v]);
    return out;
}

Json solve_to_json(const AugmentedModel& m, const Solution& s) {
    Json out;
    out["mode"] = to_string(m.mode);
    out["zeta"] = m.zeta;
    out["residual"] = number(s.value.residual);
    out["iterations"] = s.value.iterations;
    out["values"] = values_json(*m.base, s.value.values);
    out["policy"] = strategy_to_json(*m.base, s.strategy);
    out["lower_bound_only"] = !m.base->gfm_asserted;
    return out;
}

Json oracle_to_json(const ProductMdp& p, const BuchiSolution& b) {
    Json out;
    auto& mecs = out["mecs"] = Json::array();
    auto& acc = out["accepting_mecs"] = Json::array();
    for (std::size_t i = 0; i < b.mecs.size(); ++i) {
        Json ec = Json::object();
        for (std::size_t k = 0; k < b.mecs[i].states.size(); ++k) {
            const auto v = b.mecs[i].states[k];
            Json cs = Json::array();
            for (auto c : b.mecs[i].choices[k]) cs.push_back(p.choice_name(v, c));
            ec[p.state_name(v)] = std::move(cs);
        }
        mecs.push_back(std::move(ec));
        if (b.accepting[i]) acc.push_back(i);
    }
    out["psat_values"] = values_json(p, b.values);
    out["optimal_policy"] = strategy_to_json(p, b.strategy);
    out["lower_bound_only"] = b.lower_bound_only;
    return out;
}

Json learn_to_json(const TrainResult& r, std::size_t block) {
    const auto& p = *r.model.base;
    Json out;
    out["policy"] = strategy_to_json(p, r.policy);
    Json q = Json::object();
    for (std::size_t v = 0; v < p.num_states(); ++v) {
        Json row = Json::object();
        for (std::size_t c = 0; c < p.choices[v].size(); ++c) {
            Json cell;
            cell["q"] = r.table(v, c);
            cell["visits"] = r.table.visits(v, c);
            row[p.choice_name(v, c)] = std::move(cell);
        }
        q[p.state_name(v)] = std::move(row);
    }
    out["q_table"] = std::move(q);
    Json curve = Json::array();
    block = std::max<std::size_t>(block, 1);
    for (std::size_t i = 0; i < r.curve.size(); i += block) {
        const std::size_t end = std::min(r.curve.size(), i + block);
        double sum = 0.0;
        for (std::size_t k = i; k < end; ++k) sum += r.curve[k].total_reward;
        Json pt;
        pt["first_episode"] = i;
        pt["episodes"] = end - i;
        pt["mean_total_reward"] = sum / static_cast<double>(end - i);
        pt["epsilon"] = r.curve[end - 1].epsilon;
        curve.push_back(std::move(pt));
    }
    out["curve"] = std::move(curve);
    return out;
}

Json verify_to_json(const VerifyReport& r) {
    Json out;
    out["pass"] = r.pass();
    out["lower_bound_only"] = r.lower_bound_only;
    auto& recs = out["records"] = Json::array();
    for (const auto& z : r.records) {
        Json j;
        j["zeta"] = z.zeta;
        j["policies"] = z.policies;
        j["theorem2_identity_max_error"] = z.theorem2_identity_max_error;
        j["bound_violations"] = z.bound_violations;
        j["prob1_equivalence_failures"] = z.prob1_equivalence_failures;
        j["reach_prob1_failures"] = z.reach_prob1_failures;
        j["theorem3_max_error"] = z.theorem3_max_error;
        auto& tail = j["tail_bound_check"] = Json::array();
        for (const auto& t : z.tail_bound_check) {
            Json tj;
            tj["n"] = t.n;
            tj["frequency"] = t.frequency;
            tj["bound"] = t.bound;
            tj["ok"] = t.ok;
            tail.push_back(std::move(tj));
        }
        Json flags;
        flags["identity"] = z.pass_identity;
        flags["bounds"] = z.pass_bounds;
        flags["prob1_equivalence"] = z.pass_prob1;
        flags["theorem3"] = z.pass_theorem3;
        flags["tail_bound"] = z.pass_tail;
        j["pass"] = std::move(flags);
        recs.push_back(std::move(j));
    }
    return out;
}

Json sweep_to_json(const ThresholdReport& r) {
    Json out;
    out["grid"] = Json::array();
    auto& pts = out["points"] = Json::array();
    for (const auto& p : r.points) {
        out["grid"].push_back(p.zeta);
        Json j;
        j["zeta"] = p.zeta;
        j["policy"] = p.policy_id;
        j["psat_policy"] = p.psat_policy;
        j["psat_opt"] = p.psat_opt;
        j["is_optimal"] = p.is_optimal;
        pts.push_back(std::move(j));
    }
    out["empirical_zeta0"] = r.empirical_zeta0 ? Json(*r.empirical_zeta0) : Json("not found in grid");
    return out;
}

void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& curve) {
    os << "episode,total_reward,epsilon\n";
    os << std::setprecision(17);
    for (const auto& c : curve) os << c.episode << ',' << c.total_reward << ',' << c.epsilon << '\n';
}

void write_sweep_csv(std::ostream& os, const ThresholdReport& r) {
    os << "zeta,policy,psat_policy,psat_opt,is_optimal\n";
    os << std::setprecision(17);
    for (const auto& p : r.points)
        os << p.zeta << ',' << p.policy_id << ',' << p.psat_policy << ',' << p.psat_opt << ','
           << (p.is_optimal ? "true" : "false") << '\n';
}

}  // namespace omega
