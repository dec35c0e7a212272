#include "omega/mdp.hpp"
#include "omega/error.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace omega {

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

const MdpChoice* Mdp::find_choice(std::size_t state, std::size_t action) const {
    if (state >= choices.size()) return nullptr;
    for (const auto& c : choices[state])
        if (c.action == action) return &c;
    return nullptr;
}

std::vector<std::string> validate(const Mdp& m) {
    std::vector<std::string> diags;
    auto where = [&](std::size_t s, std::size_t a) {
        std::ostringstream os;
        os << "(" << (s < m.state_names.size() ? m.state_names[s] : std::to_string(s)) << ", "
           << (a < m.action_names.size() ? m.action_names[a] : std::to_string(a)) << ")";
        return os.str();
    };
    if (m.num_states() == 0) diags.push_back("MDP has no states");
    if (m.initial >= m.num_states()) diags.push_back("initial state out of range");
    if (m.choices.size() != m.num_states()) {
        diags.push_back("choice table size differs from state count");
        return diags;
    }
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        if (m.choices[s].empty()) diags.push_back("state " + m.state_names[s] + " has no available actions");
        std::set<std::size_t> actions;
        for (const auto& c : m.choices[s]) {
            if (c.action >= m.action_names.size()) {
                diags.push_back("state " + m.state_names[s] + " uses an undeclared action");
                continue;
            }
            if (!actions.insert(c.action).second) diags.push_back("duplicate choice " + where(s, c.action));
            double mass = 0.0;
            std::set<std::size_t> targets;
            for (const auto& e : c.edges) {
                const std::string edge = where(s, c.action) + " -> " +
                                         (e.target < m.num_states() ? m.state_names[e.target] : "?");
                if (e.target >= m.num_states()) diags.push_back("edge target out of range at " + edge);
                if (!targets.insert(e.target).second) diags.push_back("duplicate edge " + edge);
                if (!(e.prob >= 0.0) || !std::isfinite(e.prob)) diags.push_back("negative or non-finite probability on " + edge);
                if (e.prob > 0.0 && !e.label) diags.push_back("unlabelled edge " + edge);
                if (e.prob == 0.0 && e.label) diags.push_back("label on zero-probability edge " + edge);
                if (e.label && *e.label >= m.alphabet.size()) diags.push_back("label outside alphabet on " + edge);
                mass += e.prob;
            }
            if (std::abs(mass - 1.0) > kMassTolerance) {
                std::ostringstream os;
                os.precision(17);
                os << "mass != 1 at " << where(s, c.action) << ": " << mass;
                diags.push_back(os.str());
            }
        }
    }
    return diags;
}

void require_valid(const Mdp& m) {
    auto diags = validate(m);
    if (!diags.empty()) throw ValidationError(std::move(diags));
}

Step sample_step(const Mdp& m, std::size_t s, std::size_t a, Rng& rng) {
    const auto* c = m.find_choice(s, a);
    if (c == nullptr)
        throw SemanticError(SemanticError::Kind::InvalidArgument, "action not available in state");
    std::vector<double> w;
    w.reserve(c->edges.size());
    for (const auto& e : c->edges) w.push_back(e.prob);
    const auto& e = c->edges[sample_index(w, rng)];
    return {e.target, *e.label};
}

}  // namespace omega
