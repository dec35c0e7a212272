#include "omega/product.hpp"
#include "omega/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace omega {

std::optional<std::size_t> ProductChoice::automaton_successor(std::size_t symbol) const {
    for (const auto& [s, q] : resolution)
        if (s == symbol) return q;
    return std::nullopt;
}

std::optional<std::size_t> ProductMdp::index_of(ProductState s) const {
    auto it = std::find(states.begin(), states.end(), s);
    if (it == states.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
}

std::string ProductMdp::state_name(std::size_t p) const {
    std::ostringstream os;
    os << "(" << mdp_state_names.at(states.at(p).mdp_state) << "," << states[p].automaton_state << ")";
    return os.str();
}

std::string ProductMdp::choice_name(std::size_t p, std::size_t c) const {
    const auto& ch = choices.at(p).at(c);
    std::ostringstream os;
    os << action_names.at(ch.action) << "/";
    const bool uniform = std::all_of(ch.resolution.begin(), ch.resolution.end(),
                                     [&](const auto& r) { return r.second == ch.resolution.front().second; });
    if (!ch.resolution.empty() && uniform) {
        os << ch.resolution.front().second;
    } else {
        os << "{";
        for (std::size_t i = 0; i < ch.resolution.size(); ++i)
            os << (i ? " " : "") << alphabet.at(ch.resolution[i].first) << ":" << ch.resolution[i].second;
        os << "}";
    }
    return os.str();
}

namespace {

// All functions from `symbols` to automaton successors, in lexicographic
// order of the successor lists (which follow transition order).
std::vector<std::vector<std::pair<std::size_t, const NbaTransition*>>> resolutions(
    const Nba& a, std::size_t q, const std::vector<std::size_t>& symbols) {
    std::vector<std::vector<const NbaTransition*>> options;
    for (auto s : symbols) {
        auto succ = a.successors(q, s);
        if (succ.empty())
            throw SemanticError(SemanticError::Kind::IncompleteAutomaton,
                                "automaton has no transition from state " + std::to_string(q) + " on '" +
                                    a.alphabet[s] + "'");
        options.push_back(std::move(succ));
    }
    std::vector<std::vector<std::pair<std::size_t, const NbaTransition*>>> out;
    std::vector<std::size_t> idx(symbols.size(), 0);
    for (;;) {
        auto& r = out.emplace_back();
        for (std::size_t i = 0; i < symbols.size(); ++i) r.emplace_back(symbols[i], options[i][idx[i]]);
        std::size_t k = symbols.size();
        while (k > 0) {
            --k;
            if (++idx[k] < options[k].size()) break;
            idx[k] = 0;
            if (k == 0) return out;
        }
        if (symbols.empty()) return out;
    }
}

}  // namespace

ProductMdp build_product(const Mdp& m, const Nba& a, const ProductOptions& opts) {
    require_valid(m);
    a.check_invariants();
    if (std::set(m.alphabet.begin(), m.alphabet.end()) != std::set(a.alphabet.begin(), a.alphabet.end()))
        throw SemanticError(SemanticError::Kind::AlphabetMismatch, "MDP and automaton alphabets differ");
    if (!is_complete(a))
        throw SemanticError(SemanticError::Kind::IncompleteAutomaton,
                            "automaton is incomplete; complete it explicitly (trap state) before building the product");
    std::vector<std::size_t> to_automaton(m.alphabet.size());
    for (std::size_t i = 0; i < m.alphabet.size(); ++i) to_automaton[i] = a.symbol_index(m.alphabet[i]);

    ProductMdp p;
    p.mdp_state_names = m.state_names;
    p.action_names = m.action_names;
    p.alphabet = m.alphabet;
    p.automaton_states = a.num_states;
    p.gfm_asserted = a.gfm_asserted;

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    std::deque<std::size_t> todo;
    auto intern = [&](std::size_t s, std::size_t q) {
        auto [it, fresh] = index.try_emplace({s, q}, p.states.size());
        if (fresh) {
            p.states.push_back({s, q});
            p.choices.emplace_back();
            todo.push_back(it->second);
        }
        return it->second;
    };
    intern(m.initial, a.initial);
    if (!opts.reachable_only)
        for (std::size_t s = 0; s < m.num_states(); ++s)
            for (std::size_t q = 0; q < a.num_states; ++q) intern(s, q);

    while (!todo.empty()) {
        const std::size_t v = todo.front();
        todo.pop_front();
        const auto [s, q] = p.states[v];
        std::vector<ProductChoice> out;
        for (const auto& mc : m.choices[s]) {
            std::vector<std::size_t> symbols;
            for (const auto& e : mc.edges)
                if (e.prob > 0.0) symbols.push_back(*e.label);
            std::sort(symbols.begin(), symbols.end());
            symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
            std::vector<std::size_t> asym;
            for (auto sym : symbols) asym.push_back(to_automaton[sym]);

            for (const auto& r : resolutions(a, q, asym)) {
                ProductChoice pc;
                pc.action = mc.action;
                for (std::size_t i = 0; i < symbols.size(); ++i) pc.resolution.emplace_back(symbols[i], r[i].second->target);
                double mass = 0.0;
                for (const auto& e : mc.edges) {
                    if (!(e.prob > 0.0)) continue;
                    const auto i = static_cast<std::size_t>(
                        std::lower_bound(symbols.begin(), symbols.end(), *e.label) - symbols.begin());
                    const NbaTransition* t = r[i].second;
                    pc.edges.push_back({0, e.prob, t->accepting, *e.label});
                    pc.edges.back().target = t->target;  // automaton part; fixed up below
                    mass += e.prob;
                }
                if (std::abs(mass - 1.0) > kMassTolerance)
                    throw SemanticError(SemanticError::Kind::SubStochasticPair, "sub-stochastic action pair");
                out.push_back(std::move(pc));
            }
        }
        // Intern successors after the loop: `intern` may reallocate p.choices.
        for (auto& pc : out) {
            std::size_t k = 0;
            for (const auto& e : m.find_choice(s, pc.action)->edges) {
                if (!(e.prob > 0.0)) continue;
                pc.edges[k].target = intern(e.target, pc.edges[k].target);
                ++k;
            }
        }
        p.choices[v] = std::move(out);
    }
    return p;
}

bool is_valid_strategy(const ProductMdp& p, const Strategy& f) {
    if (f.choice.size() != p.num_states()) return false;
    for (std::size_t v = 0; v < p.num_states(); ++v)
        if (f.choice[v] >= p.choices[v].size()) return false;
    return true;
}

const ControllerRule* FiniteStateController::rule(std::size_t mdp_state, std::size_t memory) const {
    auto it = rules.find({mdp_state, memory});
    return it == rules.end() ? nullptr : &it->second;
}

FiniteStateController project_strategy(const ProductMdp& p, const Strategy& f) {
    if (!is_valid_strategy(p, f))
        throw SemanticError(SemanticError::Kind::InvalidArgument, "strategy does not match the product");
    FiniteStateController c;
    c.memory_states = p.automaton_states;
    c.initial_memory = p.states[p.initial].automaton_state;
    for (std::size_t v = 0; v < p.num_states(); ++v) {
        const auto& ch = p.choices[v][f.choice[v]];
        ControllerRule r;
        r.action = ch.action;
        for (const auto& [sym, q] : ch.resolution) r.update.emplace(sym, q);
        c.rules.emplace(std::pair{p.states[v].mdp_state, p.states[v].automaton_state}, std::move(r));
    }
    return c;
}

Strategy recompose(const ProductMdp& p, const FiniteStateController& c) {
    Strategy f;
    f.choice.resize(p.num_states());
    for (std::size_t v = 0; v < p.num_states(); ++v) {
        const auto* r = c.rule(p.states[v].mdp_state, p.states[v].automaton_state);
        if (r == nullptr)
            throw SemanticError(SemanticError::Kind::InvalidArgument, "controller has no rule for " + p.state_name(v));
        const auto& cs = p.choices[v];
        auto it = std::find_if(cs.begin(), cs.end(), [&](const ProductChoice& ch) {
            if (ch.action != r->action || ch.resolution.size() != r->update.size()) return false;
            return std::all_of(ch.resolution.begin(), ch.resolution.end(), [&](const auto& sq) {
                auto u = r->update.find(sq.first);
                return u != r->update.end() && u->second == sq.second;
            });
        });
        if (it == cs.end())
            throw SemanticError(SemanticError::Kind::InvalidArgument, "controller choice unavailable at " + p.state_name(v));
        f.choice[v] = static_cast<std::size_t>(it - cs.begin());
    }
    return f;
}

}  // namespace omega
