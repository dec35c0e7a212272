#include "omega/oracle.hpp"
#include "omega/error.hpp"
#include "omega/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace omega {
namespace {

using Eigen::Index;
using Eigen::VectorXd;

bool choice_has_accepting(const ProductChoice& c) {
    return std::any_of(c.edges.begin(), c.edges.end(), [](const ProductEdge& e) { return e.accepting && e.prob > 0.0; });
}

// Positional steering towards `goal` (already assigned in f) using only the
// allowed choices; ties go to the lowest choice index.
void attract(const ProductMdp& p, const std::vector<std::vector<std::size_t>>& allowed, std::vector<bool>& assigned,
             Strategy& f) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::size_t> newly;
        for (std::size_t v = 0; v < p.num_states(); ++v) {
            if (assigned[v]) continue;
            for (auto c : allowed[v]) {
                const auto& es = p.choices[v][c].edges;
                if (std::any_of(es.begin(), es.end(), [&](const ProductEdge& e) { return e.prob > 0.0 && assigned[e.target]; })) {
                    f.choice[v] = c;
                    newly.push_back(v);
                    break;
                }
            }
        }
        for (auto v : newly) assigned[v] = true;
        changed = !newly.empty();
    }
}

}  // namespace

bool EndComponent::contains(std::size_t v) const { return std::binary_search(states.begin(), states.end(), v); }

std::vector<EndComponent> mec_decomposition(const ProductMdp& p) {
    const std::size_t n = p.num_states();
    std::vector<bool> alive(n, true);
    std::vector<std::vector<bool>> kept(n);
    for (std::size_t v = 0; v < n; ++v) kept[v].assign(p.choices[v].size(), true);

    std::vector<std::size_t> comp;
    for (bool changed = true; changed;) {
        changed = false;
        Adjacency succ(n);
        for (std::size_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            for (std::size_t c = 0; c < p.choices[v].size(); ++c) {
                if (!kept[v][c]) continue;
                for (const auto& e : p.choices[v][c].edges)
                    if (e.prob > 0.0) succ[v].push_back(e.target);
            }
        }
        comp = strongly_connected_components(succ).component;
        for (std::size_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            bool any = false;
            for (std::size_t c = 0; c < p.choices[v].size(); ++c) {
                if (!kept[v][c]) continue;
                const auto& es = p.choices[v][c].edges;
                const bool leaves = std::any_of(es.begin(), es.end(), [&](const ProductEdge& e) {
                    return e.prob > 0.0 && (!alive[e.target] || comp[e.target] != comp[v]);
                });
                if (leaves) {
                    kept[v][c] = false;
                    changed = true;
                } else {
                    any = true;
                }
            }
            if (!any) {
                alive[v] = false;
                changed = true;
            }
        }
    }

    std::vector<EndComponent> out;
    std::vector<std::size_t> slot(n, std::numeric_limits<std::size_t>::max());
    for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        auto& s = slot[comp[v]];
        if (s == std::numeric_limits<std::size_t>::max()) {
            s = out.size();
            out.emplace_back();
        }
        out[s].states.push_back(v);
        auto& cs = out[s].choices.emplace_back();
        for (std::size_t c = 0; c < p.choices[v].size(); ++c)
            if (kept[v][c]) cs.push_back(c);
    }
    return out;
}

bool is_accepting(const ProductMdp& p, const EndComponent& ec) {
    for (std::size_t i = 0; i < ec.states.size(); ++i)
        for (auto c : ec.choices[i])
            if (choice_has_accepting(p.choices[ec.states[i]][c])) return true;
    return false;
}

VectorXd policy_buchi_probabilities(const ProductMdp& p, const Strategy& f) {
    if (!is_valid_strategy(p, f))
        throw SemanticError(SemanticError::Kind::InvalidArgument, "strategy does not match the product");
    const std::size_t n = p.num_states();
    Adjacency succ(n);
    for (std::size_t v = 0; v < n; ++v)
        for (const auto& e : p.choices[v][f.choice[v]].edges)
            if (e.prob > 0.0) succ[v].push_back(e.target);
    const auto scc = strongly_connected_components(succ);

    std::vector<bool> bottom(scc.count, true), accepting(scc.count, false);
    for (std::size_t v = 0; v < n; ++v) {
        for (const auto& e : p.choices[v][f.choice[v]].edges) {
            if (!(e.prob > 0.0)) continue;
            if (scc.component[e.target] != scc.component[v])
                bottom[scc.component[v]] = false;
            else if (e.accepting)
                accepting[scc.component[v]] = true;
        }
    }
    std::vector<bool> good(n, false);
    for (std::size_t v = 0; v < n; ++v) good[v] = bottom[scc.component[v]] && accepting[scc.component[v]];
    const auto can_reach = backward_reachable(succ, good);

    std::vector<Index> local(n, -1);
    std::vector<std::size_t> unknown;
    for (std::size_t v = 0; v < n; ++v) {
        if (good[v] || !can_reach[v]) continue;
        local[v] = static_cast<Index>(unknown.size());
        unknown.push_back(v);
    }
    const auto k = static_cast<Index>(unknown.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k, k);
    VectorXd rhs = VectorXd::Zero(k);
    for (Index i = 0; i < k; ++i) {
        for (const auto& e : p.choices[unknown[static_cast<std::size_t>(i)]][f.choice[unknown[static_cast<std::size_t>(i)]]].edges) {
            if (good[e.target])
                rhs[i] += e.prob;
            else if (local[e.target] >= 0)
                a(i, local[e.target]) -= e.prob;
        }
    }
    const VectorXd x = a.partialPivLu().solve(rhs);
    VectorXd out = VectorXd::Zero(static_cast<Index>(n));
    for (std::size_t v = 0; v < n; ++v) {
        if (good[v]) out[static_cast<Index>(v)] = 1.0;
        else if (local[v] >= 0) out[static_cast<Index>(v)] = x[local[v]];
    }
    return out;
}

double policy_buchi_probability(const ProductMdp& p, const Strategy& f) {
    return policy_buchi_probabilities(p, f)[static_cast<Index>(p.initial)];
}

BuchiSolution buchi_value(const ProductMdp& p) {
    const std::size_t n = p.num_states();
    BuchiSolution out;
    out.lower_bound_only = !p.gfm_asserted;
    out.mecs = mec_decomposition(p);
    out.strategy.choice.assign(n, 0);

    std::vector<bool> win(n, false);
    std::vector<std::vector<std::size_t>> allowed(n);
    for (const auto& ec : out.mecs) {
        const bool acc = is_accepting(p, ec);
        out.accepting.push_back(acc);
        if (!acc) continue;
        // Pick one accepting retained choice, then steer the rest of the MEC to it.
        std::vector<bool> assigned(n, false);
        bool seeded = false;
        for (std::size_t i = 0; i < ec.states.size(); ++i) {
            const auto v = ec.states[i];
            win[v] = true;
            allowed[v] = ec.choices[i];
            for (auto c : ec.choices[i]) {
                if (!seeded && choice_has_accepting(p.choices[v][c])) {
                    out.strategy.choice[v] = c;
                    assigned[v] = true;
                    seeded = true;
                }
            }
        }
        std::vector<std::vector<std::size_t>> inside(n);
        for (std::size_t i = 0; i < ec.states.size(); ++i) inside[ec.states[i]] = ec.choices[i];
        attract(p, inside, assigned, out.strategy);
    }

    // Maximal reachability of the winning region by Gauss-Seidel iteration.
    Adjacency succ(n);
    for (std::size_t v = 0; v < n; ++v)
        for (const auto& c : p.choices[v])
            for (const auto& e : c.edges)
                if (e.prob > 0.0) succ[v].push_back(e.target);
    const auto maybe = backward_reachable(succ, win);
    VectorXd x = VectorXd::Zero(static_cast<Index>(n));
    for (std::size_t v = 0; v < n; ++v)
        if (win[v]) x[static_cast<Index>(v)] = 1.0;
    auto q_value = [&](const ProductChoice& c) {
        double acc = 0.0;
        for (const auto& e : c.edges) acc += e.prob * x[static_cast<Index>(e.target)];
        return acc;
    };
    for (std::size_t sweep = 0; sweep < 10'000'000; ++sweep) {
        double delta = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (win[v] || !maybe[v]) continue;
            double best = 0.0;
            for (const auto& c : p.choices[v]) best = std::max(best, q_value(c));
            delta = std::max(delta, std::abs(best - x[static_cast<Index>(v)]));
            x[static_cast<Index>(v)] = best;
        }
        if (delta <= 1e-14) break;
    }

    // Outside the winning region: optimal choices that make progress towards it.
    std::vector<bool> assigned = win;
    for (std::size_t v = 0; v < n; ++v) {
        if (win[v]) continue;
        double best = 0.0;
        for (const auto& c : p.choices[v]) best = std::max(best, q_value(c));
        for (std::size_t c = 0; c < p.choices[v].size(); ++c)
            if (q_value(p.choices[v][c]) >= best - 1e-9) allowed[v].push_back(c);
        if (!maybe[v]) {
            allowed[v].clear();
            out.strategy.choice[v] = 0;
        }
    }
    attract(p, allowed, assigned, out.strategy);

    out.values = policy_buchi_probabilities(p, out.strategy);
    if ((out.values - x).lpNorm<Eigen::Infinity>() > 1e-6)
        throw Error("buchi_value: extracted strategy does not attain the iterated value");
    return out;
}

}  // namespace omega
