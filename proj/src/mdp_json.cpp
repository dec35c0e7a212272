#include "omega/mdp_json.hpp"
#include "omega/error.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace omega {
namespace {

using nlohmann::json;
using K = SemanticError::Kind;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw SemanticError(K::UnknownField, "unknown field '" + key + "' in " + where);
    }
}

const json& field(const json& obj, const char* name, const std::string& where) {
    auto it = obj.find(name);
    if (it == obj.end()) throw ParseError("missing field '" + std::string(name) + "' in " + where);
    return *it;
}

std::vector<std::string> names(const json& arr, const char* what) {
    if (!arr.is_array()) throw ParseError(std::string("'") + what + "' must be an array of strings");
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& v : arr) {
        if (!v.is_string()) throw ParseError(std::string("'") + what + "' must be an array of strings");
        if (!seen.insert(v.get<std::string>()).second)
            throw SemanticError(K::InvalidArgument, std::string("duplicate name '") + v.get<std::string>() + "' in " + what);
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::size_t lookup(const std::map<std::string, std::size_t>& index, const json& v, const char* what) {
    if (!v.is_string()) throw ParseError(std::string("'") + what + "' must be a string");
    auto it = index.find(v.get<std::string>());
    if (it == index.end())
        throw SemanticError(K::UnknownName, std::string("undeclared ") + what + " '" + v.get<std::string>() + "'");
    return it->second;
}

std::map<std::string, std::size_t> index_of(const std::vector<std::string>& v) {
    std::map<std::string, std::size_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.emplace(v[i], i);
    return out;
}

}  // namespace

Mdp parse_mdp_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("invalid JSON", line, col);
    }
    if (!doc.is_object()) throw ParseError("MDP document must be a JSON object");
    reject_unknown(doc, {"states", "actions", "alphabet", "initial", "transitions"}, "MDP document");

    Mdp m;
    m.state_names = names(field(doc, "states", "MDP document"), "states");
    m.action_names = names(field(doc, "actions", "MDP document"), "actions");
    m.alphabet = names(field(doc, "alphabet", "MDP document"), "alphabet");
    const auto states = index_of(m.state_names);
    const auto actions = index_of(m.action_names);
    const auto symbols = index_of(m.alphabet);
    m.initial = lookup(states, field(doc, "initial", "MDP document"), "state");
    m.choices.assign(m.num_states(), {});

    const auto& transitions = field(doc, "transitions", "MDP document");
    if (!transitions.is_array()) throw ParseError("'transitions' must be an array");
    std::size_t i = 0;
    for (const auto& t : transitions) {
        const std::string where = "transitions[" + std::to_string(i++) + "]";
        if (!t.is_object()) throw ParseError(where + " must be an object");
        reject_unknown(t, {"from", "action", "to", "prob", "label"}, where);
        const auto from = lookup(states, field(t, "from", where), "state");
        const auto action = lookup(actions, field(t, "action", where), "action");
        const auto to = lookup(states, field(t, "to", where), "state");
        const auto& p = field(t, "prob", where);
        if (!p.is_number()) throw ParseError("'prob' must be a number in " + where);
        MdpEdge e{to, p.get<double>(), std::nullopt};
        if (auto it = t.find("label"); it != t.end() && !it->is_null()) e.label = lookup(symbols, *it, "symbol");

        auto& cs = m.choices[from];
        auto c = std::find_if(cs.begin(), cs.end(), [&](const MdpChoice& x) { return x.action == action; });
        if (c == cs.end()) {
            cs.push_back({action, {}});
            c = cs.end() - 1;
        }
        c->edges.push_back(e);
    }
    for (auto& cs : m.choices)
        std::stable_sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) { return a.action < b.action; });
    return m;
}

Mdp load_mdp(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_mdp_json(ss.str());
}

nlohmann::ordered_json mdp_to_json(const Mdp& m) {
    nlohmann::ordered_json out;
    out["states"] = m.state_names;
    out["actions"] = m.action_names;
    out["alphabet"] = m.alphabet;
    out["initial"] = m.state_names.at(m.initial);
    auto& ts = out["transitions"] = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        for (const auto& c : m.choices[s]) {
            for (const auto& e : c.edges) {
                nlohmann::ordered_json t;
                t["from"] = m.state_names[s];
                t["action"] = m.action_names[c.action];
                t["to"] = m.state_names[e.target];
                t["prob"] = e.prob;
                if (e.label) t["label"] = m.alphabet[*e.label];
                ts.push_back(std::move(t));
            }
        }
    }
    return out;
}

}  // namespace omega
