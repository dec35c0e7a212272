#pragma once

#include "omega/mdp.hpp"

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace omega {

/// Reads the JSON MDP format:
///   { "states": [...], "actions": [...], "alphabet": [...], "initial": "<state>",
///     "transitions": [ {"from", "action", "to", "prob", "label"}, ... ] }
/// Unknown fields are rejected. The result is not validated; call
/// `validate` or `require_valid`.
Mdp parse_mdp_json(std::string_view text);
Mdp load_mdp(const std::filesystem::path& path);

nlohmann::ordered_json mdp_to_json(const Mdp& m);

}  // namespace omega
