#pragma once

#include "omega/automata.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace omega {

/// Parses the supported subset of the Hanoi Omega-Automata format:
/// transition-based Buchi acceptance (`Acceptance: 1 Inf(0)`), explicit
/// edge labels that are a single atomic proposition, `t`, or a disjunction of
/// propositions. Each proposition is one alphabet symbol. Transitions keep
/// file order; a disjunction expands left to right.
///
/// `properties: gfm` asserts good-for-MDPs; deterministic automata are
/// asserted implicitly.
///
/// Throws ParseError (with line/column) for malformed text and SemanticError
/// for well-formed but unsupported or inconsistent content.
Nba parse_hoa(std::string_view text);

Nba load_hoa(const std::filesystem::path& path);

/// Canonical form: fixed header order, one state block per state in index
/// order, one edge per transition.
std::string serialize_hoa(const Nba& a);

}  // namespace omega
