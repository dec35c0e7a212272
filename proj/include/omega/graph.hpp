#pragma once

#include <cstddef>
#include <vector>

namespace omega {

using Adjacency = std::vector<std::vector<std::size_t>>;

struct SccResult {
    std::vector<std::size_t> component;  ///< component id per node
    std::size_t count = 0;
};

/// Tarjan's algorithm, iterative. Component ids are assigned in reverse
/// topological order: successors' components get smaller ids.
SccResult strongly_connected_components(const Adjacency& successors);

/// Nodes reachable from `sources` (inclusive).
std::vector<bool> forward_reachable(const Adjacency& successors, const std::vector<std::size_t>& sources);

/// Nodes that can reach some node marked in `targets` (inclusive).
std::vector<bool> backward_reachable(const Adjacency& successors, const std::vector<bool>& targets);

}  // namespace omega
