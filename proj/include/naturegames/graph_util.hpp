// graph_util.hpp -- SCC decomposition and reachability over adjacency lists
#pragma once

#include <vector>

#include "naturegames/core.hpp"

namespace ng {

// Iterative Tarjan over the vertices with mask[v] != 0 (mask empty = all).
// Returns component id per vertex (-1 for masked-out), components numbered
// in reverse topological order of discovery.
struct SccResult {
    std::vector<int> comp;
    int count = 0;
};

SccResult strongly_connected_components(const std::vector<std::vector<Vertex>>& succ,
                                        const std::vector<char>& mask);

// True per vertex iff it lies on some cycle within the mask (its SCC has an
// internal edge; a self-loop counts).
std::vector<char> on_cycle(const std::vector<std::vector<Vertex>>& succ,
                           const std::vector<char>& mask);

// Forward reachability from a seed set, restricted to mask.
std::vector<char> reachable_from(const std::vector<std::vector<Vertex>>& succ,
                                 const std::vector<char>& mask, const std::vector<Vertex>& seeds);

// Backward reachability: vertices that can reach the seed set within mask.
std::vector<char> can_reach(const std::vector<std::vector<Vertex>>& succ,
                            const std::vector<char>& mask, const std::vector<char>& seeds);

}  // namespace ng
