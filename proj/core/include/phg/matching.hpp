#pragma once

#include <vector>

namespace phg {

// Bipartite graph on left part [0, left) and right part [0, right).
struct BipartiteGraph {
    int left = 0;
    int right = 0;
    std::vector<std::vector<int>> adj;  // adj[l] = sorted right neighbours

    BipartiteGraph(int l, int r) : left(l), right(r), adj(l) {}
    void add_edge(int l, int r);
};

struct MatchingResult {
    std::vector<int> left_match;   // -1 when unmatched
    std::vector<int> right_match;
    int size = 0;
};

// Hopcroft-Karp. Deterministic: augments along lexicographically first
// layered paths, so equal inputs give equal matchings.
MatchingResult maximum_matching(const BipartiteGraph& g);

}  // namespace phg
