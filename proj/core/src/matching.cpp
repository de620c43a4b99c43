#include "phg/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace phg {

void BipartiteGraph::add_edge(int l, int r) {
    if (l < 0 || l >= left || r < 0 || r >= right)
        throw std::out_of_range("BipartiteGraph::add_edge: endpoint out of range");
    auto& row = adj[l];
    auto it = std::lower_bound(row.begin(), row.end(), r);
    if (it == row.end() || *it != r) row.insert(it, r);
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HopcroftKarp {
    const BipartiteGraph& g;
    std::vector<int> lm, rm, dist;

    explicit HopcroftKarp(const BipartiteGraph& g)
        : g(g), lm(g.left, -1), rm(g.right, -1), dist(g.left) {}

    bool bfs() {
        std::queue<int> q;
        bool reachable = false;
        for (int l = 0; l < g.left; ++l) {
            if (lm[l] == -1) {
                dist[l] = 0;
                q.push(l);
            } else {
                dist[l] = kInf;
            }
        }
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            for (int r : g.adj[l]) {
                int next = rm[r];
                if (next == -1) {
                    reachable = true;
                } else if (dist[next] == kInf) {
                    dist[next] = dist[l] + 1;
                    q.push(next);
                }
            }
        }
        return reachable;
    }

    bool dfs(int l) {
        for (int r : g.adj[l]) {
            int next = rm[r];
            if (next == -1 || (dist[next] == dist[l] + 1 && dfs(next))) {
                lm[l] = r;
                rm[r] = l;
                return true;
            }
        }
        dist[l] = kInf;
        return false;
    }
};

}  // namespace

MatchingResult maximum_matching(const BipartiteGraph& g) {
    HopcroftKarp hk(g);
    int size = 0;
    while (hk.bfs())
        for (int l = 0; l < g.left; ++l)
            if (hk.lm[l] == -1 && hk.dfs(l)) ++size;
    return {std::move(hk.lm), std::move(hk.rm), size};
}

}  // namespace phg
