#ifndef PENDNET_CONNECTIVITY_HPP
#define PENDNET_CONNECTIVITY_HPP

#include <limits>
#include <queue>
#include <vector>

#include "pendnet/graph.hpp"

namespace pendnet {

namespace detail {

// BFS max-flow (Edmonds-Karp) on the unit-capacity digraph obtained by
// replacing each edge with two arcs.
inline int unit_max_flow(const Graph& g, int s, int t) {
    const int m = static_cast<int>(g.edges.size());
    std::vector<int> cap(2 * m, 1);  // arc 2k: i->j, arc 2k+1: j->i
    std::vector<std::vector<std::pair<int, int>>> out(g.n);  // (neighbor, arc id)
    for (int k = 0; k < m; ++k) {
        auto [i, j] = g.edges[k];
        out[i].emplace_back(j, 2 * k);
        out[j].emplace_back(i, 2 * k + 1);
    }
    int flow = 0;
    while (true) {
        std::vector<int> prev_arc(g.n, -1), prev_node(g.n, -1);
        std::queue<int> bfs;
        bfs.push(s);
        prev_node[s] = s;
        while (!bfs.empty() && prev_node[t] < 0) {
            int u = bfs.front();
            bfs.pop();
            for (auto [v, arc] : out[u]) {
                if (prev_node[v] >= 0 || cap[arc] == 0) continue;
                prev_node[v] = u;
                prev_arc[v] = arc;
                bfs.push(v);
            }
        }
        if (prev_node[t] < 0) break;
        for (int v = t; v != s; v = prev_node[v]) {
            --cap[prev_arc[v]];
            ++cap[prev_arc[v] ^ 1];
        }
        ++flow;
    }
    return flow;
}

}  // namespace detail

/// Minimum number of edges whose removal disconnects the graph.
/// Max-flow from node 0 to every other node, taking the minimum.
/// Returns 0 for disconnected graphs (including n = 1 edge-free corner).
inline int edge_connectivity(const Graph& g) {
    if (!is_connected(g)) return 0;
    if (g.n == 1) return 0;
    int best = std::numeric_limits<int>::max();
    for (int t = 1; t < g.n; ++t) best = std::min(best, detail::unit_max_flow(g, 0, t));
    return best;
}

}  // namespace pendnet

#endif
