#ifndef PENDNET_TESTS_HELPERS_HPP
#define PENDNET_TESTS_HELPERS_HPP

#include <vector>

#include "pendnet/graph.hpp"
#include "pendnet/partition.hpp"

namespace pendnet::testing {

/// All connected simple graphs on n labeled nodes.
inline std::vector<Graph> connected_graphs(int n) {
    std::vector<std::pair<int, int>> all_edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) all_edges.emplace_back(i, j);
    const int m = static_cast<int>(all_edges.size());
    std::vector<Graph> out;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (int e = 0; e < m; ++e)
            if (mask & (1u << e)) edges.push_back(all_edges[e]);
        Graph g(n, edges);
        if (is_connected(g)) out.push_back(std::move(g));
    }
    return out;
}

/// Brute-force enumeration of single-letter matched partitions
/// {W0, W+, W-} that pass the odd-balanced conditions. Independent of the
/// sign-eigenvector search; used as the cross-enumeration oracle.
/// Canonicalized so that the first non-W0 node lands in W+.
inline std::vector<MatchedPartition> enumerate_single_letter_odd_balanced(const Graph& g) {
    std::vector<MatchedPartition> out;
    std::vector<int> assign(g.n, 0);  // 0: W0, 1: W+, 2: W-
    long total = 1;
    for (int i = 0; i < g.n; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
        long c = code;
        bool has_pos = false, has_neg = false;
        for (int i = 0; i < g.n; ++i) {
            assign[i] = static_cast<int>(c % 3);
            c /= 3;
            has_pos |= assign[i] == 1;
            has_neg |= assign[i] == 2;
        }
        if (!has_pos || !has_neg) continue;
        // canonical: first signed node is positive (sign-flip dedup)
        bool canonical = true;
        for (int i = 0; i < g.n; ++i) {
            if (assign[i] == 0) continue;
            canonical = assign[i] == 1;
            break;
        }
        if (!canonical) continue;
        MatchedPartition p;
        p.classes.assign(3, {});
        for (int i = 0; i < g.n; ++i) p.classes[assign[i]].push_back(i);
        p.match = {0, 2, 1};
        p.sign = {0, 1, -1};
        if (verify_odd_balanced(g, p).ok) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace pendnet::testing

#endif
