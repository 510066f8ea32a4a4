#ifndef PENDNET_GRAPH_HPP
#define PENDNET_GRAPH_HPP

#include <algorithm>
#include <fstream>
#include <istream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pendnet/linalg.hpp"

namespace pendnet {

/// Simple undirected graph. Nodes are 0-based internally; the edge-list
/// file format and all printed output use 1-based labels.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // normalized i < j, sorted, unique

    Graph() = default;
    Graph(int nodes, std::vector<std::pair<int, int>> edge_list) : n(nodes) {
        if (n < 1) throw std::invalid_argument("Graph: node count must be >= 1");
        std::set<std::pair<int, int>> uniq;
        for (auto [i, j] : edge_list) {
            if (i == j) throw std::invalid_argument("Graph: self-loop");
            if (i < 0 || j < 0 || i >= n || j >= n)
                throw std::invalid_argument("Graph: node label out of range");
            uniq.emplace(std::min(i, j), std::max(i, j));
        }
        if (uniq.size() != edge_list.size())
            throw std::invalid_argument("Graph: duplicate edge");
        edges.assign(uniq.begin(), uniq.end());
    }

    std::vector<std::vector<int>> adjacency_lists() const {
        std::vector<std::vector<int>> adj(n);
        for (auto [i, j] : edges) {
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
        return adj;
    }

    bool has_edge(int i, int j) const {
        if (i > j) std::swap(i, j);
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
    }

    std::vector<int> degrees() const {
        std::vector<int> d(n, 0);
        for (auto [i, j] : edges) {
            ++d[i];
            ++d[j];
        }
        return d;
    }
};

inline Graph make_path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e);
}

inline Graph make_cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle graph needs n >= 3");
    auto g = make_path(n);
    std::vector<std::pair<int, int>> e = g.edges;
    e.emplace_back(0, n - 1);
    return Graph(n, e);
}

inline Graph make_complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, e);
}

/// Edge-list format: header line `n <count>`, then one `i j` pair per line,
/// 1-based labels. Blank lines and lines starting with '#' are skipped.
inline Graph read_edge_list(std::istream& in) {
    std::string line;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream ls(line);
        if (n < 0) {
            std::string tag;
            ls >> tag >> n;
            if (tag != "n" || !ls || n < 1)
                throw std::invalid_argument("edge list: expected header 'n <count>'");
            continue;
        }
        int i, j;
        if (!(ls >> i >> j)) throw std::invalid_argument("edge list: bad edge line: " + line);
        edges.emplace_back(i - 1, j - 1);
    }
    if (n < 0) throw std::invalid_argument("edge list: missing header");
    return Graph(n, edges);
}

inline std::vector<std::vector<int>> laplacian(const Graph& g) {
    std::vector<std::vector<int>> L(g.n, std::vector<int>(g.n, 0));
    for (auto [i, j] : g.edges) {
        L[i][j] = -1;
        L[j][i] = -1;
        ++L[i][i];
        ++L[j][j];
    }
    return L;
}

inline bool is_connected(const Graph& g) {
    if (g.n == 0) return false;
    auto adj = g.adjacency_lists();
    std::vector<bool> seen(g.n, false);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = true;
    int count = 1;
    while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                bfs.push(v);
            }
    }
    return count == g.n;
}

/// Accepts `path:N`, `cycle:N`, `complete:N`, or a file path to an edge list.
inline Graph parse_graph_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string kind = spec.substr(0, colon);
        int n = 0;
        try {
            n = std::stoi(spec.substr(colon + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("graph spec: bad node count in '" + spec + "'");
        }
        if (kind == "path") return make_path(n);
        if (kind == "cycle") return make_cycle(n);
        if (kind == "complete") return make_complete(n);
        throw std::invalid_argument("graph spec: unknown generator '" + kind + "'");
    }
    std::ifstream file(spec);
    if (!file) throw std::invalid_argument("graph spec: cannot open file '" + spec + "'");
    return read_edge_list(file);
}

struct LaplacianSpectrum {
    std::vector<double> eigenvalues;  // ascending
    Mat eigenvectors;                 // orthonormal columns
};

inline LaplacianSpectrum spectrum(const Graph& g) {
    auto L = laplacian(g);
    Mat A(g.n, g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) A(i, j) = static_cast<double>(L[i][j]);
    auto eig = jacobi_eigensymmetric(std::move(A));
    return {std::move(eig.eigenvalues), std::move(eig.eigenvectors)};
}

}  // namespace pendnet

#endif
