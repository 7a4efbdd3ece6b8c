#include "adkit/graph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace adkit {

Graph::Graph(int vertices) : n(vertices), adjacency(rmat::Zero(vertices, vertices)) {
    if (vertices < 0) throw DomainError("graph vertex count must be non-negative");
}

Graph Graph::from_edges(int vertices, const std::vector<std::pair<int, int>>& edges) {
    Graph g(vertices);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw DomainError("edge endpoint out of range");
    if (u == v) throw DomainError("self-loops are not allowed");
    adjacency(u, v) = 1.0;
    adjacency(v, u) = 1.0;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (has_edge(u, v)) e.emplace_back(u, v);
    return e;
}

int Graph::edge_count() const { return static_cast<int>(edges().size()); }

std::vector<int> Graph::degrees() const {
    std::vector<int> d(n, 0);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) d[u] += has_edge(u, v);
    return d;
}

bool Graph::connected() const {
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n; ++v) {
            if (has_edge(u, v) && !seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == n;
}

Graph read_edge_list(std::istream& in, int min_vertices) {
    std::vector<std::pair<int, int>> edges;
    int max_index = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        int u = 0, v = 0;
        if (!(ls >> u >> v) || u < 0 || v < 0)
            throw DomainError("edge list line " + std::to_string(lineno) + ": expected two non-negative indices");
        edges.emplace_back(u, v);
        max_index = std::max({max_index, u, v});
    }
    return Graph::from_edges(std::max(max_index + 1, min_vertices), edges);
}

Graph read_edge_list_file(const std::string& path, int min_vertices) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot open edge list: " + path);
    return read_edge_list(f, min_vertices);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph cycle_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph prism_graph() {
    return Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
}

Graph complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

Graph c5_candidate_graph() {
    return Graph::from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {4, 5}});
}

}  // namespace adkit
