#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "adkit/types.hpp"

namespace adkit {

/// Simple undirected graph stored as a symmetric 0/1 adjacency matrix with zero diagonal.
struct Graph {
    int n = 0;
    rmat adjacency;

    Graph() = default;
    explicit Graph(int vertices);
    static Graph from_edges(int vertices, const std::vector<std::pair<int, int>>& edges);

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const { return adjacency(u, v) != 0.0; }
    std::vector<std::pair<int, int>> edges() const;
    int edge_count() const;
    std::vector<int> degrees() const;
    bool connected() const;
};

/// Reads a plain-text edge list: one "u v" pair per line, 0-indexed. Blank lines
/// and lines starting with '#' are ignored. The vertex count is max index + 1
/// unless min_vertices is larger.
Graph read_edge_list(std::istream& in, int min_vertices = 0);
Graph read_edge_list_file(const std::string& path, int min_vertices = 0);
void write_edge_list(std::ostream& out, const Graph& g);

// Named graphs used across tests and experiments.
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph complete_graph(int n);
Graph prism_graph();           // triangular prism, 6 vertices
Graph complete_bipartite(int a, int b);
/// K4 on {0,1,2,3}, vertex 0 joined to 4, pendant edge 4-5.
Graph c5_candidate_graph();

}  // namespace adkit
