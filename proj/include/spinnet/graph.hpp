// graph.hpp — undirected simple graphs and the topology metrics used throughout

#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace spinnet {

/// Static undirected simple graph. Immutable after construction; safe for
/// concurrent reads. Node indices are 0-based.
class Graph {
public:
    /// Construct from an explicit edge set. Rejects self-loops, duplicate
    /// edges, and indices outside [0, n_nodes).
    Graph(int n_nodes, std::vector<std::pair<int, int>> edges);

    int n_nodes() const { return n_nodes_; }
    int n_edges() const { return static_cast<int>(edges_.size()); }

    /// Edges as (i, j) pairs with i < j, sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool adjacent(int i, int j) const { return adj_[idx(i, j)] != 0; }

    /// k_i = number of neighbors of node i.
    const std::vector<int>& degrees() const { return degrees_; }
    int degree(int i) const { return degrees_.at(static_cast<std::size_t>(i)); }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_nodes_) +
               static_cast<std::size_t>(j);
    }

    int n_nodes_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<unsigned char> adj_;
    std::vector<int> degrees_;
};

/// Parse an edge-list text stream. Lines are "i j" integer pairs; lines
/// starting with '#' are ignored; an optional header line "nodes K" fixes the
/// node count (otherwise max index + 1 is used). Duplicate edges are accepted
/// once; a note is appended to `warnings` if given. Self-loops, negative
/// indices, and weighted lines are rejected.
Graph load_edge_list(std::istream& in, std::vector<std::string>* warnings = nullptr);
Graph load_edge_list(const std::string& text, std::vector<std::string>* warnings = nullptr);
Graph load_edge_list_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Mean degree 2L/N.
double mean_degree(const Graph& g);

/// Degree disparity: the sample variance of the degree sequence,
/// sum_i (k_i - kbar)^2 / (N - 1). Requires N >= 2. The (N - 1) divisor is
/// part of the metric's definition here; the population variance (divisor N)
/// is a different quantity.
double degree_disparity(const Graph& g);

/// Named graph library. Recognized names: "k4-minus-edge", "paw",
/// "rep7-uniform", "rep7-hub", "rep7-sparse", and the parametric families
/// "cycle:N", "complete:N", "star:N".
Graph builtin_graph(const std::string& name);

/// Names of the non-parametric built-ins plus family patterns, for help text.
std::vector<std::string> builtin_graph_names();

/// True if `name` is resolvable by builtin_graph.
bool is_builtin_graph(const std::string& name);

}  // namespace spinnet
