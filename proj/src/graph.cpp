#include "spinnet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace spinnet {

Graph::Graph(int n_nodes, std::vector<std::pair<int, int>> edges)
    : n_nodes_(n_nodes) {
    if (n_nodes_ < 1) throw std::invalid_argument("graph: need at least one node");
    std::set<std::pair<int, int>> seen;
    edges_.reserve(edges.size());
    for (auto [i, j] : edges) {
        if (i == j) throw std::invalid_argument("graph: self-loop on node " + std::to_string(i));
        if (i < 0 || j < 0) throw std::invalid_argument("graph: negative node index");
        if (i >= n_nodes_ || j >= n_nodes_)
            throw std::invalid_argument("graph: node index " + std::to_string(std::max(i, j)) +
                                        " out of range for " + std::to_string(n_nodes_) + " nodes");
        const std::pair<int, int> e{std::min(i, j), std::max(i, j)};
        if (!seen.insert(e).second)
            throw std::invalid_argument("graph: duplicate edge " + std::to_string(e.first) + "-" +
                                        std::to_string(e.second));
    }
    edges_.assign(seen.begin(), seen.end());
    adj_.assign(static_cast<std::size_t>(n_nodes_) * static_cast<std::size_t>(n_nodes_), 0);
    degrees_.assign(static_cast<std::size_t>(n_nodes_), 0);
    for (auto [i, j] : edges_) {
        adj_[idx(i, j)] = 1;
        adj_[idx(j, i)] = 1;
        ++degrees_[static_cast<std::size_t>(i)];
        ++degrees_[static_cast<std::size_t>(j)];
    }
}

Graph load_edge_list(std::istream& in, std::vector<std::string>* warnings) {
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;
    int header_nodes = -1;
    int max_index = -1;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv(line);
        auto pos = sv.find_first_not_of(" \t\r");
        if (pos == std::string_view::npos) continue;
        if (sv[pos] == '#') continue;
        std::istringstream ls(line);
        std::string first;
        ls >> first;
        if (first == "nodes") {
            if (!(ls >> header_nodes) || header_nodes < 1)
                throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                            ": bad node-count header");
            continue;
        }
        long i = 0, j = 0;
        std::istringstream es(line);
        if (!(es >> i >> j))
            throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                        ": expected 'i j'");
        std::string extra;
        if (es >> extra)
            throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                        ": trailing token '" + extra +
                                        "' (weighted edges are not supported)");
        if (i < 0 || j < 0)
            throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                        ": negative node index");
        if (i == j)
            throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                        ": self-loop on node " + std::to_string(i));
        const int a = static_cast<int>(i);
        const int b = static_cast<int>(j);
        const std::pair<int, int> e{std::min(a, b), std::max(a, b)};
        if (!seen.insert(e).second) {
            if (warnings)
                warnings->push_back("duplicate edge " + std::to_string(e.first) + "-" +
                                    std::to_string(e.second) + " collapsed (line " +
                                    std::to_string(line_no) + ")");
            continue;
        }
        edges.push_back(e);
        max_index = std::max({max_index, e.first, e.second});
    }
    if (edges.empty() && header_nodes < 0)
        throw std::invalid_argument("edge list: no edges and no node-count header");
    int n = header_nodes > 0 ? header_nodes : max_index + 1;
    return Graph(n, std::move(edges));
}

Graph load_edge_list(const std::string& text, std::vector<std::string>* warnings) {
    std::istringstream in(text);
    return load_edge_list(in, warnings);
}

Graph load_edge_list_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open edge list file: " + path);
    return load_edge_list(in, warnings);
}

double mean_degree(const Graph& g) {
    return 2.0 * g.n_edges() / g.n_nodes();
}

double degree_disparity(const Graph& g) {
    const int n = g.n_nodes();
    if (n < 2) throw std::invalid_argument("degree_disparity: undefined for a single node");
    const double kbar = mean_degree(g);
    double ss = 0.0;
    for (int k : g.degrees()) {
        const double d = k - kbar;
        ss += d * d;
    }
    return ss / (n - 1);
}

namespace {

Graph make_cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle:N needs N >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
    return Graph(n, std::move(e));
}

Graph make_complete(int n) {
    if (n < 2) throw std::invalid_argument("complete:N needs N >= 2");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.push_back({i, j});
    return Graph(n, std::move(e));
}

Graph make_star(int n) {
    if (n < 2) throw std::invalid_argument("star:N needs N >= 2");
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n; ++i) e.push_back({0, i});
    return Graph(n, std::move(e));
}

// Representative 7-node graphs spanning the density/disparity combinations
// exercised by the decoherence study. Degree sequences:
//   rep7-uniform: (5,5,4,4,3,3,2)  L=13  kbar=26/7  disparity 1.238
//   rep7-hub:     (5,5,5,4,4,2,1)  L=13  kbar=26/7  disparity 2.571
//   rep7-sparse:  (4,3,2,2,1,1,1)  L=7   kbar=2     disparity 1.333
const std::vector<std::pair<int, int>> kRep7Uniform = {
    {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3},
    {1, 4}, {1, 6}, {2, 3}, {2, 5}, {3, 5}, {4, 6}};
const std::vector<std::pair<int, int>> kRep7Hub = {
    {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3},
    {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 6}, {3, 4}};
const std::vector<std::pair<int, int>> kRep7Sparse = {
    {0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 5}, {3, 6}};

}  // namespace

Graph builtin_graph(const std::string& name) {
    if (name == "k4-minus-edge")
        return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
    if (name == "paw")
        return Graph(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    if (name == "rep7-uniform") return Graph(7, kRep7Uniform);
    if (name == "rep7-hub") return Graph(7, kRep7Hub);
    if (name == "rep7-sparse") return Graph(7, kRep7Sparse);
    auto colon = name.find(':');
    if (colon != std::string::npos) {
        const std::string family = name.substr(0, colon);
        int n = 0;
        try {
            std::size_t used = 0;
            n = std::stoi(name.substr(colon + 1), &used);
            if (used != name.size() - colon - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("bad size in graph name '" + name + "'");
        }
        if (family == "cycle") return make_cycle(n);
        if (family == "complete") return make_complete(n);
        if (family == "star") return make_star(n);
    }
    throw std::invalid_argument("unknown built-in graph '" + name + "'");
}

std::vector<std::string> builtin_graph_names() {
    return {"k4-minus-edge", "paw",      "rep7-uniform", "rep7-hub",
            "rep7-sparse",   "cycle:N",  "complete:N",   "star:N"};
}

bool is_builtin_graph(const std::string& name) {
    try {
        builtin_graph(name);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace spinnet
