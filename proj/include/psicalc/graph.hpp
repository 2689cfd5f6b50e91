#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace psicalc {

// Sentinel for "no path"; distance() never throws on disconnected input.
inline constexpr int kInfiniteDistance = std::numeric_limits<int>::max();

// Finite undirected simple graph. Vertices are dense ids 0..n-1.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;  // sorted, duplicate-free, no self-loops
    std::vector<std::string> labels;    // optional; empty or size n
};

Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges);

int degree(const Graph& g, int v);
int distance(const Graph& g, int x, int y);
bool is_connected(const Graph& g);

// All vertices at distance <= r from v, sorted ascending.
std::vector<int> ball(const Graph& g, int v, int r);

// Cayley graph of Z_orders[0] x ... x Z_orders[k-1]; the generator set is
// symmetrized (closed under negation) and deduplicated.
Graph cayley_abelian(const std::vector<int>& orders,
                     const std::vector<std::vector<int>>& generators);

// Edges in canonical order: sorted pairs (i < j), lexicographic.
std::vector<std::pair<int, int>> canonical_edges(const Graph& g);

// File formats: plain edge list ("i j" per line, '#' comments) or a JSON
// document {"n": int, "edges": [[i,j],...], "labels": optional}.
Graph load_graph(const std::string& path);
void save_graph_edge_list(const Graph& g, const std::string& path);
void save_graph_json(const Graph& g, const std::string& path);

// Built-in families: cycleN, torusAxB, hypercubeK, pathN, starN, completeN.
Graph builtin_graph(const std::string& name);

// Existing file path wins; otherwise the argument is treated as a builtin name.
Graph resolve_graph(const std::string& name_or_path);

}  // namespace psicalc
