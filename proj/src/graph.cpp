#include "psicalc/graph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace psicalc {

namespace {

void check_vertex(const Graph& g, int v, const char* who) {
    if (v < 0 || v >= g.n)
        throw std::invalid_argument(std::string(who) + ": vertex " + std::to_string(v) +
                                    " out of range [0, " + std::to_string(g.n) + ")");
}

}  // namespace

Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n <= 0) throw std::invalid_argument("from_edge_list: vertex count must be positive");
    std::vector<std::set<int>> nb(n);
    for (const auto& [a, b] : edges) {
        if (a == b)
            throw std::invalid_argument("from_edge_list: self-loop (" + std::to_string(a) + ", " +
                                        std::to_string(b) + ") is not allowed");
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw std::invalid_argument("from_edge_list: edge (" + std::to_string(a) + ", " +
                                        std::to_string(b) + ") has an endpoint outside [0, " +
                                        std::to_string(n) + ")");
        nb[a].insert(b);
        nb[b].insert(a);
    }
    Graph g;
    g.n = n;
    g.adj.resize(n);
    for (int v = 0; v < n; ++v) g.adj[v].assign(nb[v].begin(), nb[v].end());
    return g;
}

int degree(const Graph& g, int v) {
    check_vertex(g, v, "degree");
    return static_cast<int>(g.adj[v].size());
}

int distance(const Graph& g, int x, int y) {
    check_vertex(g, x, "distance");
    check_vertex(g, y, "distance");
    if (x == y) return 0;
    std::vector<int> dist(g.n, -1);
    dist[x] = 0;
    std::deque<int> q{x};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : g.adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                if (w == y) return dist[w];
                q.push_back(w);
            }
        }
    }
    return kInfiniteDistance;
}

bool is_connected(const Graph& g) {
    if (g.n <= 1) return true;
    std::vector<char> seen(g.n, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : g.adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                q.push_back(w);
            }
    }
    return count == g.n;
}

std::vector<int> ball(const Graph& g, int v, int r) {
    check_vertex(g, v, "ball");
    if (r < 0) throw std::invalid_argument("ball: radius must be >= 0");
    std::vector<int> dist(g.n, -1);
    dist[v] = 0;
    std::deque<int> q{v};
    std::vector<int> out{v};
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (dist[u] == r) continue;
        for (int w : g.adj[u])
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                out.push_back(w);
                q.push_back(w);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Graph cayley_abelian(const std::vector<int>& orders, const std::vector<std::vector<int>>& generators) {
    if (orders.empty()) throw std::invalid_argument("cayley_abelian: orders must be nonempty");
    for (int m : orders)
        if (m < 2) throw std::invalid_argument("cayley_abelian: each cyclic order must be >= 2");
    const int k = static_cast<int>(orders.size());
    long long total = 1;
    for (int m : orders) total *= m;
    if (total > 1 << 20) throw std::invalid_argument("cayley_abelian: group too large");

    auto normalize = [&](std::vector<int> gvec) {
        for (int i = 0; i < k; ++i) gvec[i] = ((gvec[i] % orders[i]) + orders[i]) % orders[i];
        return gvec;
    };
    std::set<std::vector<int>> gens;
    for (const auto& gvec : generators) {
        if (static_cast<int>(gvec.size()) != k)
            throw std::invalid_argument("cayley_abelian: generator arity does not match orders");
        auto pos = normalize(gvec);
        if (std::all_of(pos.begin(), pos.end(), [](int c) { return c == 0; }))
            throw std::invalid_argument("cayley_abelian: zero generator would create a self-loop");
        std::vector<int> neg(k);
        for (int i = 0; i < k; ++i) neg[i] = (orders[i] - pos[i]) % orders[i];
        gens.insert(pos);
        gens.insert(neg);
    }

    // mixed-radix encoding, first coordinate most significant
    auto encode = [&](const std::vector<int>& e) {
        int id = 0;
        for (int i = 0; i < k; ++i) id = id * orders[i] + e[i];
        return id;
    };
    std::vector<std::pair<int, int>> edges;
    std::vector<int> e(k, 0);
    const int n = static_cast<int>(total);
    for (int id = 0; id < n; ++id) {
        int t = id;
        for (int i = k - 1; i >= 0; --i) {
            e[i] = t % orders[i];
            t /= orders[i];
        }
        for (const auto& gvec : gens) {
            std::vector<int> w(k);
            for (int i = 0; i < k; ++i) w[i] = (e[i] + gvec[i]) % orders[i];
            edges.emplace_back(id, encode(w));
        }
    }
    return from_edge_list(n, edges);
}

std::vector<std::pair<int, int>> canonical_edges(const Graph& g) {
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < g.n; ++v)
        for (int w : g.adj[v])
            if (v < w) out.emplace_back(v, w);
    std::sort(out.begin(), out.end());
    return out;
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_graph: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("load_graph: malformed JSON in '" + path + "': " + e.what());
        }
        if (!doc.contains("n") || !doc.contains("edges"))
            throw std::runtime_error("load_graph: '" + path + "' must contain \"n\" and \"edges\"");
        int n = doc["n"].get<int>();
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : doc["edges"]) {
            if (!e.is_array() || e.size() != 2)
                throw std::runtime_error("load_graph: bad edge entry in '" + path + "'");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        Graph g = from_edge_list(n, edges);
        if (doc.contains("labels")) g.labels = doc["labels"].get<std::vector<std::string>>();
        return g;
    }

    // plain edge list
    std::vector<std::pair<int, int>> edges;
    int max_vertex = -1;
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int a, b;
        if (!(ls >> a)) continue;  // blank or comment-only line
        if (!(ls >> b))
            throw std::runtime_error("load_graph: '" + path + "' line " + std::to_string(lineno) +
                                     ": expected two vertex ids");
        edges.emplace_back(a, b);
        max_vertex = std::max({max_vertex, a, b});
    }
    if (edges.empty()) throw std::runtime_error("load_graph: '" + path + "' contains no edges");
    return from_edge_list(max_vertex + 1, edges);
}

void save_graph_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_graph_edge_list: cannot write '" + path + "'");
    for (const auto& [a, b] : canonical_edges(g)) out << a << " " << b << "\n";
}

void save_graph_json(const Graph& g, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["n"] = g.n;
    auto edges = nlohmann::ordered_json::array();
    for (const auto& [a, b] : canonical_edges(g)) edges.push_back({a, b});
    doc["edges"] = edges;
    if (!g.labels.empty()) doc["labels"] = g.labels;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_graph_json: cannot write '" + path + "'");
    out << doc.dump(2) << "\n";
}

namespace {

bool parse_suffix_int(const std::string& name, const std::string& prefix, int& value) {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return false;
    const std::string rest = name.substr(prefix.size());
    if (!std::all_of(rest.begin(), rest.end(), [](unsigned char c) { return std::isdigit(c); }))
        return false;
    value = std::stoi(rest);
    return true;
}

}  // namespace

Graph builtin_graph(const std::string& name) {
    int k = 0;
    if (parse_suffix_int(name, "cycle", k)) {
        if (k < 2) throw std::invalid_argument("builtin_graph: cycle needs >= 2 vertices");
        return cayley_abelian({k}, {{1}});
    }
    if (parse_suffix_int(name, "hypercube", k)) {
        if (k < 1 || k > 16) throw std::invalid_argument("builtin_graph: hypercube dimension out of range");
        std::vector<int> orders(k, 2);
        std::vector<std::vector<int>> gens;
        for (int i = 0; i < k; ++i) {
            std::vector<int> e(k, 0);
            e[i] = 1;
            gens.push_back(e);
        }
        return cayley_abelian(orders, gens);
    }
    if (parse_suffix_int(name, "path", k)) {
        if (k < 1) throw std::invalid_argument("builtin_graph: path needs >= 1 vertex");
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
        if (k == 1) { Graph g; g.n = 1; g.adj.resize(1); return g; }
        return from_edge_list(k, edges);
    }
    if (parse_suffix_int(name, "star", k)) {
        if (k < 1) throw std::invalid_argument("builtin_graph: star needs >= 1 leaf");
        std::vector<std::pair<int, int>> edges;
        for (int i = 1; i <= k; ++i) edges.emplace_back(0, i);
        return from_edge_list(k + 1, edges);
    }
    if (parse_suffix_int(name, "complete", k)) {
        if (k < 2) throw std::invalid_argument("builtin_graph: complete needs >= 2 vertices");
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) edges.emplace_back(i, j);
        return from_edge_list(k, edges);
    }
    if (name.rfind("torus", 0) == 0) {
        const std::string rest = name.substr(5);
        auto x = rest.find('x');
        if (x != std::string::npos) {
            int a = 0, b = 0;
            if (parse_suffix_int(rest.substr(0, x), "", a) && parse_suffix_int(rest.substr(x + 1), "", b)) {
                if (a < 2 || b < 2) throw std::invalid_argument("builtin_graph: torus sides must be >= 2");
                return cayley_abelian({a, b}, {{1, 0}, {0, 1}});
            }
        }
    }
    throw std::invalid_argument("builtin_graph: unknown graph name '" + name + "'");
}

Graph resolve_graph(const std::string& name_or_path) {
    if (std::filesystem::exists(name_or_path)) return load_graph(name_or_path);
    try {
        return builtin_graph(name_or_path);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("resolve_graph: '" + name_or_path +
                                    "' is neither an existing file nor a builtin graph name");
    }
}

}  // namespace psicalc
