#include "clusterexp/product_graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace clusterexp {

namespace {

std::vector<std::vector<uint8_t>> all_pairs_distances(const std::vector<std::vector<int>>& adj) {
    const int n = int(adj.size());
    std::vector<std::vector<uint8_t>> dist(n, std::vector<uint8_t>(n, uint8_t(255)));
    for (int src = 0; src < n; ++src) {
        dist[src][src] = 0;
        std::deque<int> queue{src};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adj[v]) {
                if (dist[src][w] == 255) {
                    dist[src][w] = uint8_t(dist[src][v] + 1);
                    queue.push_back(w);
                }
            }
        }
    }
    return dist;
}

}  // namespace

BaseGraph BaseGraph::complete_bipartite(int s) {
    if (s < 1) throw std::invalid_argument("Kss: s must be >= 1");
    BaseGraph g;
    g.token = "Kss:" + std::to_string(s);
    g.size = 2 * s;
    g.adj.resize(g.size);
    for (int a = 0; a < g.size; ++a) {
        for (int b = 0; b < g.size; ++b) {
            if ((a ^ b) & 1) g.adj[a].push_back(b);
        }
    }
    g.degree = s;
    g.dist = all_pairs_distances(g.adj);
    g.validate();
    return g;
}

BaseGraph BaseGraph::even_cycle(int len) {
    if (len < 4 || len % 2 != 0) throw std::invalid_argument("C: length must be even and >= 4");
    BaseGraph g;
    g.token = "C:" + std::to_string(len);
    g.size = len;
    g.adj.resize(len);
    for (int a = 0; a < len; ++a) {
        g.adj[a] = {(a + len - 1) % len, (a + 1) % len};
        std::sort(g.adj[a].begin(), g.adj[a].end());
    }
    g.degree = 2;
    g.dist = all_pairs_distances(g.adj);
    g.validate();
    return g;
}

BaseGraph BaseGraph::from_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open edge list file: " + path);
    std::set<std::pair<int, int>> edges;
    int max_label = -1;
    int a, b;
    while (in >> a >> b) {
        if (a < 0 || b < 0 || a == b) throw std::invalid_argument("bad edge in " + path);
        edges.insert({std::min(a, b), std::max(a, b)});
        max_label = std::max({max_label, a, b});
    }
    if (max_label < 1) throw std::invalid_argument("empty edge list: " + path);
    BaseGraph g;
    g.token = "file:" + path;
    g.size = max_label + 1;
    g.adj.resize(g.size);
    for (auto [x, y] : edges) {
        g.adj[x].push_back(y);
        g.adj[y].push_back(x);
    }
    for (auto& row : g.adj) std::sort(row.begin(), row.end());
    g.degree = int(g.adj[0].size());
    g.dist = all_pairs_distances(g.adj);
    g.validate();
    return g;
}

BaseGraph BaseGraph::parse_token(const std::string& token) {
    if (token.rfind("Kss:", 0) == 0) return complete_bipartite(std::stoi(token.substr(4)));
    if (token.rfind("C:", 0) == 0) return even_cycle(std::stoi(token.substr(2)));
    if (token.rfind("file:", 0) == 0) return from_edge_list(token.substr(5));
    throw std::invalid_argument("unknown base graph token: " + token);
}

void BaseGraph::validate() const {
    if (size < 2 || size % 2 != 0) {
        throw std::invalid_argument(token + ": base graph must have even order >= 2");
    }
    for (int v = 0; v < size; ++v) {
        if (int(adj[v].size()) != degree) {
            throw std::invalid_argument(token + ": base graph is not regular");
        }
        for (int w : adj[v]) {
            if (((v ^ w) & 1) == 0) {
                throw std::invalid_argument(token + ": edge inside a parity class (not bipartite "
                                                    "with the even/odd labeling)");
            }
        }
        if (dist[0][v] == 255) throw std::invalid_argument(token + ": base graph is disconnected");
    }
}

ProductSpec::ProductSpec(std::vector<BaseGraph> bases) : bases_(std::move(bases)) {
    if (bases_.empty()) throw std::invalid_argument("product needs at least one base graph");
    std::string name;
    for (const auto& g : bases_) {
        n_ *= g.size;
        degree_ += g.degree;
        max_base_size_ = std::max(max_base_size_, g.size);
        if (!name.empty()) name += ",";
        name += g.token;
    }
    name_ = name;
}

std::vector<std::string> ProductSpec::roster_names() {
    return {"C4", "C6", "Q3", "Q4", "K22", "K22xK22", "K22xK11"};
}

ProductSpec ProductSpec::parse(const std::string& token) {
    auto named = [](const std::string& t) -> std::vector<std::string> {
        if (t == "C4") return {"Kss:1", "Kss:1"};
        if (t == "C6") return {"C:6"};
        if (t == "Q3") return {"Kss:1", "Kss:1", "Kss:1"};
        if (t == "Q4") return {"Kss:1", "Kss:1", "Kss:1", "Kss:1"};
        if (t == "K22") return {"Kss:2"};
        if (t == "K22xK22") return {"Kss:2", "Kss:2"};
        if (t == "K22xK11") return {"Kss:2", "Kss:1"};
        return {};
    };
    std::vector<std::string> tokens = named(token);
    if (tokens.empty()) {
        std::stringstream ss(token);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (!part.empty()) tokens.push_back(part);
        }
    }
    if (tokens.empty()) throw std::invalid_argument("empty graph token");
    std::vector<BaseGraph> bases;
    for (const auto& t : tokens) bases.push_back(BaseGraph::parse_token(t));
    ProductSpec spec(std::move(bases));
    spec.set_name(token);
    return spec;
}

bool ProductSpec::valid_vertex(const Vertex& v) const {
    if (int(v.size()) != dimensions()) return false;
    for (int i = 0; i < dimensions(); ++i) {
        if (v[i] < 0 || v[i] >= bases_[i].size) return false;
    }
    return true;
}

void ProductSpec::check_vertex(const Vertex& v) const {
    if (!valid_vertex(v)) throw std::invalid_argument("vertex coordinate out of range");
}

int ProductSpec::vertex_class(const Vertex& v) const {
    int parity = 0;
    for (int c : v) parity ^= (c & 1);
    return parity;
}

std::vector<Vertex> ProductSpec::all_vertices() const {
    std::vector<Vertex> out;
    out.reserve(size_t(n_));
    Vertex v(dimensions(), 0);
    while (true) {
        out.push_back(v);
        int i = dimensions() - 1;
        while (i >= 0 && ++v[i] == bases_[i].size) v[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

VertexSet ProductSpec::neighbors(const Vertex& v) const {
    check_vertex(v);
    VertexSet out;
    out.reserve(size_t(degree_));
    for (int i = 0; i < dimensions(); ++i) {
        for (int w : bases_[i].adj[v[i]]) {
            Vertex nb = v;
            nb[i] = w;
            out.push_back(std::move(nb));
        }
    }
    return canonical_vertex_set(std::move(out));
}

int ProductSpec::distance(const Vertex& a, const Vertex& b) const {
    int d = 0;
    for (int i = 0; i < dimensions(); ++i) d += bases_[i].dist[a[i]][b[i]];
    return d;
}

VertexSet ProductSpec::second_neighborhood(const VertexSet& S) const {
    if (S.empty()) return {};
    const int cls = vertex_class(S.front());
    for (const auto& v : S) {
        check_vertex(v);
        if (vertex_class(v) != cls) {
            throw std::invalid_argument("second_neighborhood: set mixes bipartition classes");
        }
    }
    std::set<Vertex> seen(S.begin(), S.end());
    std::set<Vertex> out;
    for (const auto& v : S) {
        for (const auto& w1 : neighbors(v)) {
            if (!seen.count(w1)) out.insert(w1);
            for (const auto& w2 : neighbors(w1)) {
                if (!seen.count(w2)) out.insert(w2);
            }
        }
    }
    return VertexSet(out.begin(), out.end());
}

bool ProductSpec::is_two_linked(const VertexSet& S) const {
    if (S.size() <= 1) return true;
    const int n = int(S.size());
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (distance(S[i], S[j]) <= 2) comp[find(i)] = find(j);
        }
    }
    int root = find(0);
    for (int i = 1; i < n; ++i) {
        if (find(i) != root) return false;
    }
    return true;
}

VertexSet canonical_vertex_set(VertexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::vector<int> active_coordinates(const VertexSet& S, const Vertex& root) {
    if (std::find(S.begin(), S.end(), root) == S.end()) {
        throw std::invalid_argument("active_coordinates: root is not a member of the set");
    }
    std::vector<int> active;
    for (int i = 0; i < int(root.size()); ++i) {
        for (const auto& v : S) {
            if (v[i] != root[i]) {
                active.push_back(i);
                break;
            }
        }
    }
    return active;
}

}  // namespace clusterexp
