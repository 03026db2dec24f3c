#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace clusterexp {

// A small connected, regular, bipartite base graph with vertices labeled
// 0..m-1 where the even labels form one bipartition class.
struct BaseGraph {
    std::string token;                       // e.g. "Kss:2", "C:6"
    int size = 0;                            // m = |V|
    int degree = 0;
    std::vector<std::vector<int>> adj;       // sorted adjacency lists
    std::vector<std::vector<uint8_t>> dist;  // pairwise distances (for dist<=2 tests)

    static BaseGraph complete_bipartite(int s);        // K_{s,s}, labels 0..2s-1
    static BaseGraph even_cycle(int len);              // C_len, len even
    static BaseGraph from_edge_list(const std::string& path);
    static BaseGraph parse_token(const std::string& token);

    // Throws std::invalid_argument unless connected, regular, bipartite with
    // label parity matching the bipartition.
    void validate() const;
};

using Vertex = std::vector<int>;         // one coordinate per base graph
using VertexSet = std::vector<Vertex>;   // sorted, duplicate-free

// Cartesian product of bipartite regular base graphs.
class ProductSpec {
public:
    explicit ProductSpec(std::vector<BaseGraph> bases);

    // Comma-separated base tokens ("Kss:2,Kss:2"), a named roster graph
    // ("C4", "Q3", ...) or "file:<path>".
    static ProductSpec parse(const std::string& token);
    static std::vector<std::string> roster_names();

    const std::vector<BaseGraph>& bases() const { return bases_; }
    int dimensions() const { return int(bases_.size()); }
    long vertex_count() const { return n_; }
    int degree() const { return degree_; }               // sum of base degrees
    int max_base_size() const { return max_base_size_; }
    const std::string& name() const { return name_; }
    void set_name(const std::string& n) { name_ = n; }

    bool valid_vertex(const Vertex& v) const;
    void check_vertex(const Vertex& v) const;  // throws on out-of-range coordinates

    // 0 for the class of the all-zeros vertex (even coordinate-parity sum).
    int vertex_class(const Vertex& v) const;

    std::vector<Vertex> all_vertices() const;
    VertexSet neighbors(const Vertex& v) const;

    // Distance between two vertices (sum of base-graph distances).
    int distance(const Vertex& a, const Vertex& b) const;

    // All vertices at distance exactly 1 or 2 from S, excluding S.
    // Throws std::invalid_argument when S mixes bipartition classes.
    VertexSet second_neighborhood(const VertexSet& S) const;

    // True iff S is connected in the square of the graph; empty sets and
    // singletons count as 2-linked.
    bool is_two_linked(const VertexSet& S) const;

private:
    std::vector<BaseGraph> bases_;
    long n_ = 1;
    int degree_ = 0;
    int max_base_size_ = 0;
    std::string name_;
};

// Sorts and deduplicates into the canonical VertexSet form.
VertexSet canonical_vertex_set(VertexSet s);

// Coordinates (0-based) where some member of S differs from the root.
// Throws std::invalid_argument unless root is a member of S.
std::vector<int> active_coordinates(const VertexSet& S, const Vertex& root);

}  // namespace clusterexp
