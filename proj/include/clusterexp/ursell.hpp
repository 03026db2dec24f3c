#pragma once

#include <array>
#include <cstdint>

#include "clusterexp/rational.hpp"

namespace clusterexp {

// Simple undirected graph on up to 16 nodes, adjacency rows as bit masks.
struct SmallGraph {
    int n = 0;
    std::array<uint16_t, 16> adj{};

    void add_edge(int a, int b) {
        adj[size_t(a)] |= uint16_t(1u << b);
        adj[size_t(b)] |= uint16_t(1u << a);
    }
    bool has_edge(int a, int b) const { return adj[size_t(a)] >> b & 1; }
    bool connected() const;
    int edge_count() const;
};

// T_G(1,0) by deletion-contraction; contraction merges adjacency rows, which
// deduplicates parallel edges, so every recursive instance stays simple.
// Requires a connected graph.
mpz_class tutte_10(const SmallGraph& g);

// Ursell value of a connected incompatibility graph:
// (-1)^(n-1) T_G(1,0) / n!. Throws std::invalid_argument when disconnected.
Rational ursell(const SmallGraph& g);

// Brute-force count of acyclic orientations whose unique sink is `sink`
// (test oracle; feasible for small graphs only).
uint64_t acyclic_orientations_unique_sink(const SmallGraph& g, int sink);

}  // namespace clusterexp
