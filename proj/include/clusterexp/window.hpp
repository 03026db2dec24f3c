#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "clusterexp/polynomial.hpp"
#include "clusterexp/product_graph.hpp"

namespace clusterexp {

// Vertex of the enumeration window, packed into a uint64: coordinate c lives
// in the nibble at bits 4*(15-c), so integer comparison is lexicographic by
// coordinate vector. Coordinate values fit a nibble for every window we use.
using WindowVertex = uint64_t;

constexpr int kMaxWindowCoords = 14;
constexpr WindowVertex kWindowRoot = 0;

inline int window_get(WindowVertex v, int c) { return int(v >> (4 * (15 - c))) & 0xF; }
inline WindowVertex window_set(WindowVertex v, int c, int val) {
    const int sh = 4 * (15 - c);
    return (v & ~(WindowVertex(0xF) << sh)) | (WindowVertex(val) << sh);
}

// Parity class: 0 for the class of the all-zeros root.
inline int window_class(WindowVertex v) {
    return __builtin_popcountll(v & 0x1111111111111111ull) & 1;
}

// The window graph for generating compressed sets of size <= j: the 2j-th
// Cartesian power of K_{j,j}, rooted at the all-zeros vertex.
class Window {
public:
    explicit Window(int j);

    int j() const { return j_; }
    int coords() const { return coords_; }        // 2j
    int base_order() const { return coords_; }    // |V(K_{j,j})| = 2j

    bool valid_vertex(WindowVertex v) const;

    // Same-class vertices at distance exactly 2 (the neighbourhood used to
    // grow 2-linked sets within one bipartition class). Sorted ascending.
    void two_step_neighbors(WindowVertex v, std::vector<WindowVertex>& out) const;

    // Corresponding ProductSpec (for cross-checks; materializes base graphs only).
    ProductSpec as_product_spec() const;

    static Vertex unpack(WindowVertex v, int coords);
    static WindowVertex pack(const Vertex& v);

private:
    int j_;
    int coords_;
};

// Per-coordinate value masks of a vertex set; bit b of mask(c) is set when
// some member has value b at coordinate c. The root contributes bit 0
// everywhere.
class CoordMasks {
public:
    explicit CoordMasks(int coords) : coords_(coords) { masks_.fill(1); }

    void add(WindowVertex v) {
        for (int c = 0; c < coords_; ++c) masks_[c] |= uint16_t(1u << window_get(v, c));
    }
    uint16_t mask(int c) const { return masks_[c]; }
    int coords() const { return coords_; }

    std::array<uint16_t, kMaxWindowCoords> snapshot() const { return masks_; }
    void restore(const std::array<uint16_t, kMaxWindowCoords>& snap) { masks_ = snap; }

private:
    int coords_;
    std::array<uint16_t, kMaxWindowCoords> masks_{};
};

constexpr uint16_t kOddBits = 0x2AAA;   // bits 1,3,5,...,13
constexpr uint16_t kEvenBits = 0x1555;  // bits 0,2,4,...,12

// {1,3,...,2k-1} as a bit mask, k = popcount of the odd part.
inline uint16_t odd_prefix_mask(int k) { return uint16_t(((1u << (2 * k)) - 1) & kOddBits); }
// {0,2,...,2(k-1)} as a bit mask (0 for k = 0).
inline uint16_t even_prefix_mask(int k) {
    return k == 0 ? 0 : uint16_t(((1u << (2 * k - 1)) - 1) & kEvenBits);
}

// A compressed 2-linked set in the window, emitted by the enumerator.
struct CompressedSet {
    int j = 0;                              // window parameter
    std::vector<WindowVertex> vertices;     // sorted, includes the root 0
    int active = 0;                         // |A(S)|; active coordinates are 0..active-1
    std::array<uint8_t, kMaxWindowCoords> odd_count{};   // |O_i|, i < active
    std::array<uint8_t, kMaxWindowCoords> even_count{};  // |E_i|, i < active

    int size() const { return int(vertices.size()); }

    // |Psi(S, r)| / (n/2): C(t,|A|) * prod_i C(s,|O_i|) C(s-1,|E_i|-1),
    // a polynomial in s and t.
    Polynomial embedding_count_half() const;
};

// Compressed predicate on per-coordinate masks: the active coordinates form a
// prefix of 0..coords-1, and in each active coordinate the odd/even values
// used form parity prefixes (0 always present via the root).
bool masks_compressed(const CoordMasks& masks, CompressedSet* info_out = nullptr);

// Spec-facing predicate with precondition checks (root membership, one class,
// 2-linkedness). Throws std::invalid_argument on violated preconditions.
bool is_compressed(const std::vector<WindowVertex>& S, int j);

}  // namespace clusterexp
