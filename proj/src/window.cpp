#include "clusterexp/window.hpp"

#include <algorithm>
#include <stdexcept>

namespace clusterexp {

Window::Window(int j) : j_(j), coords_(2 * j) {
    if (j < 1) throw std::invalid_argument("window: j must be >= 1");
    if (coords_ > kMaxWindowCoords) throw std::invalid_argument("window: j too large to pack");
}

bool Window::valid_vertex(WindowVertex v) const {
    for (int c = 0; c < 16; ++c) {
        int val = window_get(v, c);
        if (c >= coords_ ? val != 0 : val >= 2 * j_) return false;
    }
    return true;
}

void Window::two_step_neighbors(WindowVertex v, std::vector<WindowVertex>& out) const {
    out.clear();
    const int m = 2 * j_;
    // Change one coordinate to a different value of the same parity.
    for (int c = 0; c < coords_; ++c) {
        const int a = window_get(v, c);
        for (int val = a & 1; val < m; val += 2) {
            if (val != a) out.push_back(window_set(v, c, val));
        }
    }
    // Change two coordinates, each to a value of the opposite parity.
    for (int c1 = 0; c1 < coords_; ++c1) {
        const int a1 = window_get(v, c1);
        for (int c2 = c1 + 1; c2 < coords_; ++c2) {
            const int a2 = window_get(v, c2);
            for (int v1 = (a1 & 1) ^ 1; v1 < m; v1 += 2) {
                WindowVertex w1 = window_set(v, c1, v1);
                for (int v2 = (a2 & 1) ^ 1; v2 < m; v2 += 2) {
                    out.push_back(window_set(w1, c2, v2));
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
}

ProductSpec Window::as_product_spec() const {
    std::vector<BaseGraph> bases(size_t(coords_), BaseGraph::complete_bipartite(j_));
    return ProductSpec(std::move(bases));
}

Vertex Window::unpack(WindowVertex v, int coords) {
    auto out = Vertex(size_t(coords), 0);
    for (int c = 0; c < coords; ++c) out[size_t(c)] = window_get(v, c);
    return out;
}

WindowVertex Window::pack(const Vertex& v) {
    WindowVertex out = 0;
    for (int c = 0; c < int(v.size()); ++c) out = window_set(out, c, v[c]);
    return out;
}

Polynomial CompressedSet::embedding_count_half() const {
    Polynomial r = binom_affine(Var::t, 0, unsigned(active));
    for (int c = 0; c < active; ++c) {
        r *= binom_affine(Var::s, 0, odd_count[c]);
        r *= binom_affine(Var::s, -1, unsigned(even_count[c] - 1));
    }
    return r;
}

bool masks_compressed(const CoordMasks& masks, CompressedSet* info_out) {
    uint32_t active_bits = 0;
    for (int c = 0; c < masks.coords(); ++c) {
        if (masks.mask(c) & ~1u) active_bits |= 1u << c;
    }
    const int a = __builtin_popcount(active_bits);
    if (active_bits != ((1u << a) - 1)) return false;
    if (info_out) {
        info_out->active = a;
        info_out->odd_count.fill(0);
        info_out->even_count.fill(0);
    }
    for (int c = 0; c < a; ++c) {
        const uint16_t om = masks.mask(c) & kOddBits;
        const uint16_t em = masks.mask(c) & kEvenBits;
        const int ok = __builtin_popcount(om);
        const int ek = __builtin_popcount(em);
        if (om != odd_prefix_mask(ok)) return false;
        if (em != even_prefix_mask(ek)) return false;
        if (info_out) {
            info_out->odd_count[c] = uint8_t(ok);
            info_out->even_count[c] = uint8_t(ek);
        }
    }
    return true;
}

bool is_compressed(const std::vector<WindowVertex>& S, int j) {
    Window window(j);
    if (std::find(S.begin(), S.end(), kWindowRoot) == S.end()) {
        throw std::invalid_argument("is_compressed: root is not a member of the set");
    }
    for (WindowVertex v : S) {
        if (!window.valid_vertex(v)) throw std::invalid_argument("is_compressed: vertex outside window");
        if (window_class(v) != 0) {
            throw std::invalid_argument("is_compressed: set leaves the root's class");
        }
    }
    ProductSpec spec = window.as_product_spec();
    VertexSet verts;
    for (WindowVertex v : S) verts.push_back(Window::unpack(v, window.coords()));
    if (!spec.is_two_linked(canonical_vertex_set(verts))) {
        throw std::invalid_argument("is_compressed: set is not 2-linked");
    }
    CoordMasks masks(window.coords());
    for (WindowVertex v : S) masks.add(v);
    return masks_compressed(masks);
}

}  // namespace clusterexp
