#include "clusterexp/ursell.hpp"

#include <stdexcept>
#include <vector>

namespace clusterexp {

bool SmallGraph::connected() const {
    if (n == 0) return false;
    uint32_t reached = 1;
    while (true) {
        uint32_t grown = reached;
        for (uint32_t bits = reached; bits; bits &= bits - 1) {
            grown |= adj[size_t(__builtin_ctz(bits))];
        }
        if (grown == reached) break;
        reached = grown;
    }
    return reached == (1u << n) - 1;
}

int SmallGraph::edge_count() const {
    int twice = 0;
    for (int i = 0; i < n; ++i) twice += __builtin_popcount(adj[size_t(i)]);
    return twice / 2;
}

namespace {

// Merges `gone` into `keep` and compacts labels; bitmask rows deduplicate
// parallel edges and the contracted edge itself is dropped.
SmallGraph contract(const SmallGraph& g, int keep, int gone) {
    std::array<uint16_t, 16> rows = g.adj;
    for (int i = 0; i < g.n; ++i) {
        if (i == gone || i == keep) continue;
        if (rows[size_t(i)] >> gone & 1) {
            rows[size_t(i)] = uint16_t((rows[size_t(i)] & ~(1u << gone)) | (1u << keep));
        }
    }
    rows[size_t(keep)] = uint16_t((g.adj[size_t(keep)] | g.adj[size_t(gone)]) &
                                  ~((1u << keep) | (1u << gone)));
    SmallGraph h;
    h.n = g.n - 1;
    auto squeeze = [&](uint16_t row) {
        uint16_t low = row & uint16_t((1u << gone) - 1);
        uint16_t high = uint16_t((row >> (gone + 1)) << gone);
        return uint16_t(low | high);
    };
    for (int i = 0, out = 0; i < g.n; ++i) {
        if (i == gone) continue;
        h.adj[size_t(out++)] = squeeze(rows[size_t(i)]);
    }
    return h;
}

bool is_bridge(const SmallGraph& g, int a, int b) {
    // Connectivity of g - ab from a; the graph is connected beforehand.
    uint32_t reached = 1u << a;
    while (true) {
        uint32_t grown = reached;
        for (uint32_t bits = reached; bits; bits &= bits - 1) {
            int v = __builtin_ctz(bits);
            uint16_t row = g.adj[size_t(v)];
            if (v == a) row &= uint16_t(~(1u << b));
            if (v == b) row &= uint16_t(~(1u << a));
            grown |= row;
        }
        if (grown == reached) break;
        reached = grown;
    }
    return reached != (1u << g.n) - 1;
}

mpz_class tutte_10_rec(const SmallGraph& g) {
    if (g.n == 1) return 1;
    // Any edge will do; take the first one off the lowest-degree-ordered row.
    int a = -1, b = -1;
    for (int i = 0; i < g.n && a < 0; ++i) {
        uint16_t row = g.adj[size_t(i)] >> (i + 1) << (i + 1);
        if (row) {
            a = i;
            b = __builtin_ctz(row);
        }
    }
    if (a < 0) return 0;  // isolated vertices: disconnected, T(1,0) = 0
    if (is_bridge(g, a, b)) return tutte_10_rec(contract(g, a, b));
    SmallGraph del = g;
    del.adj[size_t(a)] &= uint16_t(~(1u << b));
    del.adj[size_t(b)] &= uint16_t(~(1u << a));
    return tutte_10_rec(contract(g, a, b)) + tutte_10_rec(del);
}

}  // namespace

mpz_class tutte_10(const SmallGraph& g) {
    if (!g.connected()) throw std::invalid_argument("tutte_10: graph must be connected");
    return tutte_10_rec(g);
}

Rational ursell(const SmallGraph& g) {
    if (!g.connected()) throw std::invalid_argument("ursell: incompatibility graph disconnected");
    mpz_class t = tutte_10_rec(g);
    if (t <= 0) throw std::logic_error("ursell: T(1,0) must be positive on connected graphs");
    mpz_class sign = (g.n % 2 == 1) ? 1 : -1;
    return Rational(sign * t, factorial(unsigned(g.n)));
}

uint64_t acyclic_orientations_unique_sink(const SmallGraph& g, int sink) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < g.n; ++i) {
        for (uint16_t row = uint16_t(g.adj[size_t(i)] >> (i + 1) << (i + 1)); row;
             row &= uint16_t(row - 1)) {
            edges.push_back({i, __builtin_ctz(row)});
        }
    }
    const int m = int(edges.size());
    uint64_t count = 0;
    for (uint32_t orient = 0; orient < (1u << m); ++orient) {
        std::array<uint16_t, 16> out{};
        for (int e = 0; e < m; ++e) {
            auto [x, y] = edges[size_t(e)];
            if (orient >> e & 1) {
                out[size_t(x)] |= uint16_t(1u << y);
            } else {
                out[size_t(y)] |= uint16_t(1u << x);
            }
        }
        // Repeatedly peel vertices with no remaining out-edges; acyclic iff
        // everything peels.
        uint32_t alive = (1u << g.n) - 1;
        bool progress = true;
        while (progress) {
            progress = false;
            for (uint32_t bits = alive; bits; bits &= bits - 1) {
                int v = __builtin_ctz(bits);
                if ((out[size_t(v)] & alive) == 0) {
                    alive &= ~(1u << v);
                    progress = true;
                }
            }
        }
        if (alive != 0) continue;  // a cycle survived
        int sinks = 0, the_sink = -1;
        for (int v = 0; v < g.n; ++v) {
            if (out[size_t(v)] == 0) {
                ++sinks;
                the_sink = v;
            }
        }
        if (sinks == 1 && the_sink == sink) ++count;
    }
    return count;
}

}  // namespace clusterexp
