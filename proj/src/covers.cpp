#include "clusterexp/covers.hpp"

#include <algorithm>
#include <stdexcept>

#include "clusterexp/rational.hpp"

namespace clusterexp {

namespace {

// Distance between same-class window vertices, capped at 3. Base distances in
// K_{s,s}: 1 across parity, 2 within parity.
inline int window_distance_capped(WindowVertex a, WindowVertex b) {
    int d = 0;
    uint64_t diff = a ^ b;
    while (diff) {
        const int shift = ((63 - __builtin_clzll(diff)) / 4) * 4;
        d += ((diff >> shift) & 1) ? 1 : 2;  // parity flip = adjacent in K_{s,s}
        if (d > 2) return 3;
        diff &= ~(uint64_t(0xF) << shift);
    }
    return d;
}

// Connectivity of `mask` under the pairwise adjacency rows.
inline bool mask_connected(uint32_t mask, const std::vector<uint32_t>& adj) {
    if (mask == 0) return false;
    uint32_t frontier = mask & (~mask + 1);  // lowest set bit
    while (true) {
        uint32_t grown = frontier;
        uint32_t bits = frontier;
        while (bits) {
            int i = __builtin_ctz(bits);
            bits &= bits - 1;
            grown |= adj[size_t(i)] & mask;
        }
        if (grown == frontier) break;
        frontier = grown;
    }
    return frontier == mask;
}

}  // namespace

AffineSize neighborhood_affine(const std::vector<WindowVertex>& polymer, int coords) {
    const int m = int(polymer.size());
    if (m == 0) throw std::invalid_argument("neighborhood_affine: empty polymer");
    for (WindowVertex v : polymer) {
        if (window_class(v) != 0) {
            throw std::invalid_argument("neighborhood_affine: polymer leaves the root's class");
        }
    }
    if (m > 1) {
        std::vector<uint32_t> adj(size_t(m), 0);
        for (int i = 0; i < m; ++i) {
            for (int k = i + 1; k < m; ++k) {
                if (window_distance_capped(polymer[size_t(i)], polymer[size_t(k)]) <= 2) {
                    adj[size_t(i)] |= 1u << k;
                    adj[size_t(k)] |= 1u << i;
                }
            }
        }
        if (!mask_connected((1u << m) - 1, adj)) {
            throw std::invalid_argument("neighborhood_affine: polymer is not 2-linked");
        }
    }

    // Active coordinates of the polymer itself.
    uint32_t active = 0;
    for (WindowVertex v : polymer) {
        for (int c = 0; c < coords; ++c) {
            if (window_get(v, c) != 0) active |= 1u << c;
        }
    }
    const int na = __builtin_popcount(active);

    // Per active coordinate, members with equal remaining coordinates and
    // equal value parity share their coordinate-i neighbourhood; each group
    // contributes s vertices. Inactive coordinates contribute |S|*(t-|A|)*s.
    int groups = 0;
    std::vector<WindowVertex> keys;
    for (uint32_t bits = active; bits; bits &= bits - 1) {
        const int c = __builtin_ctz(bits);
        const uint64_t sel = uint64_t(0xF) << (4 * (15 - c));
        keys.clear();
        for (WindowVertex v : polymer) {
            keys.push_back((v & ~sel) | uint64_t(window_get(v, c) & 1) << 62);
        }
        std::sort(keys.begin(), keys.end());
        groups += int(std::unique(keys.begin(), keys.end()) - keys.begin());
    }

    // Vertices reachable along two different coordinates from members of the
    // polymer are double counted above; every such vertex agrees with some
    // member except at one coordinate whose value is used elsewhere in the
    // polymer. Enumerate those candidates and subtract (count - 1) for each.
    std::vector<WindowVertex> candidates;
    for (uint32_t bits = active; bits; bits &= bits - 1) {
        const int c = __builtin_ctz(bits);
        uint16_t used = 0;
        for (WindowVertex v : polymer) used |= uint16_t(1u << window_get(v, c));
        for (WindowVertex v : polymer) {
            const int own = window_get(v, c);
            for (uint16_t vals = used & (((own & 1) ? kEvenBits : kOddBits)); vals;
                 vals &= vals - 1) {
                candidates.push_back(window_set(v, c, __builtin_ctz(vals)));
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    int corrections = 0;
    for (WindowVertex u : candidates) {
        int hits = 0;
        for (uint32_t bits = active; bits; bits &= bits - 1) {
            const int c = __builtin_ctz(bits);
            const uint64_t sel = uint64_t(0xF) << (4 * (15 - c));
            for (WindowVertex v : polymer) {
                if ((v & ~sel) == (u & ~sel) && (v & sel) != (u & sel)) {
                    ++hits;
                    break;
                }
            }
        }
        if (hits > 1) corrections += hits - 1;
    }

    AffineSize out;
    out.a = m;
    out.b = groups - m * na;
    out.c = -corrections;
    return out;
}

CandidatePolymers CandidatePolymers::build(const CompressedSet& S) {
    const int m = S.size();
    std::vector<uint32_t> adj(size_t(m), 0);
    for (int i = 0; i < m; ++i) {
        for (int k = i + 1; k < m; ++k) {
            if (window_distance_capped(S.vertices[size_t(i)], S.vertices[size_t(k)]) <= 2) {
                adj[size_t(i)] |= 1u << k;
                adj[size_t(k)] |= 1u << i;
            }
        }
    }

    CandidatePolymers out;
    std::vector<WindowVertex> verts;
    for (uint32_t mask = 1; mask < (1u << m); ++mask) {
        if (!mask_connected(mask, adj)) continue;
        verts.clear();
        for (uint32_t bits = mask; bits; bits &= bits - 1) {
            verts.push_back(S.vertices[size_t(__builtin_ctz(bits))]);
        }
        out.member_mask.push_back(mask);
        out.size.push_back(__builtin_popcount(mask));
        out.affine.push_back(neighborhood_affine(verts, 2 * S.j));
    }
    // Canonical order: lexicographic on the sorted vertex lists. Vertices are
    // indexed in sorted order, so this is lex order on ascending index lists.
    std::vector<int> perm(out.member_mask.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
    auto lex_less = [&](int p, int q) {
        uint32_t a = out.member_mask[size_t(p)];
        uint32_t b = out.member_mask[size_t(q)];
        while (a && b) {
            int ia = __builtin_ctz(a);
            int ib = __builtin_ctz(b);
            if (ia != ib) return ia < ib;
            a &= a - 1;
            b &= b - 1;
        }
        return a == 0 && b != 0;
    };
    std::sort(perm.begin(), perm.end(), lex_less);
    CandidatePolymers sorted;
    for (int p : perm) {
        sorted.member_mask.push_back(out.member_mask[size_t(p)]);
        sorted.size.push_back(out.size[size_t(p)]);
        sorted.affine.push_back(out.affine[size_t(p)]);
    }
    const int nc = sorted.count();
    sorted.incompat.assign(size_t(nc), 0);
    for (int p = 0; p < nc; ++p) {
        sorted.incompat[size_t(p)] |= uint64_t(1) << p;  // S u S is 2-linked
        for (int q = p + 1; q < nc; ++q) {
            if (mask_connected(sorted.member_mask[size_t(p)] | sorted.member_mask[size_t(q)],
                               adj)) {
                sorted.incompat[size_t(p)] |= uint64_t(1) << q;
                sorted.incompat[size_t(q)] |= uint64_t(1) << p;
            }
        }
    }
    return sorted;
}

mpz_class ordered_tuple_count(const CoverMultiset& cover) {
    mpz_class r = factorial(unsigned(cover.slots.size()));
    size_t i = 0;
    while (i < cover.slots.size()) {
        size_t run = 1;
        while (i + run < cover.slots.size() && cover.slots[i + run] == cover.slots[i]) ++run;
        r /= factorial(unsigned(run));
        i += run;
    }
    return r;
}

namespace {

void covers_rec(const CandidatePolymers& cands, uint32_t full, int remaining, int min_idx,
                uint32_t covered, CoverMultiset& cover,
                const std::function<void(const CoverMultiset&)>& emit) {
    if (remaining == 0) {
        if (covered == full) emit(cover);
        return;
    }
    for (int idx = min_idx; idx < cands.count(); ++idx) {
        const int sz = cands.size[size_t(idx)];
        if (sz > remaining) continue;
        const uint32_t covered2 = covered | cands.member_mask[size_t(idx)];
        // Each still-uncovered vertex costs at least one unit of the budget.
        if (__builtin_popcount(full & ~covered2) > remaining - sz) continue;
        cover.slots.push_back(idx);
        covers_rec(cands, full, remaining - sz, idx, covered2, cover, emit);
        cover.slots.pop_back();
    }
}

}  // namespace

void enumerate_covers(const CandidatePolymers& cands, int set_size, int level,
                      const std::function<void(const CoverMultiset&)>& emit) {
    if (set_size > level) return;
    CoverMultiset cover;
    covers_rec(cands, (1u << set_size) - 1, level, 0, 0, cover, emit);
}

}  // namespace clusterexp
