#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "clusterexp/window.hpp"

namespace clusterexp {

// |N(S)| of a polymer in the product of t copies of K_{s,s}, as the affine
// form a*st + b*s + c (valid for s >= j, t >= 2j). a = |S|, b <= 0, c <= 0.
struct AffineSize {
    int a = 0;
    int b = 0;
    int c = 0;

    long eval(long s, long t) const { return a * s * t + b * s + c; }
    bool operator==(const AffineSize&) const = default;
};

// polymer: non-empty, 2-linked, within the root's class; coords = number of
// window coordinates carrying values. Throws std::invalid_argument otherwise.
AffineSize neighborhood_affine(const std::vector<WindowVertex>& polymer, int coords);

// The 2-linked subsets of a compressed set, precomputed once per set:
// vertex-index masks, affine neighbourhood sizes and the pairwise
// incompatibility relation (union 2-linked).
struct CandidatePolymers {
    std::vector<uint32_t> member_mask;  // bit i = vertices[i]; canonical order
    std::vector<int> size;
    std::vector<AffineSize> affine;
    std::vector<uint64_t> incompat;     // incompat[p] bit q; diagonal always set

    int count() const { return int(member_mask.size()); }

    static CandidatePolymers build(const CompressedSet& S);
};

// A multiset cover of a compressed set: candidate indices, non-decreasing.
struct CoverMultiset {
    std::vector<int> slots;

    int order() const { return int(slots.size()); }  // number of polymer slots
};

// Ordered cluster tuples realizing the multiset: k! / prod(multiplicity!).
mpz_class ordered_tuple_count(const CoverMultiset& cover);

// Emits each multiset of 2-linked subsets with union = all of S and total
// size = level exactly once (canonical non-decreasing candidate order).
// Partial covers that cannot reach total size `level` are discarded early.
void enumerate_covers(const CandidatePolymers& cands, int set_size, int level,
                      const std::function<void(const CoverMultiset&)>& emit);

}  // namespace clusterexp
