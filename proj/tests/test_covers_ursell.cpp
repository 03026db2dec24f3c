#include <doctest.h>

#include <map>
#include <set>

#include "clusterexp/covers.hpp"
#include "clusterexp/enumerate.hpp"
#include "clusterexp/ursell.hpp"

using namespace clusterexp;

namespace {

WindowVertex pack(std::initializer_list<int> coords) {
    return Window::pack(Vertex(coords));
}

std::vector<CompressedSet> compressed_sets(int j) {
    std::vector<CompressedSet> out;
    EnumOptions opts;
    opts.j = j;
    generate_compressed(opts, [&](const CompressedSet& s) { out.push_back(s); });
    return out;
}

SmallGraph complete_graph(int n) {
    SmallGraph g;
    g.n = n;
    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) g.add_edge(i, k);
    }
    return g;
}

SmallGraph path_graph(int n) {
    SmallGraph g;
    g.n = n;
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

}  // namespace

TEST_CASE("neighbourhood affine sizes of the worked sets") {
    // Singleton: d = st. Size-2 diagonal set: 2d - 2. Size-2 straight set:
    // 2d - s.
    CHECK(neighborhood_affine({kWindowRoot}, 4) == AffineSize{1, 0, 0});
    CHECK(neighborhood_affine({kWindowRoot, pack({1, 1, 0, 0})}, 4) == AffineSize{2, 0, -2});
    CHECK(neighborhood_affine({kWindowRoot, pack({2, 0, 0, 0})}, 4) == AffineSize{2, -1, 0});

    CHECK_THROWS_AS(neighborhood_affine({}, 4), std::invalid_argument);
    CHECK_THROWS_AS(neighborhood_affine({pack({1, 0, 0, 0})}, 4), std::invalid_argument);
    CHECK_THROWS_AS(neighborhood_affine({kWindowRoot, pack({2, 2, 0, 0})}, 4),
                    std::invalid_argument);
}

TEST_CASE("affine sizes match explicit adjacency in the window") {
    // Every 2-linked subset of every compressed set for j <= 2, evaluated at
    // (s,t) = (2,4), against degree sums in the j = 2 window itself.
    Window window(2);
    ProductSpec spec = window.as_product_spec();
    for (const auto& set : compressed_sets(2)) {
        CandidatePolymers cands = CandidatePolymers::build(set);
        for (int p = 0; p < cands.count(); ++p) {
            VertexSet verts;
            for (uint32_t bits = cands.member_mask[size_t(p)]; bits; bits &= bits - 1) {
                verts.push_back(
                    Window::unpack(set.vertices[size_t(__builtin_ctz(bits))], 4));
            }
            std::set<Vertex> nbrs;
            for (const auto& v : verts) {
                for (const auto& w : spec.neighbors(v)) nbrs.insert(w);
            }
            for (const auto& v : verts) nbrs.erase(v);
            CHECK(cands.affine[size_t(p)].eval(2, 4) == long(nbrs.size()));
        }
    }
}

TEST_CASE("cover enumeration for the size-2 sets") {
    uint64_t total = 0;
    for (const auto& set : compressed_sets(2)) {
        CandidatePolymers cands = CandidatePolymers::build(set);
        std::vector<CoverMultiset> covers;
        enumerate_covers(cands, set.size(), 2, [&](const CoverMultiset& c) {
            covers.push_back(c);
        });
        total += covers.size();
        if (set.size() == 1) {
            // Only {root} twice.
            REQUIRE(covers.size() == 1);
            CHECK(covers[0].slots == std::vector<int>{0, 0});
            CHECK(ordered_tuple_count(covers[0]) == 1);
        } else {
            // The whole set, or the two singletons.
            REQUIRE(covers.size() == 2);
            std::multiset<size_t> orders{covers[0].slots.size(), covers[1].slots.size()};
            CHECK(orders == std::multiset<size_t>{1, 2});
            for (const auto& c : covers) {
                if (c.slots.size() == 2) {
                    CHECK(c.slots[0] != c.slots[1]);
                    CHECK(ordered_tuple_count(c) == 2);
                }
            }
        }
    }
    CHECK(total == 5);
}

TEST_CASE("total covers at size 3") {
    uint64_t total = 0;
    for (const auto& set : compressed_sets(3)) {
        CandidatePolymers cands = CandidatePolymers::build(set);
        enumerate_covers(cands, set.size(), 3, [&](const CoverMultiset&) { ++total; });
    }
    CHECK(total == 151);
}

TEST_CASE("ordered tuple counts") {
    CHECK(ordered_tuple_count({{0, 0}}) == 1);
    CHECK(ordered_tuple_count({{0, 1}}) == 2);
    CHECK(ordered_tuple_count({{0, 1, 2}}) == 6);
    CHECK(ordered_tuple_count({{0, 0, 1}}) == 3);
}

TEST_CASE("multiset covers against direct ordered enumeration") {
    // Sum of ordered_tuple_count over multiset covers equals the number of
    // ordered tuples with union = S and total size = j, enumerated directly.
    for (int j : {2, 3}) {
        for (const auto& set : compressed_sets(j)) {
            CandidatePolymers cands = CandidatePolymers::build(set);
            mpz_class via_multisets = 0;
            enumerate_covers(cands, set.size(), j, [&](const CoverMultiset& c) {
                via_multisets += ordered_tuple_count(c);
            });
            const uint32_t full = (1u << set.size()) - 1;
            uint64_t direct = 0;
            auto rec = [&](auto&& self, uint32_t covered, int remaining) -> void {
                if (remaining == 0) {
                    if (covered == full) ++direct;
                    return;
                }
                for (int idx = 0; idx < cands.count(); ++idx) {
                    if (cands.size[size_t(idx)] <= remaining) {
                        self(self, covered | cands.member_mask[size_t(idx)],
                             remaining - cands.size[size_t(idx)]);
                    }
                }
            };
            rec(rec, 0, j);
            CHECK(via_multisets == direct);
        }
    }
}

TEST_CASE("ursell values") {
    CHECK(ursell(complete_graph(1)) == Rational(1));
    CHECK(ursell(complete_graph(2)) == Rational(-1, 2));
    CHECK(ursell(complete_graph(3)) == Rational(1, 3));
    CHECK(tutte_10(complete_graph(3)) == 2);
    CHECK(tutte_10(path_graph(4)) == 1);

    SmallGraph disconnected;
    disconnected.n = 2;
    CHECK_THROWS_AS(ursell(disconnected), std::invalid_argument);
}

TEST_CASE("acyclic orientation counts") {
    CHECK(acyclic_orientations_unique_sink(complete_graph(1), 0) == 1);
    CHECK(acyclic_orientations_unique_sink(complete_graph(2), 0) == 1);
    CHECK(acyclic_orientations_unique_sink(complete_graph(3), 0) == 2);
    // Path a-b-c: orientations with unique sink at an end vs the middle.
    CHECK(acyclic_orientations_unique_sink(path_graph(3), 0) == 1);
    CHECK(acyclic_orientations_unique_sink(path_graph(3), 1) == 1);
}

TEST_CASE("deletion-contraction agrees with orientation counting on <= 5 nodes") {
    for (int n = 1; n <= 5; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (uint32_t edges = 0; edges < (1u << pairs); ++edges) {
            SmallGraph g;
            g.n = n;
            int bit = 0;
            for (int i = 0; i < n; ++i) {
                for (int k = i + 1; k < n; ++k, ++bit) {
                    if (edges >> bit & 1) g.add_edge(i, k);
                }
            }
            if (!g.connected()) continue;
            const mpz_class t = tutte_10(g);
            for (int sink = 0; sink < n; ++sink) {
                CHECK(mpz_class(acyclic_orientations_unique_sink(g, sink)) == t);
            }
            Rational phi = ursell(g);
            CHECK(phi.is_negative() == (n % 2 == 0));
        }
    }
}
