#include <doctest.h>

#include <set>

#include "clusterexp/enumerate.hpp"
#include "naive_oracle.hpp"

using namespace clusterexp;

namespace {

WindowVertex pack(std::initializer_list<int> coords) {
    return Window::pack(Vertex(coords));
}

std::set<std::vector<WindowVertex>> collect(int j, bool prune, int threads = 1,
                                            EnumCounters* counters = nullptr) {
    std::set<std::vector<WindowVertex>> out;
    EnumOptions opts;
    opts.j = j;
    opts.prune = prune;
    opts.threads = threads;
    uint64_t emitted = 0;
    generate_compressed(
        opts,
        [&](const CompressedSet& s) {
            ++emitted;
            out.insert(s.vertices);
        },
        counters);
    CHECK(emitted == out.size());  // exactly-once emission
    return out;
}

}  // namespace

TEST_CASE("window packing and classes") {
    WindowVertex v = pack({1, 1, 0, 0});
    CHECK(window_get(v, 0) == 1);
    CHECK(window_get(v, 1) == 1);
    CHECK(window_get(v, 2) == 0);
    CHECK(window_class(v) == 0);
    CHECK(window_class(pack({1, 0, 0, 0})) == 1);
    CHECK(Window::unpack(v, 4) == Vertex{1, 1, 0, 0});
}

TEST_CASE("two-step neighbourhood matches the product spec") {
    for (int j : {1, 2}) {
        Window window(j);
        ProductSpec spec = window.as_product_spec();
        std::vector<WindowVertex> nbrs;
        window.two_step_neighbors(kWindowRoot, nbrs);
        VertexSet expected_all = spec.second_neighborhood({Vertex(size_t(2 * j), 0)});
        VertexSet expected;
        for (const auto& v : expected_all) {
            if (spec.vertex_class(v) == 0) expected.push_back(v);
        }
        VertexSet got;
        for (WindowVertex v : nbrs) got.push_back(Window::unpack(v, 2 * j));
        CHECK(got == expected);
    }
}

TEST_CASE("compressed predicate on the worked size-2 sets") {
    // In the j = 2 window the only compressed sets of size <= 2 are the
    // root alone, {root, (1,1,0,0)} and {root, (2,0,0,0)}.
    CHECK(is_compressed({kWindowRoot}, 2));
    CHECK(is_compressed({kWindowRoot, pack({1, 1, 0, 0})}, 2));
    CHECK(is_compressed({kWindowRoot, pack({2, 0, 0, 0})}, 2));
    CHECK_FALSE(is_compressed({kWindowRoot, pack({3, 1, 0, 0, 0, 0})}, 3));
    CHECK_FALSE(is_compressed({kWindowRoot, pack({1, 0, 1, 0, 0, 0})}, 3));

    CHECK_THROWS_AS(is_compressed({pack({1, 1, 0, 0})}, 2), std::invalid_argument);
    CHECK_THROWS_AS(is_compressed({kWindowRoot, pack({1, 0, 0, 0})}, 2), std::invalid_argument);
    CHECK_THROWS_AS(is_compressed({kWindowRoot, pack({2, 2, 0, 0})}, 2), std::invalid_argument);
}

TEST_CASE("enumeration sizes 1 and 2") {
    auto j1 = collect(1, true);
    CHECK(j1 == std::set<std::vector<WindowVertex>>{{kWindowRoot}});

    auto j2 = collect(2, true);
    CHECK(j2.size() == 3);
    CHECK(j2.count({kWindowRoot, pack({1, 1, 0, 0})}) == 1);
    CHECK(j2.count({kWindowRoot, pack({2, 0, 0, 0})}) == 1);
}

TEST_CASE("enumeration equals the naive oracle and honors the prune flag") {
    for (int j : {1, 2, 3}) {
        auto fast = collect(j, true);
        auto unpruned = collect(j, false);
        CHECK(fast == unpruned);
        CHECK(fast == testing::naive_compressed_sets(j));
    }
}

TEST_CASE("size-3 count") {
    EnumCounters counters;
    auto sets = collect(3, true, 1, &counters);
    CHECK(sets.size() == 37);
    CHECK(counters.emitted == 37);
    CHECK(counters.emitted_by_size[1] == 1);
    CHECK(counters.emitted_by_size[2] == 2);
    CHECK(counters.emitted_by_size[3] == 34);
}

TEST_CASE("recursive calls visit distinct sets exactly once") {
    for (int j : {2, 3}) {
        EnumOptions opts;
        opts.j = j;
        opts.prune = false;
        std::set<std::vector<WindowVertex>> visited;
        uint64_t hook_calls = 0;
        EnumCounters counters;
        generate_compressed(
            opts, [](const CompressedSet&) {}, &counters,
            [&](const std::vector<WindowVertex>& path) {
                ++hook_calls;
                auto sorted = path;
                std::sort(sorted.begin(), sorted.end());
                visited.insert(sorted);
            });
        CHECK(counters.calls == hook_calls);
        CHECK(visited.size() == hook_calls);
        // Every 2-linked set in the window is visited when not pruning.
        uint64_t expected = 0;
        for (const auto& layer : testing::naive_two_linked_layers(j)) expected += layer.size();
        CHECK(hook_calls == expected);
    }
}

TEST_CASE("threaded enumeration matches single-threaded") {
    EnumCounters c1, c4;
    auto seq = collect(3, true, 1, &c1);
    auto par = collect(3, true, 4, &c4);
    CHECK(seq == par);
    CHECK(c1.emitted == c4.emitted);
    CHECK(c1.calls == c4.calls);
}

TEST_CASE("embedding counts of the size-2 sets") {
    std::vector<CompressedSet> sets;
    EnumOptions opts;
    opts.j = 2;
    generate_compressed(opts, [&](const CompressedSet& s) { sets.push_back(s); });
    REQUIRE(sets.size() == 3);

    const Polynomial s_var = Polynomial::variable(Var::s);
    const Polynomial t_var = Polynomial::variable(Var::t);
    for (const auto& set : sets) {
        Polynomial emb = set.embedding_count_half();
        if (set.size() == 1) {
            CHECK(emb == Polynomial(1));
        } else if (set.active == 2) {
            CHECK(emb == binom_affine(Var::t, 0, 2) * s_var * s_var);  // C(t,2) s^2
        } else {
            CHECK(emb == t_var * (s_var - Polynomial(1)));  // t (s-1)
        }
    }
}

TEST_CASE("extra symmetry convention keeps the size-2 sets") {
    EnumOptions opts;
    opts.j = 2;
    opts.extra_symmetry = true;
    EnumCounters counters;
    generate_compressed(opts, [](const CompressedSet&) {}, &counters);
    CHECK(counters.emitted == 3);
}
