#include <doctest.h>

#include "clusterexp/explicit_graph.hpp"
#include "clusterexp/verify.hpp"

using namespace clusterexp;

namespace {

ExplicitGraph graph(const char* token) { return ExplicitGraph{ProductSpec::parse(token)}; }

const Rational kLambdas[] = {Rational(1, 2), Rational(1), Rational(2)};

}  // namespace

TEST_CASE("independence polynomial on tiny graphs") {
    auto c4 = graph("C4");
    CHECK(c4.z_exact(Rational(1)) == Rational(7));

    // A single edge: 1 + 2 lambda.
    ExplicitGraph edge{ProductSpec::parse("Kss:1")};
    for (const auto& lam : kLambdas) {
        CHECK(edge.z_exact(lam) == Rational(1) + Rational(2) * lam);
    }

    // Two independent routes agree on the 3-cube (and friends).
    for (const char* token : {"Q3", "C6", "K22"}) {
        auto g = graph(token);
        for (const auto& lam : kLambdas) CHECK(g.z_exact(lam) == g.z_exact_alt(lam));
    }
}

TEST_CASE("closure") {
    auto c4 = graph("C4");
    // Both vertices of one side of C4 have the same neighbourhood.
    CHECK(c4.closure(0b01, Side::E) == 0b11);
    CHECK(c4.closure(0, Side::E) == 0);

    auto q3 = graph("Q3");
    for (int v = 0; v < q3.side_size(Side::E); ++v) {
        CHECK(q3.closure(1u << v, Side::E) == 1u << v);
    }
    CHECK_THROWS_AS(c4.closure(0b100, Side::E), std::invalid_argument);

    // A subseteq [A] and N(A) = N([A]) for every subset of each side.
    for (const char* token : {"C4", "Q3", "K22"}) {
        auto g = graph(token);
        for (Side d : {Side::E, Side::O}) {
            const uint32_t full = (1u << g.side_size(d)) - 1;
            for (uint32_t a = 0; a <= full; ++a) {
                uint32_t cl = g.closure(a, d);
                CHECK((a & ~cl) == 0);
                CHECK(g.neighborhood(a, d) == g.neighborhood(cl, d));
            }
        }
    }
}

TEST_CASE("polymer partition functions") {
    auto c4 = graph("C4");
    for (const auto& lam : kLambdas) {
        // No valid polymers on C4: each singleton closure has size 2 > 1.
        CHECK(c4.xi_exact(Side::E, lam) == Rational(1));
        CHECK(c4.xi_exact(Side::O, lam) == Rational(1));
    }
    CHECK(c4.zhat_exact(Rational(1)) == Rational(8));

    for (const char* token : {"C4", "Q3", "K22"}) {
        auto g = graph(token);
        for (const auto& lam : kLambdas) {
            CHECK(g.xi_exact(Side::E, lam) >= Rational(1));
            CHECK(g.xi_exact(Side::O, lam) >= Rational(1));
        }
    }
}

TEST_CASE("capture accounting") {
    auto c4 = graph("C4");
    auto rep = c4.capture_report(Rational(1));
    CHECK(rep.z == Rational(7));
    CHECK(rep.zhat == Rational(8));
    CHECK(rep.diff == Rational(1));  // the empty set is captured twice
    CHECK(rep.captured_both_sum == Rational(1));
    CHECK(rep.identity_holds);
    CHECK(rep.prop31_holds);

    for (const char* token : {"Q3", "K22", "K22xK11"}) {
        auto g = graph(token);
        for (const auto& lam : kLambdas) {
            auto r = g.capture_report(lam);
            CHECK(r.identity_holds);
            CHECK(r.prop31_holds);
            CHECK(r.zhat >= r.z);
        }
    }
}

TEST_CASE("cluster expansion partial sums on explicit graphs") {
    // No valid polymers: log Xi = 0 and all partial sums vanish.
    auto c4 = graph("C4");
    for (const auto& partial : c4.cluster_sum_partials(Side::E, Rational(1), 4)) {
        CHECK(partial == Rational(0));
    }

    auto q3 = graph("Q3");
    const Rational lam(1);
    auto partials = q3.cluster_sum_partials(Side::E, lam, 4);
    REQUIRE(partials.size() == 4);
    // k = 1: sum of single-polymer weights; Q3 has 4 singleton polymers per
    // side, each of weight 1/2^3.
    CHECK(partials[0] == Rational(4, 8));
    // |log Xi - partial| shrinks as the truncation grows.
    BigFloat log_xi = BigFloat::log_of(q3.xi_exact(Side::E, lam));
    BigFloat prev_err;
    for (size_t k = 0; k < partials.size(); ++k) {
        BigFloat err = (log_xi - BigFloat(partials[k])).abs();
        if (k > 0) CHECK(err <= prev_err);
        prev_err = err;
    }
}

TEST_CASE("measure tables") {
    auto c4 = graph("C4");
    auto table = c4.measure_table(Rational(1));
    CHECK(table.sum(table.mu) == Rational(1));
    CHECK(table.sum(table.muhat) == Rational(1));
    // muhat(empty) = 2/8, mu(empty) = 1/7.
    REQUIRE(table.keys[0] == 0);
    CHECK(table.muhat[0] == Rational(1, 4));
    CHECK(table.mu[0] == Rational(1, 7));
    // TV distance = sum over muhat > mu of the difference.
    Rational tv(0);
    for (size_t i = 0; i < table.keys.size(); ++i) {
        if (table.muhat[i] > table.mu[i]) tv += table.muhat[i] - table.mu[i];
    }
    CHECK(table.tv_muhat_mu == tv);

    for (const char* token : {"Q3", "K22"}) {
        auto g = graph(token);
        for (const auto& lam : kLambdas) {
            auto t = g.measure_table(lam);
            CHECK(t.sum(t.mu) == Rational(1));
            CHECK(t.sum(t.muhat) == Rational(1));
            Rational nu_e(0), nu_o(0);
            for (const auto& [mask, p] : t.nu_e) nu_e += p;
            for (const auto& [mask, p] : t.nu_o) nu_o += p;
            CHECK(nu_e == Rational(1));
            CHECK(nu_o == Rational(1));
        }
    }
}

TEST_CASE("weights double exactly when both sides capture") {
    auto q3 = graph("Q3");
    const Rational lam(2);
    auto table = q3.measure_table(lam);
    const Rational z = q3.z_exact(lam);
    const Rational zhat = q3.zhat_exact(lam);
    for (size_t i = 0; i < table.keys.size(); ++i) {
        const uint32_t e_mask = uint32_t(table.keys[i] & 0xffffffffu);
        const uint32_t o_mask = uint32_t(table.keys[i] >> 32);
        const bool both = q3.valid_config(e_mask, Side::E) && q3.valid_config(o_mask, Side::O);
        const Rational omega = lam.pow(
            unsigned(__builtin_popcount(e_mask) + __builtin_popcount(o_mask)));
        const Rational omega_hat = table.muhat[i] * zhat;
        CHECK(omega_hat == (both ? Rational(2) * omega : omega));
        CHECK(table.mu[i] * z == omega);
    }
}

TEST_CASE("sampler matches the exact table on C4") {
    auto c4 = graph("C4");
    const Rational lam(1);
    auto table = c4.measure_table(lam);
    std::mt19937_64 rng(12345);
    const int n = 20000;
    std::map<uint64_t, int> hist;
    for (int i = 0; i < n; ++i) hist[c4.sample_muhat(lam, rng)]++;
    // Every sampled set is independent and known; frequencies within 3 sigma.
    int covered = 0;
    for (size_t i = 0; i < table.keys.size(); ++i) {
        auto it = hist.find(table.keys[i]);
        const int count = it == hist.end() ? 0 : it->second;
        covered += count;
        const double p = table.muhat[i].num().get_d() / table.muhat[i].den().get_d();
        const double sigma = std::sqrt(p * (1 - p) * n);
        CHECK(std::abs(count - p * n) <= 3 * sigma + 1e-9);
    }
    CHECK(covered == n);
}

TEST_CASE("isoperimetry checks") {
    auto c4 = graph("C4");
    auto rep = c4.verify_isoperimetry();
    CHECK(rep.ok());
    CHECK(rep.co_degree == 2);

    auto k22sq = graph("K22xK22");
    auto rep2 = k22sq.verify_isoperimetry();
    CHECK(rep2.ok());
    CHECK(rep2.co_degree == 2);
    CHECK(rep2.m == 4);
}

TEST_CASE("verify suites produce passing reports") {
    for (const char* suite : {"identities", "isoperimetry", "sampler"}) {
        VerifyOptions opts;
        opts.suite = suite;
        opts.graph = "C4";
        opts.samples = 20000;
        bool passed = false;
        std::string report = run_verify(opts, &passed);
        CHECK(passed);
        CHECK(report.find("\"schema\": 1") != std::string::npos);
    }
}
