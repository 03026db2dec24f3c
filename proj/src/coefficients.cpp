#include "clusterexp/coefficients.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "clusterexp/ursell.hpp"

namespace clusterexp {

namespace {

// Ursell values memoized by labeled incompatibility graph (order plus edge
// set over slot pairs); bounded by 2^15 keys for covers of size <= 6.
class UrsellTable {
public:
    Rational value(const SmallGraph& g) {
        uint32_t key = 0;
        int bit = 0;
        for (int p = 0; p < g.n; ++p) {
            for (int q = p + 1; q < g.n; ++q, ++bit) {
                if (g.has_edge(p, q)) key |= 1u << bit;
            }
        }
        auto [it, inserted] = table_.emplace(std::pair{g.n, key}, Rational(0));
        if (inserted) it->second = ursell(g);
        return it->second;
    }

private:
    std::map<std::pair<int, uint32_t>, Rational> table_;
};

struct SetContribution {
    // Accumulated otc * phi per (u exponent, lambda+1 exponent).
    std::map<std::pair<int, int>, Rational> weight_sums;
};

SmallGraph incompatibility_graph(const CandidatePolymers& cands, const CoverMultiset& cover) {
    SmallGraph g;
    g.n = cover.order();
    for (int p = 0; p < g.n; ++p) {
        for (int q = p + 1; q < g.n; ++q) {
            if (cands.incompat[size_t(cover.slots[size_t(p)])] >> cover.slots[size_t(q)] & 1) {
                g.add_edge(p, q);
            }
        }
    }
    return g;
}

}  // namespace

Polynomial normalized_cluster_weight(const std::vector<AffineSize>& sizes) {
    int j = 0, b = 0, c = 0;
    for (const AffineSize& z : sizes) {
        j += z.a;
        b += z.b;
        c += z.c;
    }
    if (b > 0 || c > 0) {
        throw std::invalid_argument(
            "normalized_cluster_weight: negative exponent (neighbourhood size bug)");
    }
    Monomial m;
    m.exp[int(Var::lambda)] = uint16_t(j);
    m.exp[int(Var::u)] = uint16_t(-b);
    Polynomial base = Polynomial::monomial(m, Rational(1));
    return base * (Polynomial::variable(Var::lambda) + Polynomial(1)).pow(unsigned(-c));
}

Polynomial coefficient(const CoefficientOptions& opts, CountsResult* counts_out) {
    if (opts.j < 1) throw std::invalid_argument("coefficient: j must be >= 1");
    const int j = opts.j;

    Polynomial total;
    std::mutex mu;
    uint64_t cover_total = 0;

    auto process = [&](const CompressedSet& S) {
        CandidatePolymers cands = CandidatePolymers::build(S);
        SetContribution contrib;
        UrsellTable local_ursell;
        uint64_t local_covers = 0;
        enumerate_covers(cands, S.size(), j, [&](const CoverMultiset& cover) {
            ++local_covers;
            int b = 0, c = 0;
            for (int slot : cover.slots) {
                b += cands.affine[size_t(slot)].b;
                c += cands.affine[size_t(slot)].c;
            }
            if (b > 0 || c > 0) throw std::logic_error("coefficient: affine sign violation");
            Rational phi = local_ursell.value(incompatibility_graph(cands, cover));
            Rational w = Rational(ordered_tuple_count(cover)) * phi;
            auto [it, inserted] = contrib.weight_sums.emplace(std::pair{-b, -c}, w);
            if (!inserted) it->second += w;
        });
        if (local_covers) {
            std::lock_guard<std::mutex> lock(mu);
            cover_total += local_covers;
        }
        if (contrib.weight_sums.empty()) return;

        // P_S(lambda, u) = lambda^j * sum over (B,C) of w_{B,C} u^B (1+lambda)^C.
        Polynomial poly_s;
        for (const auto& [bc, w] : contrib.weight_sums) {
            const auto& [B, C] = bc;
            if (opts.lambda) {
                const Rational lam = *opts.lambda;
                Rational coeff = w * lam.pow(unsigned(j)) * (lam + Rational(1)).pow(unsigned(C));
                poly_s += Polynomial::monomial(Monomial::var(Var::u, uint16_t(B)), coeff);
            } else {
                Monomial m;
                m.exp[int(Var::lambda)] = uint16_t(j);
                m.exp[int(Var::u)] = uint16_t(B);
                poly_s += Polynomial::monomial(m, w) *
                          (Polynomial::variable(Var::lambda) + Polynomial(1)).pow(unsigned(C));
            }
        }
        poly_s *= S.embedding_count_half().scaled(Rational(1, 2 * S.size()));

        std::lock_guard<std::mutex> lock(mu);
        total += poly_s;
    };

    EnumOptions eopts;
    eopts.j = j;
    eopts.prune = opts.prune;
    eopts.threads = opts.threads;
    EnumCounters counters;
    generate_compressed(eopts, process, &counters);
    if (counts_out) {
        counts_out->compressed = counters.emitted;
        counts_out->covers = cover_total;
        counts_out->compressed_by_size = counters.emitted_by_size;
        counts_out->calls = counters.calls;
    }
    return total;
}

CountsResult enumeration_counts(int j, bool prune, int threads, bool extra_symmetry) {
    CountsResult out;
    out.compressed_by_size.assign(size_t(j) + 1, 0);
    std::mutex mu;
    uint64_t covers = 0;

    EnumOptions eopts;
    eopts.j = j;
    eopts.prune = prune;
    eopts.threads = threads;
    eopts.extra_symmetry = extra_symmetry;
    EnumCounters counters;
    generate_compressed(
        eopts,
        [&](const CompressedSet& S) {
            CandidatePolymers cands = CandidatePolymers::build(S);
            uint64_t local = 0;
            enumerate_covers(cands, S.size(), j, [&](const CoverMultiset&) { ++local; });
            std::lock_guard<std::mutex> lock(mu);
            covers += local;
        },
        &counters);

    out.compressed = counters.emitted;
    out.covers = covers;
    for (size_t k = 0; k < out.compressed_by_size.size() && k < counters.emitted_by_size.size();
         ++k) {
        out.compressed_by_size[k] = counters.emitted_by_size[k];
    }
    out.calls = counters.calls;
    return out;
}

TruncatedEstimate truncated_estimate(int s, int t, const Rational& lambda, int k, int threads) {
    if (s < 1 || t < 1 || k < 0) {
        throw std::invalid_argument("truncated_estimate: need s, t >= 1 and k >= 0");
    }
    auto scaled_sum = [&](const Rational& lam) {
        // sum_{j<=k} Lhat_j(s,t,lam) * (2s)^t / (1+lam)^{j s t}, exactly.
        mpz_class n;  // (2s)^t
        mpz_ui_pow_ui(n.get_mpz_t(), unsigned(2 * s), unsigned(t));
        const Rational u = (lam + Rational(1)).pow(unsigned(s));
        Rational sum(0);
        for (int j = 1; j <= k; ++j) {
            CoefficientOptions copts;
            copts.j = j;
            copts.lambda = lam;
            copts.threads = threads;
            Polynomial lhat = coefficient(copts);
            Rational value = poly_eval_full(lhat, Rational(s), Rational(t), lam, u);
            sum += value * Rational(n) /
                   (lam + Rational(1)).pow(unsigned(j) * unsigned(s) * unsigned(t));
        }
        return sum;
    };
    auto log_estimate = [&](const Rational& lam) {
        mpz_class n;
        mpz_ui_pow_ui(n.get_mpz_t(), unsigned(2 * s), unsigned(t));
        BigFloat half_n_log(Rational(mpz_class(n / 2)));
        return half_n_log * BigFloat::log_of(lam + Rational(1)) + BigFloat::log2_constant() +
               BigFloat(scaled_sum(lam));
    };
    TruncatedEstimate out;
    out.log_z = log_estimate(lambda);
    out.log_i = lambda == Rational(1) ? out.log_z : log_estimate(Rational(1));
    return out;
}

}  // namespace clusterexp
