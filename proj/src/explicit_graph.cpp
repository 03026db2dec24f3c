#include "clusterexp/explicit_graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "clusterexp/covers.hpp"
#include "clusterexp/ursell.hpp"

namespace clusterexp {

namespace {

Rational pow1p(const Rational& lambda, unsigned e) { return (lambda + Rational(1)).pow(e); }

// Iterate submasks of `space` in ascending numeric order.
template <typename Fn>
void for_each_submask(uint32_t space, Fn&& fn) {
    uint32_t sub = 0;
    while (true) {
        fn(sub);
        if (sub == space) break;
        sub = (sub - space) & space;  // next submask in ascending order
    }
}

}  // namespace

ExplicitGraph::ExplicitGraph(const ProductSpec& spec) : spec_(spec), name_(spec.name()) {
    if (spec.vertex_count() > kMaxVertices) {
        throw std::invalid_argument("explicit graph too large (n > 32): " + name_);
    }
    n_ = int(spec.vertex_count());
    degree_ = spec.degree();

    const auto vertices = spec.all_vertices();
    side_of_.resize(size_t(n_));
    side_vertices_.assign(2, {});
    std::vector<int> local_index(size_t(n_), 0);
    for (int v = 0; v < n_; ++v) {
        int cls = spec.vertex_class(vertices[size_t(v)]);
        side_of_[size_t(v)] = cls;
        local_index[size_t(v)] = int(side_vertices_[size_t(cls)].size());
        side_vertices_[size_t(cls)].push_back(v);
    }
    if (side_vertices_[0].size() != side_vertices_[1].size()) {
        throw std::invalid_argument("graph is not balanced: " + name_);
    }

    std::map<Vertex, int> index_of;
    for (int v = 0; v < n_; ++v) index_of[vertices[size_t(v)]] = v;

    nbr_local_.assign(2, std::vector<uint32_t>(size_t(half()), 0));
    for (int v = 0; v < n_; ++v) {
        const int d = side_of_[size_t(v)];
        uint32_t mask = 0;
        for (const Vertex& w : spec.neighbors(vertices[size_t(v)])) {
            mask |= 1u << local_index[size_t(index_of.at(w))];
        }
        nbr_local_[size_t(d)][size_t(local_index[size_t(v)])] = mask;
    }

    dist2_local_.assign(2, std::vector<uint32_t>(size_t(half()), 0));
    for (int d = 0; d < 2; ++d) {
        for (int i = 0; i < half(); ++i) {
            for (int k = 0; k < half(); ++k) {
                if (i != k && (nbr_local_[size_t(d)][size_t(i)] &
                               nbr_local_[size_t(d)][size_t(k)]) != 0) {
                    dist2_local_[size_t(d)][size_t(i)] |= 1u << k;
                }
            }
        }
    }
}

void ExplicitGraph::check_enumeration_bound(const char* op) const {
    if (n_ > kEnumerationBound) {
        throw std::invalid_argument(std::string(op) + ": graph exceeds enumeration bound (n=" +
                                    std::to_string(n_) + " > 24)");
    }
}

uint32_t ExplicitGraph::neighborhood(uint32_t mask, Side d) const {
    uint32_t out = 0;
    for (uint32_t bits = mask; bits; bits &= bits - 1) {
        out |= nbr_local_[size_t(d)][size_t(__builtin_ctz(bits))];
    }
    return out;
}

int ExplicitGraph::co_degree() const {
    int best = 0;
    for (int d = 0; d < 2; ++d) {
        for (int i = 0; i < half(); ++i) {
            for (int k = i + 1; k < half(); ++k) {
                best = std::max(best, __builtin_popcount(nbr_local_[size_t(d)][size_t(i)] &
                                                         nbr_local_[size_t(d)][size_t(k)]));
            }
        }
    }
    // Cross-side pairs have no common neighbours in a bipartite graph.
    return best;
}

uint32_t ExplicitGraph::closure(uint32_t a_mask, Side d) const {
    if (a_mask >> half()) throw std::invalid_argument("closure: mask outside side " +
                                                      std::string(side_name(d)));
    if (a_mask == 0) return 0;
    const uint32_t na = neighborhood(a_mask, d);
    uint32_t out = 0;
    for (int v = 0; v < half(); ++v) {
        if ((nbr_local_[size_t(d)][size_t(v)] & ~na) == 0) out |= 1u << v;
    }
    return out;
}

bool ExplicitGraph::two_linked(uint32_t mask, Side d) const {
    return two_linked_components(mask, d).size() <= 1;
}

std::vector<uint32_t> ExplicitGraph::two_linked_components(uint32_t mask, Side d) const {
    std::vector<uint32_t> comps;
    uint32_t rest = mask;
    while (rest) {
        uint32_t comp = rest & (~rest + 1);
        while (true) {
            uint32_t grown = comp;
            for (uint32_t bits = comp; bits; bits &= bits - 1) {
                grown |= dist2_local_[size_t(d)][size_t(__builtin_ctz(bits))] & rest;
            }
            if (grown == comp) break;
            comp = grown;
        }
        comps.push_back(comp);
        rest &= ~comp;
    }
    return comps;
}

bool ExplicitGraph::valid_config(uint32_t mask, Side d) const {
    for (uint32_t comp : two_linked_components(mask, d)) {
        if (__builtin_popcount(closure(comp, d)) > closure_cap()) return false;
    }
    return true;
}

Rational ExplicitGraph::z_exact(const Rational& lambda) const {
    check_enumeration_bound("z_exact");
    Rational total(0);
    const uint32_t full_o = (1u << half()) - 1;
    for_each_submask(full_o, [&](uint32_t a) {
        const int blocked = __builtin_popcount(neighborhood(a, Side::O));
        total += lambda.pow(unsigned(__builtin_popcount(a))) *
                 pow1p(lambda, unsigned(half() - blocked));
    });
    return total;
}

Rational ExplicitGraph::z_exact_alt(const Rational& lambda) const {
    check_enumeration_bound("z_exact_alt");
    // Transfer sweep in global vertex order: states are occupation patterns
    // of the frontier (processed vertices that still have unprocessed
    // neighbours); states agreeing on the frontier are merged.
    std::vector<uint32_t> global_nbr(size_t(n_), 0);
    const auto vertices = spec_.all_vertices();
    std::map<Vertex, int> index_of;
    for (int v = 0; v < n_; ++v) index_of[vertices[size_t(v)]] = v;
    for (int v = 0; v < n_; ++v) {
        for (const Vertex& w : spec_.neighbors(vertices[size_t(v)])) {
            global_nbr[size_t(v)] |= 1u << index_of.at(w);
        }
    }
    std::map<uint32_t, Rational> states{{0u, Rational(1)}};
    for (int v = 0; v < n_; ++v) {
        uint32_t frontier = 0;  // vertices <= v with a neighbour > v
        for (int w = 0; w <= v; ++w) {
            if (global_nbr[size_t(w)] >> (v + 1)) frontier |= 1u << w;
        }
        std::map<uint32_t, Rational> next;
        for (const auto& [mask, w] : states) {
            next[mask & frontier] += w;  // v excluded
            if ((global_nbr[size_t(v)] & mask) == 0) {
                next[(mask | (1u << v)) & frontier] += w * lambda;
            }
        }
        states = std::move(next);
    }
    Rational total(0);
    for (const auto& [mask, w] : states) total += w;
    return total;
}

std::vector<uint32_t> ExplicitGraph::valid_configs(Side d) const {
    std::vector<uint32_t> out;
    const uint32_t full = (1u << half()) - 1;
    for_each_submask(full, [&](uint32_t mask) {
        if (valid_config(mask, d)) out.push_back(mask);
    });
    return out;
}

Rational ExplicitGraph::xi_exact(Side d, const Rational& lambda) const {
    check_enumeration_bound("xi_exact");
    Rational total(0);
    for (uint32_t mask : valid_configs(d)) {
        total += lambda.pow(unsigned(__builtin_popcount(mask))) /
                 pow1p(lambda, unsigned(__builtin_popcount(neighborhood(mask, d))));
    }
    return total;
}

Rational ExplicitGraph::zhat_exact(const Rational& lambda) const {
    return pow1p(lambda, unsigned(half())) *
           (xi_exact(Side::O, lambda) + xi_exact(Side::E, lambda));
}

std::vector<uint64_t> ExplicitGraph::independent_sets() const {
    std::vector<uint64_t> keys;
    const uint32_t full_e = (1u << half()) - 1;
    for_each_submask(full_e, [&](uint32_t e_mask) {
        const uint32_t allowed_o = ((1u << half()) - 1) & ~neighborhood(e_mask, Side::E);
        for_each_submask(allowed_o, [&](uint32_t o_mask) {
            keys.push_back(uint64_t(e_mask) | (uint64_t(o_mask) << 32));
        });
    });
    std::sort(keys.begin(), keys.end());
    return keys;
}

ExplicitGraph::CaptureReport ExplicitGraph::capture_report(const Rational& lambda) const {
    check_enumeration_bound("capture_report");
    CaptureReport rep;
    rep.z = z_exact(lambda);
    rep.zhat = zhat_exact(lambda);
    rep.diff = rep.zhat - rep.z;
    rep.captured_both_sum = Rational(0);
    rep.prop31_holds = true;
    for (uint64_t key : independent_sets()) {
        const uint32_t e_mask = uint32_t(key & 0xffffffffu);
        const uint32_t o_mask = uint32_t(key >> 32);
        const bool cap_e = valid_config(e_mask, Side::E);
        const bool cap_o = valid_config(o_mask, Side::O);
        if (!cap_e && !cap_o) rep.prop31_holds = false;
        if (cap_e && cap_o) {
            rep.captured_both_sum +=
                lambda.pow(unsigned(__builtin_popcount(e_mask) + __builtin_popcount(o_mask)));
        }
    }
    rep.identity_holds = rep.diff == rep.captured_both_sum;
    return rep;
}

std::vector<Rational> ExplicitGraph::cluster_sum_partials(Side d, const Rational& lambda,
                                                          int kmax) const {
    check_enumeration_bound("cluster_sum_partials");
    if (kmax < 1 || kmax > 6) throw std::invalid_argument("cluster_sum_partials: kmax in 1..6");

    // Valid polymers: 2-linked configurations with a single component.
    std::vector<uint32_t> polymers;
    for (uint32_t mask : valid_configs(d)) {
        if (mask && two_linked(mask, d)) polymers.push_back(mask);
    }
    std::vector<Rational> weight;
    std::vector<int> size;
    for (uint32_t p : polymers) {
        size.push_back(__builtin_popcount(p));
        weight.push_back(lambda.pow(unsigned(size.back())) /
                         pow1p(lambda, unsigned(__builtin_popcount(neighborhood(p, d)))));
    }
    const int np = int(polymers.size());
    std::vector<std::vector<char>> incompat(size_t(np), std::vector<char>(size_t(np), 0));
    for (int p = 0; p < np; ++p) {
        for (int q = p; q < np; ++q) {
            bool linked = two_linked(polymers[size_t(p)] | polymers[size_t(q)], d);
            incompat[size_t(p)][size_t(q)] = incompat[size_t(q)][size_t(p)] = char(linked);
        }
    }

    std::vector<Rational> level_sums(size_t(kmax) + 1, Rational(0));
    std::vector<int> slots;
    // Multisets of polymers (non-decreasing indices) with total size <= kmax;
    // ordered tuples are recovered with the multinomial factor.
    auto emit = [&]() {
        const int k_slots = int(slots.size());
        SmallGraph h;
        h.n = k_slots;
        for (int p = 0; p < k_slots; ++p) {
            for (int q = p + 1; q < k_slots; ++q) {
                if (incompat[size_t(slots[size_t(p)])][size_t(slots[size_t(q)])]) h.add_edge(p, q);
            }
        }
        if (!h.connected()) return;
        int total_size = 0;
        Rational w(1);
        for (int idx : slots) {
            total_size += size[size_t(idx)];
            w *= weight[size_t(idx)];
        }
        CoverMultiset as_cover;
        as_cover.slots = slots;
        level_sums[size_t(total_size)] += Rational(ordered_tuple_count(as_cover)) * ursell(h) * w;
    };
    auto rec = [&](auto&& self, int min_idx, int remaining) -> void {
        if (!slots.empty()) emit();
        for (int idx = min_idx; idx < np; ++idx) {
            if (size[size_t(idx)] > remaining) continue;
            slots.push_back(idx);
            self(self, idx, remaining - size[size_t(idx)]);
            slots.pop_back();
        }
    };
    rec(rec, 0, kmax);

    std::vector<Rational> partials;
    Rational running(0);
    for (int k = 1; k <= kmax; ++k) {
        running += level_sums[size_t(k)];
        partials.push_back(running);
    }
    return partials;
}

Rational ExplicitGraph::MeasureTable::sum(const std::vector<Rational>& col) const {
    Rational total(0);
    for (const Rational& r : col) total += r;
    return total;
}

ExplicitGraph::MeasureTable ExplicitGraph::measure_table(const Rational& lambda) const {
    check_enumeration_bound("measure_table");
    MeasureTable table;
    const Rational z = z_exact(lambda);
    const Rational xi_e = xi_exact(Side::E, lambda);
    const Rational xi_o = xi_exact(Side::O, lambda);
    const Rational xi_sum = xi_e + xi_o;
    const Rational prefactor = Rational(1) / (pow1p(lambda, unsigned(half())) * xi_sum);

    table.keys = independent_sets();
    for (uint64_t key : table.keys) {
        const uint32_t e_mask = uint32_t(key & 0xffffffffu);
        const uint32_t o_mask = uint32_t(key >> 32);
        const unsigned isz = unsigned(__builtin_popcount(e_mask) + __builtin_popcount(o_mask));
        const Rational lam_pow = lambda.pow(isz);
        table.mu.push_back(lam_pow / z);
        const Rational star_e =
            valid_config(e_mask, Side::E) ? prefactor * lam_pow : Rational(0);
        const Rational star_o =
            valid_config(o_mask, Side::O) ? prefactor * lam_pow : Rational(0);
        table.muhat_star_e.push_back(star_e);
        table.muhat_star_o.push_back(star_o);
        table.muhat.push_back(star_e + star_o);
    }
    for (Side d : {Side::E, Side::O}) {
        const Rational xi = d == Side::E ? xi_e : xi_o;
        auto& nu = d == Side::E ? table.nu_e : table.nu_o;
        for (uint32_t mask : valid_configs(d)) {
            Rational w = lambda.pow(unsigned(__builtin_popcount(mask))) /
                         pow1p(lambda, unsigned(__builtin_popcount(neighborhood(mask, d))));
            nu.push_back({mask, w / xi});
        }
    }
    Rational tv(0);
    for (size_t i = 0; i < table.keys.size(); ++i) {
        if (table.muhat[i] > table.mu[i]) tv += table.muhat[i] - table.mu[i];
    }
    table.tv_muhat_mu = tv;
    return table;
}

uint64_t ExplicitGraph::sample_muhat(const Rational& lambda, std::mt19937_64& rng) const {
    check_enumeration_bound("sample_muhat");
    const Rational xi_e = xi_exact(Side::E, lambda);
    const Rational xi_o = xi_exact(Side::O, lambda);
    const mpz_class two64 = mpz_class(1) << 64;
    auto uniform = [&]() { return Rational(mpz_class(rng()), two64); };

    // (S1) defect side proportional to Xi.
    const Side d = uniform() < xi_e / (xi_e + xi_o) ? Side::E : Side::O;
    const Rational xi = d == Side::E ? xi_e : xi_o;

    // (S2) defect configuration according to nu^D.
    uint32_t defect = 0;
    {
        const Rational target = uniform();
        Rational cum(0);
        for (uint32_t mask : valid_configs(d)) {
            cum += lambda.pow(unsigned(__builtin_popcount(mask))) /
                   (pow1p(lambda, unsigned(__builtin_popcount(neighborhood(mask, d)))) * xi);
            defect = mask;
            if (target < cum) break;
        }
    }

    // (S3) fill the other side outside N(defect) at rate lambda/(1+lambda).
    const Rational q = lambda / (lambda + Rational(1));
    uint32_t fill = 0;
    const uint32_t allowed = ((1u << half()) - 1) & ~neighborhood(defect, d);
    for (int v = 0; v < half(); ++v) {
        if (!(allowed >> v & 1)) continue;
        if (uniform() < q) fill |= 1u << v;
    }
    const uint32_t e_mask = d == Side::E ? defect : fill;
    const uint32_t o_mask = d == Side::E ? fill : defect;
    return uint64_t(e_mask) | (uint64_t(o_mask) << 32);
}

ExplicitGraph::IsoReport ExplicitGraph::verify_isoperimetry() const {
    IsoReport rep;
    rep.m = spec_.max_base_size();
    rep.co_degree = co_degree();
    rep.co_degree_ok = rep.co_degree <= rep.m;
    const long t = spec_.dimensions();
    const long hl = half();
    for (Side d : {Side::E, Side::O}) {
        const uint32_t full = (1u << half()) - 1;
        for (uint32_t mask = 1; mask <= full; ++mask) {
            ++rep.subsets_checked;
            const long x = __builtin_popcount(mask);
            const long nx = __builtin_popcount(neighborhood(mask, d));
            bool ok;
            if (nx < x) {
                ok = false;
            } else {
                // |N(X)|/|X| - 1 >= 2*sqrt(2)*(1-beta)/(m*sqrt(t)),
                // beta = x/(n/2); compare squares of both (non-negative) sides.
                const long lhs = (nx - x) * hl;      // scaled by |X| * (n/2)
                const long rhs_lin = (hl - x) * x;   // (1-beta)*|X| * (n/2)
                ok = long(rep.m) * rep.m * t * lhs * lhs >= 8 * rhs_lin * rhs_lin;
            }
            if (!ok) rep.violations.push_back({d, mask, int(nx)});
        }
    }
    return rep;
}

}  // namespace clusterexp
