#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "clusterexp/bigfloat.hpp"
#include "clusterexp/product_graph.hpp"
#include "clusterexp/rational.hpp"

namespace clusterexp {

// Bipartition sides; E is the class of the all-zeros vertex in product specs.
enum class Side : int { E = 0, O = 1 };

inline Side other(Side d) { return d == Side::E ? Side::O : Side::E; }
inline const char* side_name(Side d) { return d == Side::E ? "E" : "O"; }

// Brute-force ground truth on a small explicit bipartite regular balanced
// graph. Vertex sets are bit masks; per-side objects use side-local indexing
// (bit i = i-th vertex of that side in the global order).
class ExplicitGraph {
public:
    static constexpr int kMaxVertices = 32;
    static constexpr int kEnumerationBound = 24;  // for partition-function sums

    explicit ExplicitGraph(const ProductSpec& spec);

    int n() const { return n_; }
    int degree() const { return degree_; }
    int half() const { return n_ / 2; }
    const std::string& name() const { return name_; }
    int side_size(Side d) const { return int(side_vertices_[int(d)].size()); }
    int closure_cap() const { return n_ / 4; }  // floor

    // Side-local neighbourhood mask (over the other side) of a side-local set.
    uint32_t neighborhood(uint32_t mask, Side d) const;
    int co_degree() const;

    // [A] = {v in D : N(v) subseteq N(A)}; side-local in and out.
    uint32_t closure(uint32_t a_mask, Side d) const;

    bool two_linked(uint32_t mask, Side d) const;
    std::vector<uint32_t> two_linked_components(uint32_t mask, Side d) const;

    // I^D is a polymer configuration iff every 2-linked component has closure
    // of size at most floor(n/4).
    bool valid_config(uint32_t mask, Side d) const;

    // Z(G, lambda) summed over all independent sets.
    Rational z_exact(const Rational& lambda) const;
    // Independent transfer-style route: grows the graph one vertex at a time.
    Rational z_exact_alt(const Rational& lambda) const;

    Rational xi_exact(Side d, const Rational& lambda) const;
    Rational zhat_exact(const Rational& lambda) const;

    struct CaptureReport {
        Rational z, zhat, diff, captured_both_sum;
        bool prop31_holds = false;   // every independent set captured by a side
        bool identity_holds = false; // diff == captured_both_sum
    };
    CaptureReport capture_report(const Rational& lambda) const;

    // Partial sums sum_{j<=k} L_j of the cluster expansion of log Xi^D over
    // the explicit polymer model, for k = 1..kmax.
    std::vector<Rational> cluster_sum_partials(Side d, const Rational& lambda, int kmax) const;

    struct MeasureTable {
        std::vector<uint64_t> keys;  // independent sets: E-local | O-local << 32
        std::vector<Rational> mu, muhat, muhat_star_e, muhat_star_o;
        std::vector<std::pair<uint32_t, Rational>> nu_e, nu_o;  // per valid config
        Rational tv_muhat_mu;
        Rational sum(const std::vector<Rational>& col) const;
    };
    MeasureTable measure_table(const Rational& lambda) const;

    // One draw of the two-stage sampling procedure (defect side proportional
    // to Xi, defect configuration from nu, then independent fill-in at rate
    // lambda/(1+lambda)). Probabilities are realized on a 2^-64 grid.
    // Returns the independent set as (E-local | O-local << 32).
    uint64_t sample_muhat(const Rational& lambda, std::mt19937_64& rng) const;

    struct IsoViolation {
        Side side;
        uint32_t mask;
        int boundary;
    };
    struct IsoReport {
        int co_degree = 0;
        int m = 0;  // max base graph order
        bool co_degree_ok = false;
        uint64_t subsets_checked = 0;
        std::vector<IsoViolation> violations;
        bool ok() const { return co_degree_ok && violations.empty(); }
    };
    // Exhaustive check of the co-degree bound and the large-set expansion
    // |N(X)| >= (1 + 2*sqrt(2)(1-beta)/(m*sqrt(t))) |X| with beta = 2|X|/n,
    // done with squared integer comparisons.
    IsoReport verify_isoperimetry() const;

    const ProductSpec& spec() const { return spec_; }

private:
    void check_enumeration_bound(const char* op) const;
    std::vector<uint32_t> valid_configs(Side d) const;  // ascending side-local masks
    std::vector<uint64_t> independent_sets() const;     // ascending keys

    ProductSpec spec_;
    std::string name_;
    int n_ = 0;
    int degree_ = 0;
    std::vector<int> side_of_;                       // per global vertex
    std::vector<std::vector<int>> side_vertices_;    // [side] -> global ids
    std::vector<std::vector<uint32_t>> nbr_local_;   // [side][i] -> other-side mask
    std::vector<std::vector<uint32_t>> dist2_local_; // [side][i] -> same-side mask
};

}  // namespace clusterexp
