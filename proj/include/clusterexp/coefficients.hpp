#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "clusterexp/bigfloat.hpp"
#include "clusterexp/covers.hpp"
#include "clusterexp/enumerate.hpp"
#include "clusterexp/polynomial.hpp"

namespace clusterexp {

struct CoefficientOptions {
    int j = 1;
    // Empty: keep lambda symbolic. Otherwise substitute the given value.
    std::optional<Rational> lambda = Rational(1);
    int threads = 1;
    bool prune = true;
};

struct CountsResult {
    uint64_t compressed = 0;
    uint64_t covers = 0;
    std::vector<uint64_t> compressed_by_size;  // index by |S|
    uint64_t calls = 0;
};

// Normalized cluster-expansion coefficient for the t-th Cartesian power of
// K_{s,s} (defect side fixed by symmetry): the size-j term of log Xi times
// (1+lambda)^{j*s*t}, divided by (2s)^t. A polynomial in s, t, u (and lambda
// when symbolic), where u stands for (1+lambda)^s. counts_out, when given,
// receives the enumeration totals of the same pass.
Polynomial coefficient(const CoefficientOptions& opts, CountsResult* counts_out = nullptr);

// Weight of one ordered cluster, normalized by (1+lambda)^{j*s*t} and
// excluding the Ursell factor: lambda^j * u^{-sum b} * (lambda+1)^{-sum c}.
// Throws std::invalid_argument when an exponent would be negative.
Polynomial normalized_cluster_weight(const std::vector<AffineSize>& sizes);

CountsResult enumeration_counts(int j, bool prune = true, int threads = 1,
                                bool extra_symmetry = false);

// k-term truncated estimates of log Z and log i for the t-th power of
// K_{s,s}: (n/2) log(1+lambda) + log 2 + sum_{j<=k} Lhat_j * (2s)^t /
// (1+lambda)^{j s t}, with the sum evaluated exactly before rounding.
struct TruncatedEstimate {
    BigFloat log_z;
    BigFloat log_i;  // same truncation at lambda = 1
};
TruncatedEstimate truncated_estimate(int s, int t, const Rational& lambda, int k,
                                     int threads = 1);

}  // namespace clusterexp
