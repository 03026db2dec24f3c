#pragma once

#include <cstdint>
#include <string>

#include "clusterexp/rational.hpp"

namespace clusterexp {

struct VerifyOptions {
    std::string suite;            // identities | isoperimetry | sampler | estimates
    std::string graph;            // empty: suite default roster
    bool lambda_given = false;
    Rational lambda = Rational(1);
    uint64_t seed = 0;
    int samples = 100000;
};

// Runs one verification suite and returns the JSON report (schema 1).
// *all_passed reflects the overall result.
std::string run_verify(const VerifyOptions& opts, bool* all_passed);

}  // namespace clusterexp
