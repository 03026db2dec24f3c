#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "clusterexp/coefficients.hpp"
#include "clusterexp/explicit_graph.hpp"
#include "clusterexp/verify.hpp"

namespace py = pybind11;
using namespace clusterexp;

namespace {

CoefficientOptions make_options(int j, const std::string& lam, int threads) {
    CoefficientOptions opts;
    opts.j = j;
    opts.threads = threads;
    if (lam == "symbolic") {
        opts.lambda.reset();
    } else {
        opts.lambda = Rational::from_string(lam);
    }
    return opts;
}

}  // namespace

PYBIND11_MODULE(_clusterexp, m) {
    m.doc() = "Exact cluster-expansion coefficients for Cartesian powers of K_{s,s} "
              "plus brute-force verification oracles";

    m.def(
        "coefficient",
        [](int j, const std::string& lam, const std::string& format, int threads) {
            Polynomial p = coefficient(make_options(j, lam, threads));
            if (format == "text") return poly_to_text(p);
            if (format == "latex") return poly_to_latex(p);
            return poly_to_json(p);
        },
        py::arg("j"), py::arg("lam") = "1", py::arg("format") = "text",
        py::arg("threads") = 1,
        "Normalized coefficient polynomial; lam is 'p/q' or 'symbolic'.");

    m.def(
        "counts",
        [](int j, bool prune, int threads) {
            auto c = enumeration_counts(j, prune, threads);
            py::dict out;
            out["compressed"] = c.compressed;
            out["covers"] = c.covers;
            std::vector<uint64_t> by_size(c.compressed_by_size.begin() + 1,
                                          c.compressed_by_size.end());
            out["compressed_by_size"] = by_size;
            return out;
        },
        py::arg("j"), py::arg("prune") = true, py::arg("threads") = 1,
        "Compressed-set and cover counts for the given size.");

    m.def(
        "z_exact",
        [](const std::string& graph, const std::string& lam) {
            ExplicitGraph g{ProductSpec::parse(graph)};
            return g.z_exact(Rational::from_string(lam)).str();
        },
        py::arg("graph"), py::arg("lam") = "1",
        "Exact independence polynomial value on a small explicit graph.");

    m.def(
        "verify",
        [](const std::string& suite, const std::string& graph, const std::string& lam,
           uint64_t seed, int samples) {
            VerifyOptions opts;
            opts.suite = suite;
            opts.graph = graph;
            opts.seed = seed;
            opts.samples = samples;
            if (!lam.empty()) {
                opts.lambda_given = true;
                opts.lambda = Rational::from_string(lam);
            }
            bool passed = false;
            std::string report = run_verify(opts, &passed);
            py::dict out;
            out["pass"] = passed;
            out["report"] = report;
            return out;
        },
        py::arg("suite"), py::arg("graph") = "", py::arg("lam") = "", py::arg("seed") = 0,
        py::arg("samples") = 100000, "Run a verification suite; returns pass flag and report.");

    m.def(
        "truncated_estimate",
        [](int s, int t, const std::string& lam, int k) {
            auto est = truncated_estimate(s, t, Rational::from_string(lam), k);
            return py::make_tuple(est.log_z.str(), est.log_i.str());
        },
        py::arg("s"), py::arg("t"), py::arg("lam") = "1", py::arg("k") = 2,
        "Truncated (log Z, log i) estimates for the t-th power of K_{s,s}.");
}
