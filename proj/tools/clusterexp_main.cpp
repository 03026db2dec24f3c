#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "clusterexp/coefficients.hpp"
#include "clusterexp/verify.hpp"

namespace {

using clusterexp::Rational;

int default_threads() {
    if (const char* env = std::getenv("CLUSTEREXP_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open output file: " + out_path);
        out << text << "\n";
    }
}

clusterexp::Polynomial apply_specializations(clusterexp::Polynomial p,
                                             const std::string& spec_list) {
    std::stringstream ss(spec_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw CLI::ValidationError("--specialize expects var=value pairs");
        }
        const std::string var = item.substr(0, eq);
        const Rational value = Rational::from_string(item.substr(eq + 1));
        using clusterexp::Var;
        Var v;
        if (var == "s") {
            v = Var::s;
        } else if (var == "t") {
            v = Var::t;
        } else if (var == "lambda") {
            v = Var::lambda;
        } else if (var == "u") {
            v = Var::u;
        } else {
            throw CLI::ValidationError("--specialize: unknown variable " + var);
        }
        p = clusterexp::poly_substitute(p, v, value);
    }
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cluster-expansion coefficients for Cartesian powers of K_{s,s}, "
                 "with a brute-force verification oracle"};
    app.require_subcommand(1);

    // ---- coefficients ----
    auto* coeff_cmd = app.add_subcommand(
        "coefficients", "Compute the normalized coefficient polynomial for a given size");
    int c_j = 2;
    std::string c_lambda = "1";
    std::string c_family = "kss";
    std::string c_specialize;
    std::string c_format = "text";
    std::string c_out;
    int c_threads = default_threads();
    bool c_no_prune = false;
    coeff_cmd->add_option("--j", c_j, "Cluster size (>= 1)")->required();
    coeff_cmd->add_option("--lambda", c_lambda, "Fugacity p/q, or 'symbolic'");
    coeff_cmd->add_option("--family", c_family, "Graph family (only 'kss')")
        ->check(CLI::IsMember({"kss"}));
    coeff_cmd->add_option("--specialize", c_specialize,
                          "Comma list of var=value substitutions, e.g. s=1,u=2");
    coeff_cmd->add_option("--format", c_format, "Output format")
        ->check(CLI::IsMember({"text", "json", "latex"}));
    coeff_cmd->add_option("--threads", c_threads, "Worker threads");
    coeff_cmd->add_flag("--no-prune", c_no_prune, "Disable search pruning (slow)");
    coeff_cmd->add_option("--out", c_out, "Write to file instead of stdout");

    // ---- counts ----
    auto* counts_cmd =
        app.add_subcommand("counts", "Count compressed sets and covers for a given size");
    int n_j = 2;
    int n_threads = default_threads();
    bool n_no_prune = false;
    bool n_extra_symmetry = false;
    std::string n_format = "text";
    std::string n_out;
    counts_cmd->add_option("--j", n_j, "Cluster size (>= 1)")->required();
    counts_cmd->add_option("--threads", n_threads, "Worker threads");
    counts_cmd->add_flag("--no-prune", n_no_prune, "Disable search pruning (slow)");
    counts_cmd->add_flag("--extra-symmetry", n_extra_symmetry,
                         "Also require |O_i|+|E_i| non-increasing (count comparison only)");
    counts_cmd->add_option("--format", n_format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    counts_cmd->add_option("--out", n_out, "Write to file instead of stdout");

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "Run a brute-force verification suite");
    std::string v_suite;
    std::string v_graph;
    std::string v_lambda;
    uint64_t v_seed = 0;
    int v_samples = 100000;
    std::string v_out;
    verify_cmd->add_option("--suite", v_suite, "Suite to run")
        ->required()
        ->check(CLI::IsMember({"identities", "isoperimetry", "sampler", "estimates"}));
    verify_cmd->add_option("--graph", v_graph,
                           "Graph token (named like C4/Q3/K22xK22, a comma list of base tokens "
                           "Kss:<s>/C:<2k>/file:<path>, or empty for the suite roster)");
    verify_cmd->add_option("--lambda", v_lambda, "Fugacity p/q (suite default when omitted)");
    verify_cmd->add_option("--seed", v_seed, "Sampler seed");
    verify_cmd->add_option("--samples", v_samples, "Sampler draw count");
    verify_cmd->add_option("--out", v_out, "Write report to file instead of stdout");

    // ---- estimate ----
    auto* est_cmd = app.add_subcommand(
        "estimate", "Truncated log Z / log i estimates for a power of K_{s,s}");
    int e_s = 1, e_t = 4, e_k = 2;
    std::string e_lambda = "1";
    std::string e_out;
    est_cmd->add_option("--s", e_s, "Base graph half-order")->required();
    est_cmd->add_option("--t", e_t, "Number of factors")->required();
    est_cmd->add_option("--k", e_k, "Truncation (number of coefficient terms)");
    est_cmd->add_option("--lambda", e_lambda, "Fugacity p/q");
    est_cmd->add_option("--out", e_out, "Write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (coeff_cmd->parsed()) {
            clusterexp::CoefficientOptions opts;
            opts.j = c_j;
            opts.threads = c_threads;
            opts.prune = !c_no_prune;
            if (c_lambda == "symbolic") {
                opts.lambda.reset();
            } else {
                opts.lambda = Rational::from_string(c_lambda);
            }
            clusterexp::Polynomial p = clusterexp::coefficient(opts);
            if (!c_specialize.empty()) p = apply_specializations(p, c_specialize);
            std::string text;
            if (c_format == "text") {
                text = clusterexp::poly_to_text(p);
            } else if (c_format == "latex") {
                text = clusterexp::poly_to_latex(p);
            } else {
                nlohmann::ordered_json j{{"schema", 1},
                                         {"j", c_j},
                                         {"lambda", c_lambda},
                                         {"polynomial",
                                          nlohmann::ordered_json::parse(poly_to_json(p))}};
                text = j.dump(2);
            }
            write_output(text, c_out);
        } else if (counts_cmd->parsed()) {
            auto counts = clusterexp::enumeration_counts(n_j, !n_no_prune, n_threads,
                                                         n_extra_symmetry);
            std::string text;
            if (n_format == "json") {
                nlohmann::ordered_json by_size = nlohmann::ordered_json::array();
                for (size_t k = 1; k < counts.compressed_by_size.size(); ++k) {
                    by_size.push_back(counts.compressed_by_size[k]);
                }
                nlohmann::ordered_json j{{"schema", 1},
                                         {"j", n_j},
                                         {"compressed", counts.compressed},
                                         {"covers", counts.covers},
                                         {"compressed_by_size", by_size}};
                text = j.dump(2);
            } else {
                std::ostringstream out;
                out << "compressed: " << counts.compressed << ", covers: " << counts.covers;
                for (size_t k = 1; k < counts.compressed_by_size.size(); ++k) {
                    out << "\nsize " << k << ": " << counts.compressed_by_size[k];
                }
                text = out.str();
            }
            write_output(text, n_out);
        } else if (verify_cmd->parsed()) {
            clusterexp::VerifyOptions opts;
            opts.suite = v_suite;
            opts.graph = v_graph;
            opts.seed = v_seed;
            opts.samples = v_samples;
            if (!v_lambda.empty()) {
                opts.lambda_given = true;
                opts.lambda = Rational::from_string(v_lambda);
            }
            bool passed = false;
            write_output(clusterexp::run_verify(opts, &passed), v_out);
            return passed ? 0 : 1;
        } else if (est_cmd->parsed()) {
            const Rational lambda = Rational::from_string(e_lambda);
            auto est = clusterexp::truncated_estimate(e_s, e_t, lambda, e_k);
            nlohmann::ordered_json j{{"schema", 1},
                                     {"s", e_s},
                                     {"t", e_t},
                                     {"lambda", lambda.str()},
                                     {"k", e_k},
                                     {"log_z_estimate", est.log_z.str()},
                                     {"log_i_estimate", est.log_i.str()}};
            write_output(j.dump(2), e_out);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
