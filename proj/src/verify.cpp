#include "clusterexp/verify.hpp"

#include <nlohmann/json.hpp>

#include <map>

#include "clusterexp/coefficients.hpp"
#include "clusterexp/explicit_graph.hpp"

namespace clusterexp {

namespace {

using json = nlohmann::ordered_json;

json check(const std::string& name, bool pass, json witness = json::object()) {
    return json{{"name", name}, {"pass", pass}, {"witness", std::move(witness)}};
}

bool all_pass(const json& checks) {
    for (const auto& c : checks) {
        if (!c.at("pass").get<bool>()) return false;
    }
    return true;
}

json identities_for(const ExplicitGraph& g, const Rational& lambda) {
    json checks = json::array();
    const Rational xi_e = g.xi_exact(Side::E, lambda);
    const Rational xi_o = g.xi_exact(Side::O, lambda);
    auto rep = g.capture_report(lambda);
    checks.push_back(check("zhat_minus_z_equals_doubly_captured_sum", rep.identity_holds,
                           {{"z", rep.z.str()},
                            {"zhat", rep.zhat.str()},
                            {"diff", rep.diff.str()},
                            {"captured_sum", rep.captured_both_sum.str()}}));
    checks.push_back(check("every_independent_set_captured", rep.prop31_holds));
    checks.push_back(check("zhat_at_least_z", rep.zhat >= rep.z));
    checks.push_back(check("xi_at_least_one", xi_e >= Rational(1) && xi_o >= Rational(1),
                           {{"xi_E", xi_e.str()}, {"xi_O", xi_o.str()}}));

    auto table = g.measure_table(lambda);
    Rational nu_e_sum(0), nu_o_sum(0);
    for (const auto& [mask, p] : table.nu_e) nu_e_sum += p;
    for (const auto& [mask, p] : table.nu_o) nu_o_sum += p;
    checks.push_back(check("measures_sum_to_one",
                           table.sum(table.mu) == Rational(1) &&
                               table.sum(table.muhat) == Rational(1) &&
                               nu_e_sum == Rational(1) && nu_o_sum == Rational(1),
                           {{"mu_sum", table.sum(table.mu).str()},
                            {"muhat_sum", table.sum(table.muhat).str()},
                            {"nu_E_sum", nu_e_sum.str()},
                            {"nu_O_sum", nu_o_sum.str()}}));

    // nu factorizes over 2-linked components.
    bool nu_factorizes = true;
    for (Side d : {Side::E, Side::O}) {
        const auto& nu = d == Side::E ? table.nu_e : table.nu_o;
        const Rational xi = d == Side::E ? xi_e : xi_o;
        for (const auto& [mask, p] : nu) {
            Rational product(1);
            for (uint32_t comp : g.two_linked_components(mask, d)) {
                product *= lambda.pow(unsigned(__builtin_popcount(comp))) /
                           (lambda + Rational(1))
                               .pow(unsigned(__builtin_popcount(g.neighborhood(comp, d))));
            }
            if (p != product / xi) nu_factorizes = false;
        }
    }
    checks.push_back(check("nu_factorizes_over_components", nu_factorizes));

    bool closure_ok = true;
    for (Side d : {Side::E, Side::O}) {
        const uint32_t full = (1u << g.side_size(d)) - 1;
        for (uint32_t a = 0; a <= full; ++a) {
            const uint32_t cl = g.closure(a, d);
            if ((a & ~cl) != 0 || g.neighborhood(a, d) != g.neighborhood(cl, d)) {
                closure_ok = false;
                break;
            }
        }
    }
    checks.push_back(check("closure_contains_and_preserves_neighborhood", closure_ok));
    return checks;
}

json run_identities(const VerifyOptions& opts) {
    std::vector<std::string> graphs =
        opts.graph.empty() ? std::vector<std::string>{"C4", "Q3", "Q4", "K22", "K22xK22"}
                           : std::vector<std::string>{opts.graph};
    std::vector<Rational> lambdas =
        opts.lambda_given ? std::vector<Rational>{opts.lambda}
                          : std::vector<Rational>{Rational(1, 2), Rational(1), Rational(2)};
    json results = json::array();
    for (const auto& name : graphs) {
        ExplicitGraph g{ProductSpec::parse(name)};
        for (const auto& lambda : lambdas) {
            json checks = identities_for(g, lambda);
            results.push_back(json{{"graph", name},
                                   {"lambda", lambda.str()},
                                   {"pass", all_pass(checks)},
                                   {"checks", checks}});
        }
    }
    return results;
}

json run_isoperimetry(const VerifyOptions& opts) {
    std::vector<std::string> graphs = opts.graph.empty()
                                          ? ProductSpec::roster_names()
                                          : std::vector<std::string>{opts.graph};
    json results = json::array();
    for (const auto& name : graphs) {
        ExplicitGraph g{ProductSpec::parse(name)};
        auto rep = g.verify_isoperimetry();
        json violations = json::array();
        for (const auto& v : rep.violations) {
            violations.push_back(json{{"side", side_name(v.side)},
                                      {"mask", v.mask},
                                      {"neighborhood", v.boundary}});
        }
        json checks = json::array();
        checks.push_back(check("co_degree_at_most_max_base_order", rep.co_degree_ok,
                               {{"co_degree", rep.co_degree}, {"m", rep.m}}));
        checks.push_back(check("large_set_expansion", rep.violations.empty(),
                               {{"subsets_checked", rep.subsets_checked},
                                {"violations", violations}}));
        results.push_back(
            json{{"graph", name}, {"pass", all_pass(checks)}, {"checks", checks}});
    }
    return results;
}

json run_sampler(const VerifyOptions& opts) {
    const std::string name = opts.graph.empty() ? "C4" : opts.graph;
    ExplicitGraph g{ProductSpec::parse(name)};
    const Rational lambda = opts.lambda;
    auto table = g.measure_table(lambda);

    std::map<uint64_t, long> histogram;
    std::mt19937_64 rng(opts.seed);
    for (int i = 0; i < opts.samples; ++i) histogram[g.sample_muhat(lambda, rng)]++;

    // Empirical TV distance to the exact muhat table.
    Rational tv(0);
    long seen = 0;
    for (size_t i = 0; i < table.keys.size(); ++i) {
        auto it = histogram.find(table.keys[i]);
        const long count = it == histogram.end() ? 0 : it->second;
        seen += count;
        Rational emp(count, opts.samples);
        Rational diff = emp - table.muhat[i];
        if (diff.is_negative()) diff = -diff;
        tv += diff;
    }
    tv = tv / Rational(2);
    const bool all_keys_known = seen == opts.samples;  // no sample outside the table
    const bool close = tv < Rational(1, 100);

    json checks = json::array();
    checks.push_back(check("samples_are_independent_sets", all_keys_known));
    checks.push_back(check("empirical_tv_below_0.01", close,
                           {{"tv_empirical_muhat", tv.str()},
                            {"tv_empirical_muhat_approx", tv.num().get_d() / tv.den().get_d()},
                            {"samples", opts.samples},
                            {"seed", opts.seed}}));
    json results = json::array();
    results.push_back(json{{"graph", name},
                           {"lambda", lambda.str()},
                           {"tv_muhat_mu_exact", table.tv_muhat_mu.str()},
                           {"pass", all_pass(checks)},
                           {"checks", checks}});
    return results;
}

json run_estimates(const VerifyOptions& opts) {
    struct Target {
        std::string name;
        int s, t;
    };
    std::vector<Target> targets;
    if (opts.graph.empty()) {
        targets = {{"Q4", 1, 4}, {"K22xK22", 2, 2}};
    } else {
        ProductSpec spec = ProductSpec::parse(opts.graph);
        int s = -1;
        for (const auto& base : spec.bases()) {
            const int bs = base.size / 2;
            if (base.token != "Kss:" + std::to_string(bs) || (s >= 0 && bs != s)) {
                throw std::invalid_argument("estimates: graph must be a power of one K_{s,s}");
            }
            s = bs;
        }
        targets = {{opts.graph, s, spec.dimensions()}};
    }
    const Rational lambda = opts.lambda;
    json results = json::array();
    for (const auto& target : targets) {
        ExplicitGraph g{ProductSpec::parse(target.name)};
        const BigFloat log_z = BigFloat::log_of(g.z_exact(lambda));
        std::vector<BigFloat> errors;
        json table = json::array();
        for (int k = 0; k <= 2; ++k) {
            auto est = truncated_estimate(target.s, target.t, lambda, k);
            BigFloat err = (est.log_z - log_z).abs();
            errors.push_back(err);
            table.push_back(json{{"k", k},
                                 {"log_z_estimate", est.log_z.str()},
                                 {"abs_error", err.str()}});
        }
        json checks = json::array();
        checks.push_back(check("k2_at_least_as_close_as_k1", errors[2] <= errors[1]));
        checks.push_back(check("k0_baseline_is_worst",
                               errors[0] >= errors[1] && errors[0] >= errors[2]));
        results.push_back(json{{"graph", target.name},
                               {"s", target.s},
                               {"t", target.t},
                               {"lambda", lambda.str()},
                               {"log_z_exact", log_z.str()},
                               {"estimates", table},
                               {"pass", all_pass(checks)},
                               {"checks", checks}});
    }
    return results;
}

}  // namespace

std::string run_verify(const VerifyOptions& opts, bool* all_passed) {
    json results;
    if (opts.suite == "identities") {
        results = run_identities(opts);
    } else if (opts.suite == "isoperimetry") {
        results = run_isoperimetry(opts);
    } else if (opts.suite == "sampler") {
        results = run_sampler(opts);
    } else if (opts.suite == "estimates") {
        results = run_estimates(opts);
    } else {
        throw std::invalid_argument("unknown suite: " + opts.suite);
    }
    bool pass = true;
    for (const auto& r : results) {
        if (!r.at("pass").get<bool>()) pass = false;
    }
    if (all_passed) *all_passed = pass;
    json report{{"schema", 1}, {"suite", opts.suite}, {"pass", pass}, {"results", results}};
    return report.dump(2);
}

}  // namespace clusterexp
