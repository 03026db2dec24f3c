#include "clusterexp/polynomial.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <vector>

namespace clusterexp {

const char* var_name(Var v) {
    static constexpr const char* names[] = {"s", "t", "lambda", "u"};
    return names[int(v)];
}

const char* var_pretty(Var v) {
    static constexpr const char* names[] = {"s", "t", "λ", "u"};
    return names[int(v)];
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r;
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r(1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

Polynomial binom_affine(Var var, long shift, unsigned k) {
    Polynomial r(1);
    const Polynomial x = Polynomial::variable(var);
    for (unsigned i = 0; i < k; ++i) {
        r *= x + Polynomial(Rational(shift - long(i)));
    }
    return r.scaled(Rational(mpz_class(1), factorial(k)));
}

Rational poly_eval(const Polynomial& p,
                   const std::array<Rational, kNumVars>& assignment,
                   const std::array<bool, kNumVars>& assigned) {
    Rational total(0);
    for (const auto& [m, c] : p.terms()) {
        Rational term = c;
        for (int i = 0; i < kNumVars; ++i) {
            if (m.exp[i] == 0) continue;
            if (!assigned[i]) {
                throw std::invalid_argument(std::string("poly_eval: no assignment for ") +
                                            var_name(Var(i)));
            }
            term *= assignment[i].pow(m.exp[i]);
        }
        total += term;
    }
    return total;
}

Rational poly_eval_full(const Polynomial& p, const Rational& s, const Rational& t,
                        const Rational& lambda, const Rational& u) {
    return poly_eval(p, {s, t, lambda, u}, {true, true, true, true});
}

Polynomial poly_substitute(const Polynomial& p, Var var, const Polynomial& value) {
    Polynomial r;
    std::vector<Polynomial> powers{Polynomial(1)};  // value^i cache
    for (const auto& [m, c] : p.terms()) {
        uint16_t e = m[var];
        Monomial rest = m;
        rest.exp[int(var)] = 0;
        while (powers.size() <= e) powers.push_back(powers.back() * value);
        r += powers[e] * Polynomial::monomial(rest, c);
    }
    return r;
}

namespace {

void append_monomial_text(std::ostringstream& out, const Monomial& m, bool pretty) {
    static constexpr Var prec[] = {Var::t, Var::s, Var::lambda, Var::u};
    bool first = true;
    for (Var v : prec) {
        uint16_t e = m[v];
        if (e == 0) continue;
        if (!first) out << "*";
        out << (pretty ? var_pretty(v) : var_name(v));
        if (e > 1) out << "^" << e;
        first = false;
    }
}

}  // namespace

std::string poly_to_text(const Polynomial& p, bool pretty_lambda) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational a = c;
        if (first) {
            if (a.is_negative()) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a.is_negative() ? " - " : " + ");
            if (a.is_negative()) a = -a;
        }
        first = false;
        if (m == Monomial::one()) {
            out << a.str();
        } else {
            if (!(a == Rational(1))) out << a.str() << "*";
            append_monomial_text(out, m, pretty_lambda);
        }
    }
    return out.str();
}

std::string poly_to_latex(const Polynomial& p) {
    if (p.is_zero()) return "0";
    // Group terms by descending power of t; within a group the map order
    // already matches the canonical order.
    std::map<uint16_t, std::vector<std::pair<Monomial, Rational>>, std::greater<>> groups;
    for (const auto& [m, c] : p.terms()) groups[m[Var::t]].push_back({m, c});

    auto coeff_tex = [](const Rational& a) {
        if (a.is_integer()) return a.num().get_str();
        mpz_class n = a.num() < 0 ? mpz_class(-a.num()) : a.num();
        std::string s = "\\frac{" + n.get_str() + "}{" + a.den().get_str() + "}";
        return a.is_negative() ? "-" + s : s;
    };
    auto mono_tex = [](const Monomial& m, Var skip) {
        static constexpr Var prec[] = {Var::s, Var::lambda, Var::u};
        std::string out;
        for (Var v : prec) {
            if (v == skip) continue;
            uint16_t e = m[v];
            if (e == 0) continue;
            out += (v == Var::lambda) ? "\\lambda" : var_name(v);
            if (e > 1) out += "^{" + std::to_string(e) + "}";
            out += " ";
        }
        if (!out.empty()) out.pop_back();
        return out;
    };

    std::ostringstream out;
    bool first_group = true;
    for (const auto& [tdeg, terms] : groups) {
        std::ostringstream grp;
        bool first = true;
        bool parens = terms.size() > 1 && tdeg > 0;
        for (const auto& [m, c] : terms) {
            Rational a = c;
            if (!first) {
                grp << (a.is_negative() ? " - " : " + ");
                if (a.is_negative()) a = -a;
            } else if (a.is_negative() && parens) {
                grp << "-";
                a = -a;
            }
            first = false;
            std::string mono = mono_tex(m, Var::t);
            if (mono.empty()) {
                grp << coeff_tex(a);
            } else {
                if (!(a == Rational(1))) grp << coeff_tex(a) << " \\, ";
                grp << mono;
            }
        }
        std::string body = grp.str();
        bool negative_head = !body.empty() && body[0] == '-';
        if (!first_group) {
            out << (negative_head ? " - " : " + ");
            if (negative_head) body = body.substr(1);
        }
        first_group = false;
        if (parens) body = "\\left(" + body + "\\right)";
        out << body;
        if (tdeg > 0) {
            out << " \\, t";
            if (tdeg > 1) out << "^{" << tdeg << "}";
        }
    }
    return out.str();
}

std::string poly_to_json(const Polynomial& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        terms.push_back({{"exp", {m[Var::s], m[Var::t], m[Var::lambda], m[Var::u]}},
                         {"num", c.num().get_str()},
                         {"den", c.den().get_str()}});
    }
    nlohmann::json j{{"vars", {"s", "t", "lambda", "u"}}, {"terms", terms}};
    return j.dump();
}

Polynomial poly_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    Polynomial p;
    for (const auto& term : j.at("terms")) {
        const auto& e = term.at("exp");
        Monomial m;
        m.exp[int(Var::s)] = e.at(0).get<uint16_t>();
        m.exp[int(Var::t)] = e.at(1).get<uint16_t>();
        m.exp[int(Var::lambda)] = e.at(2).get<uint16_t>();
        m.exp[int(Var::u)] = e.at(3).get<uint16_t>();
        p.add_term(m, Rational(mpz_class(term.at("num").get<std::string>()),
                               mpz_class(term.at("den").get<std::string>())));
    }
    return p;
}

}  // namespace clusterexp
