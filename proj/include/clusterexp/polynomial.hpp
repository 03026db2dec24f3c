#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "clusterexp/rational.hpp"

namespace clusterexp {

// The fixed indeterminate set. `u` is an independent variable standing for
// (1+lambda)^s; the relation is applied only via explicit substitution.
enum class Var : int { s = 0, t = 1, lambda = 2, u = 3 };

constexpr int kNumVars = 4;

const char* var_name(Var v);        // "s", "t", "lambda", "u"
const char* var_pretty(Var v);      // "s", "t", "λ", "u"

// Exponent vector in sparse-canonical form (zero exponents implicit).
struct Monomial {
    std::array<uint16_t, kNumVars> exp{0, 0, 0, 0};

    uint32_t degree() const {
        return uint32_t(exp[0]) + exp[1] + exp[2] + exp[3];
    }
    uint16_t operator[](Var v) const { return exp[int(v)]; }
    bool operator==(const Monomial&) const = default;

    static Monomial one() { return Monomial{}; }
    static Monomial var(Var v, uint16_t e = 1) {
        Monomial m;
        m.exp[int(v)] = e;
        return m;
    }
    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kNumVars; ++i) r.exp[i] = uint16_t(exp[i] + o.exp[i]);
        return r;
    }
};

// Graded lexicographic order, precedence t > s > lambda > u; larger first so
// map iteration yields the canonical display order (leading term first).
struct MonomialOrder {
    static int cmp(const Monomial& a, const Monomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
        static constexpr Var prec[] = {Var::t, Var::s, Var::lambda, Var::u};
        for (Var v : prec) {
            if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
        }
        return 0;
    }
    bool operator()(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }
};

class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    Polynomial() = default;
    explicit Polynomial(const Rational& c) {
        if (!c.is_zero()) terms_[Monomial::one()] = c;
    }
    explicit Polynomial(long c) : Polynomial(Rational(c)) {}

    static Polynomial variable(Var v, uint16_t e = 1) {
        return monomial(Monomial::var(v, e), Rational(1));
    }
    static Polynomial monomial(const Monomial& m, const Rational& c) {
        Polynomial p;
        if (!c.is_zero()) p.terms_[m] = c;
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    // Coefficient of m (zero when absent).
    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coeff(Monomial::one()); }
    uint32_t degree() const {
        return terms_.empty() ? 0 : terms_.begin()->first.degree();
    }
    uint16_t degree_in(Var v) const {
        uint16_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
        return d;
    }

    void add_term(const Monomial& m, const Rational& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial operator-() const;
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial scaled(const Rational& c) const;
    Polynomial pow(unsigned e) const;

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

private:
    TermMap terms_;  // no zero coefficients stored
};

// C(var + shift, k) as a polynomial: (var+shift)(var+shift-1)...(var+shift-k+1)/k!.
Polynomial binom_affine(Var var, long shift, unsigned k);

// Exact evaluation; throws std::invalid_argument when a variable that appears
// in p has no assignment (assigned[i] false).
Rational poly_eval(const Polynomial& p,
                   const std::array<Rational, kNumVars>& assignment,
                   const std::array<bool, kNumVars>& assigned);

// Convenience wrapper: all four variables assigned.
Rational poly_eval_full(const Polynomial& p, const Rational& s, const Rational& t,
                        const Rational& lambda, const Rational& u);

Polynomial poly_substitute(const Polynomial& p, Var var, const Polynomial& value);
inline Polynomial poly_substitute(const Polynomial& p, Var var, const Rational& value) {
    return poly_substitute(p, var, Polynomial(value));
}

// Deterministic canonical text, e.g. "3/8*s^2*t^2 - 1/4". Zero is "0".
std::string poly_to_text(const Polynomial& p, bool pretty_lambda = true);

// LaTeX, terms grouped by descending power of t.
std::string poly_to_latex(const Polynomial& p);

// {"vars":["s","t","lambda","u"],"terms":[{"exp":[es,et,el,eu],"num":"..","den":".."},...]}
std::string poly_to_json(const Polynomial& p);
Polynomial poly_from_json(const std::string& json_text);

}  // namespace clusterexp
