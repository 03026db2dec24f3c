#include <doctest.h>

#include <random>

#include "clusterexp/polynomial.hpp"

using namespace clusterexp;

namespace {

Polynomial C(long num, long den = 1) { return Polynomial(Rational(num, den)); }

// Random sparse polynomial with small coefficients and exponents.
Polynomial random_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(0, 4);
    std::uniform_int_distribution<int> expd(0, 3);
    std::uniform_int_distribution<long> coefd(-5, 5);
    Polynomial p;
    const int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Monomial m;
        for (int v = 0; v < kNumVars; ++v) m.exp[size_t(v)] = uint16_t(expd(rng));
        p += Polynomial::monomial(m, Rational(coefd(rng)));
    }
    return p;
}

std::array<Rational, kNumVars> random_assignment(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> numd(-4, 4);
    std::uniform_int_distribution<long> dend(1, 4);
    std::array<Rational, kNumVars> out;
    for (auto& r : out) r = Rational(numd(rng), dend(rng));
    return out;
}

}  // namespace

TEST_CASE("arithmetic basics") {
    const Polynomial t = Polynomial::variable(Var::t);
    const Polynomial lam = Polynomial::variable(Var::lambda);
    CHECK((t + (-t)).is_zero());
    CHECK((lam + C(1)) * (lam + C(1)) == lam.pow(2) + C(2) * lam + C(1));

    Polynomial p = Polynomial::monomial(Monomial::var(Var::s, 2) * Monomial::var(Var::t, 2),
                                        Rational(3, 8));
    CHECK(p * C(1) == p);
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 200; ++i) {
        Polynomial a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937_64 rng(7);
    const std::array<bool, kNumVars> all{true, true, true, true};
    for (int i = 0; i < 100; ++i) {
        Polynomial a = random_poly(rng), b = random_poly(rng);
        auto x = random_assignment(rng);
        CHECK(poly_eval(a + b, x, all) == poly_eval(a, x, all) + poly_eval(b, x, all));
        CHECK(poly_eval(a * b, x, all) == poly_eval(a, x, all) * poly_eval(b, x, all));
    }
}

TEST_CASE("evaluation requires assignments for appearing variables") {
    const Polynomial p = Polynomial::variable(Var::u) * C(2);
    std::array<Rational, kNumVars> x{};
    CHECK_THROWS_AS(poly_eval(p, x, {true, true, true, false}), std::invalid_argument);
    // Unused variables need no assignment.
    CHECK(poly_eval(Polynomial::variable(Var::t), {Rational(0), Rational(3), Rational(0),
                                                   Rational(0)},
                    {false, true, false, false}) == Rational(3));
}

TEST_CASE("binomial polynomials") {
    CHECK(binom_affine(Var::t, 0, 2) ==
          (Polynomial::variable(Var::t).pow(2) - Polynomial::variable(Var::t)).scaled(
              Rational(1, 2)));
    CHECK(binom_affine(Var::s, -1, 1) == Polynomial::variable(Var::s) - C(1));
    CHECK(binom_affine(Var::s, 0, 0) == C(1));

    // Matches integer binomials for all n, k <= 12.
    for (unsigned k = 0; k <= 12; ++k) {
        Polynomial p = binom_affine(Var::s, 0, k);
        for (long n = long(k); n <= 12; ++n) {
            Rational v = poly_eval(p, {Rational(n), {}, {}, {}}, {true, false, false, false});
            CHECK(v == Rational(binomial(unsigned(n), k)));
        }
    }
}

TEST_CASE("substitution") {
    const Polynomial u = Polynomial::variable(Var::u);
    const Polynomial t = Polynomial::variable(Var::t);
    const Polynomial s = Polynomial::variable(Var::s);
    const Polynomial lam = Polynomial::variable(Var::lambda);
    CHECK(poly_substitute(u * t, Var::u, lam + C(1)) == (lam + C(1)) * t);
    CHECK(poly_substitute(s - C(1), Var::s, Rational(1)).is_zero());

    Polynomial p = C(3, 8) * s.pow(2) * t.pow(2) - C(3, 8) * s.pow(2) * t - C(1, 4);
    Polynomial expected = (C(3) * t.pow(2) - C(3) * t - C(2)).scaled(Rational(1, 8));
    CHECK(poly_substitute(p, Var::s, Rational(1)) == expected);
}

TEST_CASE("evaluation examples") {
    const Polynomial half_lambda = Polynomial::variable(Var::lambda).scaled(Rational(1, 2));
    CHECK(poly_eval(half_lambda, {{}, {}, Rational(1), {}}, {false, false, true, false}) ==
          Rational(1, 2));
    const Polynomial p =
        Polynomial::monomial(Monomial::var(Var::s, 2) * Monomial::var(Var::t, 2),
                             Rational(3, 8));
    CHECK(poly_eval(p, {Rational(1), Rational(3), {}, {}}, {true, true, false, false}) ==
          Rational(27, 8));
    CHECK(poly_eval(Polynomial::variable(Var::u) - C(1), {{}, {}, {}, Rational(4)},
                    {false, false, false, true}) == Rational(3));
}

TEST_CASE("serialization") {
    CHECK(poly_to_text(Polynomial{}) == "0");
    CHECK(poly_to_text(Polynomial::variable(Var::lambda).scaled(Rational(1, 2))) ==
          "1/2*λ");
    // Canonical order: graded lex with t > s > lambda > u.
    const Polynomial s = Polynomial::variable(Var::s);
    const Polynomial t = Polynomial::variable(Var::t);
    CHECK(poly_to_text(s + t + C(1)) == "t + s + 1");
    CHECK(poly_to_text(t * t - s) == "t^2 - s");

    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        Polynomial a = random_poly(rng), b = random_poly(rng);
        // Round trip through JSON.
        CHECK(poly_from_json(poly_to_json(a)) == a);
        // Injective on canonical forms.
        if (!(a == b)) {
            CHECK(poly_to_text(a) != poly_to_text(b));
            CHECK(poly_to_json(a) != poly_to_json(b));
        }
    }
}
