#pragma once

#include <mpfr.h>

#include <string>

#include "clusterexp/rational.hpp"

namespace clusterexp {

// Fixed-precision (128-bit mantissa) floating point used for the few places
// where logs/exps of exact rationals must be compared. All inputs are exact;
// comparisons made through this type carry margins far above 2^-64.
class BigFloat {
public:
    static constexpr mpfr_prec_t kPrecision = 128;

    BigFloat() { mpfr_init2(v_, kPrecision); mpfr_set_zero(v_, 1); }
    explicit BigFloat(const Rational& q) : BigFloat() {
        mpfr_set_q(v_, q.raw().get_mpq_t(), MPFR_RNDN);
    }
    explicit BigFloat(double d) : BigFloat() { mpfr_set_d(v_, d, MPFR_RNDN); }
    BigFloat(const BigFloat& o) : BigFloat() { mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, kPrecision);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat log_of(const Rational& q) {
        BigFloat r(q);
        mpfr_log(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat log2_constant() { return log_of(Rational(2)); }

    BigFloat operator+(const BigFloat& o) const {
        BigFloat r;
        mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-(const BigFloat& o) const {
        BigFloat r;
        mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator*(const BigFloat& o) const {
        BigFloat r;
        mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
        return r;
    }
    BigFloat abs() const {
        BigFloat r;
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }

    bool operator<(const BigFloat& o) const { return mpfr_cmp(v_, o.v_) < 0; }
    bool operator<=(const BigFloat& o) const { return mpfr_cmp(v_, o.v_) <= 0; }
    bool operator>(const BigFloat& o) const { return mpfr_cmp(v_, o.v_) > 0; }
    bool operator>=(const BigFloat& o) const { return mpfr_cmp(v_, o.v_) >= 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string str(int digits = 30) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

private:
    mpfr_t v_;
};

}  // namespace clusterexp
