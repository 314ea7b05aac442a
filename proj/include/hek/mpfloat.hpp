#pragma once
// Thin RAII wrapper around an MPFR value. Precision of newly created values
// comes from a thread-local default so concurrent workers never interfere.

#include <mpfr.h>

#include <cmath>
#include <string>
#include <utility>

namespace hek {

namespace detail {
inline mpfr_prec_t& thread_precision() {
    thread_local mpfr_prec_t bits = 128;
    return bits;
}
}  // namespace detail

/// Sets the working precision (in bits) of the current thread for its lifetime.
class PrecisionScope {
public:
    explicit PrecisionScope(long bits) : saved_(detail::thread_precision()) {
        detail::thread_precision() = bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits;
    }
    ~PrecisionScope() { detail::thread_precision() = saved_; }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    mpfr_prec_t saved_;
};

inline long working_bits() { return detail::thread_precision(); }

class Mpf {
public:
    Mpf() { mpfr_init2(v_, detail::thread_precision()); mpfr_set_zero(v_, 1); }
    Mpf(double d) { mpfr_init2(v_, detail::thread_precision()); mpfr_set_d(v_, d, MPFR_RNDN); }
    Mpf(int i) { mpfr_init2(v_, detail::thread_precision()); mpfr_set_si(v_, i, MPFR_RNDN); }
    Mpf(long i) { mpfr_init2(v_, detail::thread_precision()); mpfr_set_si(v_, i, MPFR_RNDN); }
    Mpf(const Mpf& o) { mpfr_init2(v_, detail::thread_precision()); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Mpf(Mpf&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    ~Mpf() { mpfr_clear(v_); }

    Mpf& operator=(const Mpf& o) { if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN); return *this; }
    Mpf& operator=(Mpf&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    Mpf& operator=(double d) { mpfr_set_d(v_, d, MPFR_RNDN); return *this; }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    explicit operator double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    Mpf& operator+=(const Mpf& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Mpf& operator-=(const Mpf& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Mpf& operator*=(const Mpf& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Mpf& operator/=(const Mpf& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Mpf& operator+=(double d) { mpfr_add_d(v_, v_, d, MPFR_RNDN); return *this; }
    Mpf& operator-=(double d) { mpfr_sub_d(v_, v_, d, MPFR_RNDN); return *this; }
    Mpf& operator*=(double d) { mpfr_mul_d(v_, v_, d, MPFR_RNDN); return *this; }
    Mpf& operator/=(double d) { mpfr_div_d(v_, v_, d, MPFR_RNDN); return *this; }

    Mpf operator-() const { Mpf r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

    std::string str(int digits = 30) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    static Mpf from_string(const char* s) { Mpf r; mpfr_set_str(r.v_, s, 10, MPFR_RNDN); return r; }

private:
    mpfr_t v_;
};

#define HEK_MPF_BINOP(op, fn, fnd)                                                          \
    inline Mpf operator op(const Mpf& a, const Mpf& b) { Mpf r; fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN); return r; } \
    inline Mpf operator op(const Mpf& a, double b) { Mpf r; fnd(r.raw(), a.raw(), b, MPFR_RNDN); return r; }
HEK_MPF_BINOP(+, mpfr_add, mpfr_add_d)
HEK_MPF_BINOP(-, mpfr_sub, mpfr_sub_d)
HEK_MPF_BINOP(*, mpfr_mul, mpfr_mul_d)
HEK_MPF_BINOP(/, mpfr_div, mpfr_div_d)
#undef HEK_MPF_BINOP

inline Mpf operator+(double a, const Mpf& b) { return b + a; }
inline Mpf operator*(double a, const Mpf& b) { return b * a; }
inline Mpf operator-(double a, const Mpf& b) { Mpf r; mpfr_d_sub(r.raw(), a, b.raw(), MPFR_RNDN); return r; }
inline Mpf operator/(double a, const Mpf& b) { Mpf r; mpfr_d_div(r.raw(), a, b.raw(), MPFR_RNDN); return r; }

inline bool operator<(const Mpf& a, const Mpf& b) { return mpfr_less_p(a.raw(), b.raw()); }
inline bool operator>(const Mpf& a, const Mpf& b) { return mpfr_greater_p(a.raw(), b.raw()); }
inline bool operator<=(const Mpf& a, const Mpf& b) { return mpfr_lessequal_p(a.raw(), b.raw()); }
inline bool operator>=(const Mpf& a, const Mpf& b) { return mpfr_greaterequal_p(a.raw(), b.raw()); }
inline bool operator==(const Mpf& a, const Mpf& b) { return mpfr_equal_p(a.raw(), b.raw()); }
inline bool operator!=(const Mpf& a, const Mpf& b) { return !mpfr_equal_p(a.raw(), b.raw()); }
inline bool operator<(const Mpf& a, double b) { return mpfr_cmp_d(a.raw(), b) < 0; }
inline bool operator>(const Mpf& a, double b) { return mpfr_cmp_d(a.raw(), b) > 0; }
inline bool operator==(const Mpf& a, double b) { return mpfr_cmp_d(a.raw(), b) == 0; }
inline bool operator!=(const Mpf& a, double b) { return mpfr_cmp_d(a.raw(), b) != 0; }

#define HEK_MPF_UNARY(name, fn) \
    inline Mpf name(const Mpf& a) { Mpf r; fn(r.raw(), a.raw(), MPFR_RNDN); return r; }
HEK_MPF_UNARY(abs, mpfr_abs)
HEK_MPF_UNARY(sqrt, mpfr_sqrt)
HEK_MPF_UNARY(exp, mpfr_exp)
HEK_MPF_UNARY(log, mpfr_log)
HEK_MPF_UNARY(sin, mpfr_sin)
HEK_MPF_UNARY(cos, mpfr_cos)
HEK_MPF_UNARY(tgamma, mpfr_gamma)
HEK_MPF_UNARY(digamma, mpfr_digamma)
HEK_MPF_UNARY(asinh, mpfr_asinh)
#undef HEK_MPF_UNARY

inline Mpf lgamma(const Mpf& a) { Mpf r; int s; mpfr_lgamma(r.raw(), &s, a.raw(), MPFR_RNDN); return r; }
inline Mpf floor(const Mpf& a) { Mpf r; mpfr_floor(r.raw(), a.raw()); return r; }
inline Mpf pow(const Mpf& a, const Mpf& b) { Mpf r; mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN); return r; }
inline Mpf pow(const Mpf& a, long n) { Mpf r; mpfr_pow_si(r.raw(), a.raw(), n, MPFR_RNDN); return r; }
inline Mpf ldexp(const Mpf& a, long e) { Mpf r; mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN); return r; }
inline bool signbit(const Mpf& a) { return mpfr_signbit(a.raw()) != 0; }
inline bool isfinite(const Mpf& a) { return mpfr_number_p(a.raw()) != 0; }
inline bool is_zero(const Mpf& a) { return mpfr_zero_p(a.raw()) != 0; }

inline Mpf mpf_pi() { Mpf r; mpfr_const_pi(r.raw(), MPFR_RNDN); return r; }
inline Mpf mpf_euler() { Mpf r; mpfr_const_euler(r.raw(), MPFR_RNDN); return r; }

/// Natural log of |a| without leaving double range, valid for any nonzero a.
inline double log_abs(const Mpf& a) {
    long e = 0;
    double d = mpfr_get_d_2exp(&e, a.raw(), MPFR_RNDN);
    return std::log(std::fabs(d)) + static_cast<double>(e) * 0.69314718055994530942;
}

}  // namespace hek
