#pragma once
// Number types shared by every module:
//   ScaledReal  public value = significand * e^exponent
//   Xd          extended-range double (value = s * 2^k), internal work type
//   Tracked<W>  value plus running magnitude bound for cancellation tracking
// and the adaptive-precision driver that re-runs a computation in MPFR when the
// double-precision result has lost too many digits.

#include "hek/mpfloat.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace hek {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kPi = 3.14159265358979323846;
constexpr double kEuler = 0.57721566490153286061;

// ---------------------------------------------------------------- ScaledReal

struct ScaledReal {
    double significand = 0.0;
    double exponent = 0.0;

    ScaledReal() = default;
    ScaledReal(double s, double e) : significand(s), exponent(e) { normalize(); }
    static ScaledReal from_log(int sign, double log_abs) {
        if (sign == 0) return {};
        return ScaledReal(sign > 0 ? 1.0 : -1.0, log_abs);
    }

    ScaledReal& normalize() {
        if (significand == 0.0 || !std::isfinite(significand)) {
            if (significand == 0.0) exponent = 0.0;
            return *this;
        }
        double n = std::round(std::log(std::fabs(significand)));
        if (n != 0.0) {
            significand *= std::exp(-n);
            exponent += n;
        }
        return *this;
    }
    double value() const { return significand == 0.0 ? 0.0 : significand * std::exp(exponent); }
    double log_abs() const { return std::log(std::fabs(significand)) + exponent; }
    int sign() const { return (significand > 0) - (significand < 0); }
};

inline ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
    return ScaledReal(a.significand * b.significand, a.exponent + b.exponent);
}
inline ScaledReal operator/(const ScaledReal& a, const ScaledReal& b) {
    return ScaledReal(a.significand / b.significand, a.exponent - b.exponent);
}
inline ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
    if (a.significand == 0.0) return b;
    if (b.significand == 0.0) return a;
    if (a.exponent >= b.exponent)
        return ScaledReal(a.significand + b.significand * std::exp(b.exponent - a.exponent), a.exponent);
    return ScaledReal(b.significand + a.significand * std::exp(a.exponent - b.exponent), b.exponent);
}
inline ScaledReal operator-(const ScaledReal& a) { return {-a.significand, a.exponent}; }
inline ScaledReal operator-(const ScaledReal& a, const ScaledReal& b) { return a + (-b); }

// ---------------------------------------------------------------- Xd

struct Xd {
    double s = 0.0;      // 0 or |s| in [0.5, 1)
    std::int64_t k = 0;  // binary exponent

    Xd() = default;
    Xd(double d) { int e = 0; s = std::frexp(d, &e); k = s == 0.0 ? 0 : e; }
    Xd(double s_, std::int64_t k_) : s(s_), k(k_) { norm(); }

    void norm() {
        if (s == 0.0) { k = 0; return; }
        int e = 0;
        s = std::frexp(s, &e);
        k += e;
    }
    Xd operator-() const { Xd r = *this; r.s = -s; return r; }
    Xd& operator+=(const Xd& o);
    Xd& operator-=(const Xd& o) { return *this += -o; }
    Xd& operator*=(const Xd& o) { s *= o.s; k += o.k; norm(); return *this; }
    Xd& operator/=(const Xd& o) { s /= o.s; k -= o.k; norm(); return *this; }
};

inline Xd& Xd::operator+=(const Xd& o) {
    if (o.s == 0.0) return *this;
    if (s == 0.0) { *this = o; return *this; }
    std::int64_t d = k - o.k;
    if (d >= 0) {
        if (d < 1100) s += std::ldexp(o.s, static_cast<int>(-d));
    } else {
        if (-d < 1100) s = o.s + std::ldexp(s, static_cast<int>(d));
        else s = o.s;
        k = o.k;
    }
    norm();
    return *this;
}

inline Xd operator+(Xd a, const Xd& b) { return a += b; }
inline Xd operator-(Xd a, const Xd& b) { return a -= b; }
inline Xd operator*(Xd a, const Xd& b) { return a *= b; }
inline Xd operator/(Xd a, const Xd& b) { return a /= b; }
inline Xd operator*(Xd a, double b) { return a *= Xd(b); }
inline Xd operator/(Xd a, double b) { return a /= Xd(b); }
inline Xd operator+(Xd a, double b) { return a += Xd(b); }
inline Xd operator-(Xd a, double b) { return a -= Xd(b); }
inline Xd operator*(double a, Xd b) { return b *= Xd(a); }
inline Xd abs(const Xd& a) { return Xd(std::fabs(a.s), a.k); }
inline bool signbit(const Xd& a) { return std::signbit(a.s); }
inline bool is_zero(const Xd& a) { return a.s == 0.0; }
inline bool isfinite(const Xd& a) { return std::isfinite(a.s); }
inline double log_abs(const Xd& a) { return std::log(std::fabs(a.s)) + static_cast<double>(a.k) * kLn2; }
inline bool operator<(const Xd& a, const Xd& b) {
    if (a.s == 0.0 || b.s == 0.0 || (a.s > 0) != (b.s > 0)) return a.s < b.s;
    if (a.k != b.k) return a.s > 0 ? a.k < b.k : a.k > b.k;
    return a.s < b.s;
}
inline bool operator>(const Xd& a, const Xd& b) { return b < a; }

// ---------------------------------------------------------------- traits

inline double log_abs(double a) { return std::log(std::fabs(a)); }
inline bool is_zero(double a) { return a == 0.0; }
inline double abs(double a) { return std::fabs(a); }

/// Real is the arithmetic type (double or Mpf); Wide the range-safe accumulator.
template <class Real> struct WideOf;
template <> struct WideOf<double> { using type = Xd; };
template <> struct WideOf<Mpf> { using type = Mpf; };
template <class Real> using Wide = typename WideOf<Real>::type;

template <class Real> inline Real const_pi();
template <> inline double const_pi<double>() { return kPi; }
template <> inline Mpf const_pi<Mpf>() { return mpf_pi(); }
template <class Real> inline Real const_euler();
template <> inline double const_euler<double>() { return kEuler; }
template <> inline Mpf const_euler<Mpf>() { return mpf_euler(); }

template <class Real> inline double unit_roundoff();
template <> inline double unit_roundoff<double>() { return std::ldexp(1.0, -53); }
template <> inline double unit_roundoff<Mpf>() { return std::ldexp(1.0, -static_cast<int>(working_bits())); }

inline double to_double(double a) { return a; }
inline double to_double(const Mpf& a) { return static_cast<double>(a); }
inline double to_double(const Xd& a) { return std::ldexp(a.s, static_cast<int>(std::max<std::int64_t>(std::min<std::int64_t>(a.k, 4000), -4000))); }

inline ScaledReal to_scaled(double a, double expo = 0.0) {
    if (a == 0.0) return {};
    return ScaledReal::from_log(a > 0 ? 1 : -1, std::log(std::fabs(a)) + expo);
}
inline ScaledReal to_scaled(const Xd& a, double expo = 0.0) {
    if (a.s == 0.0) return {};
    return ScaledReal(a.s, expo + static_cast<double>(a.k) * kLn2);
}
inline ScaledReal to_scaled(const Mpf& a, double expo = 0.0) {
    if (is_zero(a)) return {};
    return ScaledReal::from_log(signbit(a) ? -1 : 1, log_abs(a) + expo);
}

/// exp(x) in the wide type without overflowing double.
inline Xd wide_exp(double x) {
    double kf = std::floor(x / kLn2);
    return Xd(std::exp(x - kf * kLn2), static_cast<std::int64_t>(kf));
}
inline Mpf wide_exp(const Mpf& x) { return exp(x); }

inline double lgam(double x) { return std::lgamma(x); }
inline Mpf lgam(const Mpf& x) { return lgamma(x); }

// ---------------------------------------------------------------- Tracked

/// Value with a magnitude bound m >= sum of |contributions|; the rounding error
/// of v is O(u * m), so m/|v| is the amplification of unit roundoff.
template <class W>
struct Tracked {
    W v{};
    W m{};
    Tracked() = default;
    Tracked(const W& value) : v(value), m(abs(value)) {}
    Tracked(const W& value, const W& mag) : v(value), m(mag) {}
};

template <class W> inline Tracked<W> operator+(const Tracked<W>& a, const Tracked<W>& b) { return {a.v + b.v, a.m + b.m}; }
template <class W> inline Tracked<W> operator-(const Tracked<W>& a, const Tracked<W>& b) { return {a.v - b.v, a.m + b.m}; }
template <class W> inline Tracked<W> operator*(const Tracked<W>& a, const Tracked<W>& b) { return {a.v * b.v, a.m * b.m}; }
template <class W> inline Tracked<W> operator-(const Tracked<W>& a) { return {-a.v, a.m}; }
template <class W, class S> inline Tracked<W> scale(const Tracked<W>& a, const S& c) { return {a.v * c, a.m * abs(W(c))}; }

/// Estimated relative error of a tracked value computed at the current precision.
template <class Real, class W>
inline double rel_error(const Tracked<W>& t, double safety = 16.0) {
    if (is_zero(t.m)) return 0.0;
    if (is_zero(t.v)) return std::numeric_limits<double>::infinity();
    double lr = log_abs(t.m) - log_abs(t.v);
    return safety * unit_roundoff<Real>() * std::exp(std::min(lr, 700.0));
}

// ---------------------------------------------------------------- adaptive driver

struct PrecisionPolicy {
    double tol = 1e-13;      // target relative error
    long max_bits = 8192;    // hard cap
};

/// Result of an adaptive evaluation: value in double land plus diagnostics.
template <class Out>
struct Adaptive {
    Out value{};
    double rel_err = 0.0;
    long bits = 53;
    bool converged = true;
};

/// f is a generic callable: f(Real{}) returns std::pair<Out, double rel_err>
/// computed in arithmetic Real. It is first run in double, then in MPFR with
/// a precision grown from the observed error until the tolerance is met.
template <class F>
auto run_adaptive(F&& f, const PrecisionPolicy& pol = {}) {
    auto first = f(double{});
    using Out = decltype(first.first);
    Adaptive<Out> res{first.first, first.second, 53, true};
    if (res.rel_err <= pol.tol) return res;
    double loss = std::isfinite(res.rel_err) ? std::log2(std::max(res.rel_err / pol.tol, 2.0)) : 64.0;
    long bits = std::max<long>(128, static_cast<long>(53 + loss + 40));
    for (int iter = 0; iter < 12; ++iter) {
        if (bits > pol.max_bits) bits = pol.max_bits;
        PrecisionScope scope(bits);
        auto r = f(Mpf{});
        res.value = r.first;
        res.rel_err = r.second;
        res.bits = bits;
        if (r.second <= pol.tol) return res;
        if (bits >= pol.max_bits) break;
        double more = std::isfinite(r.second) ? std::log2(std::max(r.second / pol.tol, 2.0)) : static_cast<double>(bits);
        bits = std::max(bits * 3 / 2, static_cast<long>(bits + more + 40));
    }
    res.converged = false;
    return res;
}

}  // namespace hek
