// Arbitrary-precision real and complex scalars on top of MPFR.
//
// Every value carries its own mantissa precision; binary operations produce
// results at the larger operand precision, so precision never silently
// degrades below what the caller requested. There is no ambient global
// precision anywhere in this library.

#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace starkforge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct PoleAtNonPositiveInteger : Error { using Error::Error; };

namespace mpk {

inline constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

class BigReal {
public:
    BigReal() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
    explicit BigReal(long prec) { mpfr_init2(v_, prec_ok(prec)); mpfr_set_zero(v_, 1); }
    BigReal(long x, long prec) { mpfr_init2(v_, prec_ok(prec)); mpfr_set_si(v_, x, kRnd); }
    BigReal(int x, long prec) : BigReal(static_cast<long>(x), prec) {}
    BigReal(double x, long prec) { mpfr_init2(v_, prec_ok(prec)); mpfr_set_d(v_, x, kRnd); }
    // re-round an existing value to a new working precision
    BigReal(const BigReal& o, long prec) { mpfr_init2(v_, prec_ok(prec)); mpfr_set(v_, o.raw(), kRnd); }
    BigReal(const mpz_class& x, long prec) { mpfr_init2(v_, prec_ok(prec)); mpfr_set_z(v_, x.get_mpz_t(), kRnd); }
    BigReal(const mpq_class& x, long prec) { mpfr_init2(v_, prec_ok(prec)); mpfr_set_q(v_, x.get_mpq_t(), kRnd); }
    BigReal(const std::string& s, long prec) {
        mpfr_init2(v_, prec_ok(prec));
        if (mpfr_set_str(v_, s.c_str(), 10, kRnd) != 0)
            throw DomainError("BigReal: unparseable decimal string: " + s);
    }

    BigReal(const BigReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, kRnd); }
    BigReal(BigReal&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, kRnd); }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~BigReal() { mpfr_clear(v_); }

    long prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, kRnd); }
    long to_long() const { return mpfr_get_si(v_, kRnd); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_nan() const { return mpfr_nan_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }
    int sign() const { return mpfr_sgn(v_); }

    std::string str(size_t digits = 0) const;

    static long prec_ok(long p) {
        if (p < 2) throw DomainError("BigReal: precision must be >= 2 bits");
        return p;
    }

private:
    mpfr_t v_;
};

inline long pmax(const BigReal& a, const BigReal& b) { return std::max(a.prec(), b.prec()); }

#define SF_MP_BIN(op, fn)                                                     \
    inline BigReal operator op(const BigReal& a, const BigReal& b) {          \
        BigReal r(pmax(a, b));                                                \
        fn(r.raw(), a.raw(), b.raw(), kRnd);                                  \
        return r;                                                             \
    }                                                                         \
    inline BigReal operator op(const BigReal& a, long b) {                    \
        BigReal r(a.prec());                                                  \
        fn##_si(r.raw(), a.raw(), b, kRnd);                                   \
        return r;                                                             \
    }

SF_MP_BIN(+, mpfr_add)
SF_MP_BIN(-, mpfr_sub)
SF_MP_BIN(*, mpfr_mul)
SF_MP_BIN(/, mpfr_div)
#undef SF_MP_BIN

inline BigReal operator+(long a, const BigReal& b) { return b + a; }
inline BigReal operator*(long a, const BigReal& b) { return b * a; }
inline BigReal operator-(long a, const BigReal& b) {
    BigReal r(b.prec()); mpfr_si_sub(r.raw(), a, b.raw(), kRnd); return r;
}
inline BigReal operator/(long a, const BigReal& b) {
    BigReal r(b.prec()); mpfr_si_div(r.raw(), a, b.raw(), kRnd); return r;
}
inline BigReal operator-(const BigReal& a) {
    BigReal r(a.prec()); mpfr_neg(r.raw(), a.raw(), kRnd); return r;
}
inline BigReal& operator+=(BigReal& a, const BigReal& b) { mpfr_add(a.raw(), a.raw(), b.raw(), kRnd); return a; }
inline BigReal& operator-=(BigReal& a, const BigReal& b) { mpfr_sub(a.raw(), a.raw(), b.raw(), kRnd); return a; }
inline BigReal& operator*=(BigReal& a, const BigReal& b) { mpfr_mul(a.raw(), a.raw(), b.raw(), kRnd); return a; }
inline BigReal& operator/=(BigReal& a, const BigReal& b) { mpfr_div(a.raw(), a.raw(), b.raw(), kRnd); return a; }
inline BigReal& operator+=(BigReal& a, long b) { mpfr_add_si(a.raw(), a.raw(), b, kRnd); return a; }
inline BigReal& operator-=(BigReal& a, long b) { mpfr_sub_si(a.raw(), a.raw(), b, kRnd); return a; }
inline BigReal& operator*=(BigReal& a, long b) { mpfr_mul_si(a.raw(), a.raw(), b, kRnd); return a; }
inline BigReal& operator/=(BigReal& a, long b) { mpfr_div_si(a.raw(), a.raw(), b, kRnd); return a; }

inline bool operator<(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.raw(), b.raw()) < 0; }
inline bool operator>(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.raw(), b.raw()) > 0; }
inline bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.raw(), b.raw()) <= 0; }
inline bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.raw(), b.raw()) >= 0; }
inline bool operator==(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.raw(), b.raw()) == 0; }
inline bool operator!=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.raw(), b.raw()) != 0; }
inline bool operator<(const BigReal& a, long b) { return mpfr_cmp_si(a.raw(), b) < 0; }
inline bool operator>(const BigReal& a, long b) { return mpfr_cmp_si(a.raw(), b) > 0; }
inline bool operator<=(const BigReal& a, long b) { return mpfr_cmp_si(a.raw(), b) <= 0; }
inline bool operator>=(const BigReal& a, long b) { return mpfr_cmp_si(a.raw(), b) >= 0; }
inline bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.raw(), b) == 0; }

#define SF_MP_UN(name, fn)                                                    \
    inline BigReal name(const BigReal& a) {                                   \
        BigReal r(a.prec());                                                  \
        fn(r.raw(), a.raw(), kRnd);                                           \
        return r;                                                             \
    }

SF_MP_UN(abs, mpfr_abs)
SF_MP_UN(sqrt, mpfr_sqrt)
SF_MP_UN(exp, mpfr_exp)
SF_MP_UN(log, mpfr_log)
SF_MP_UN(sin, mpfr_sin)
SF_MP_UN(cos, mpfr_cos)
SF_MP_UN(tan, mpfr_tan)
SF_MP_UN(atan, mpfr_atan)
SF_MP_UN(sinh, mpfr_sinh)
SF_MP_UN(cosh, mpfr_cosh)
SF_MP_UN(tanh, mpfr_tanh)
SF_MP_UN(floor_r, mpfr_rint_floor)
SF_MP_UN(ceil_r, mpfr_rint_ceil)
SF_MP_UN(round_r, mpfr_rint_round)
#undef SF_MP_UN

inline BigReal atan2(const BigReal& y, const BigReal& x) {
    BigReal r(pmax(y, x)); mpfr_atan2(r.raw(), y.raw(), x.raw(), kRnd); return r;
}
inline BigReal pow(const BigReal& a, long e) {
    BigReal r(a.prec()); mpfr_pow_si(r.raw(), a.raw(), e, kRnd); return r;
}
inline BigReal pow(const BigReal& a, const BigReal& e) {
    BigReal r(pmax(a, e)); mpfr_pow(r.raw(), a.raw(), e.raw(), kRnd); return r;
}
inline BigReal ldexp2(const BigReal& a, long e) {
    BigReal r(a.prec()); mpfr_mul_2si(r.raw(), a.raw(), e, kRnd); return r;
}
// 2^e at the given precision
inline BigReal exp2i(long e, long prec) { return ldexp2(BigReal(1L, prec), e); }
inline BigReal hypot(const BigReal& a, const BigReal& b) {
    BigReal r(pmax(a, b)); mpfr_hypot(r.raw(), a.raw(), b.raw(), kRnd); return r;
}
inline BigReal max(const BigReal& a, const BigReal& b) { return a >= b ? a : b; }
inline BigReal min(const BigReal& a, const BigReal& b) { return a <= b ? a : b; }

inline mpz_class to_mpz_round(const BigReal& a) {
    mpz_class z;
    BigReal t = round_r(a);
    mpfr_get_z(z.get_mpz_t(), t.raw(), MPFR_RNDZ);
    return z;
}
inline long floor_long(const BigReal& a) {
    BigReal t = floor_r(a);
    return mpfr_get_si(t.raw(), MPFR_RNDZ);
}

inline BigReal const_pi(long prec) { BigReal r(prec); mpfr_const_pi(r.raw(), kRnd); return r; }
inline BigReal const_euler(long prec) { BigReal r(prec); mpfr_const_euler(r.raw(), kRnd); return r; }
inline BigReal const_catalan(long prec) { BigReal r(prec); mpfr_const_catalan(r.raw(), kRnd); return r; }
inline BigReal const_log2(long prec) { BigReal r(prec); mpfr_const_log2(r.raw(), kRnd); return r; }

inline std::string BigReal::str(size_t digits) const {
    if (digits == 0) digits = static_cast<size_t>(prec() * 0.30103) + 2;
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, kRnd);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string d = neg ? mant.substr(1) : mant;
    std::string out = (neg ? "-" : "");
    if (mpfr_zero_p(v_)) return "0";
    if (!mpfr_number_p(v_)) return mant;
    out += "0." + d + "e" + std::to_string(e);
    return out;
}

// ---------------------------------------------------------------------------

class BigComplex {
public:
    BigComplex() = default;
    explicit BigComplex(long prec) : re_(prec), im_(prec) {}
    BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit BigComplex(BigReal re) : re_(std::move(re)), im_(re_.prec()) {}
    BigComplex(long re, long im, long prec) : re_(re, prec), im_(im, prec) {}

    const BigReal& real() const { return re_; }
    const BigReal& imag() const { return im_; }
    BigReal& real() { return re_; }
    BigReal& imag() { return im_; }
    long prec() const { return pmax(re_, im_); }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    std::string str(size_t digits = 0) const {
        return re_.str(digits) + (im_.sign() < 0 ? " - " : " + ") + abs(im_).str(digits) + "*i";
    }

private:
    BigReal re_, im_;
};

inline BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.real() + b.real(), a.imag() + b.imag()};
}
inline BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.real() - b.real(), a.imag() - b.imag()};
}
inline BigComplex operator-(const BigComplex& a) { return {-a.real(), -a.imag()}; }
inline BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.real() * b.real() - a.imag() * b.imag(),
            a.real() * b.imag() + a.imag() * b.real()};
}
inline BigComplex operator*(const BigComplex& a, const BigReal& b) {
    return {a.real() * b, a.imag() * b};
}
inline BigComplex operator*(const BigReal& b, const BigComplex& a) { return a * b; }
inline BigComplex operator*(const BigComplex& a, long b) { return {a.real() * b, a.imag() * b}; }
inline BigComplex operator*(long b, const BigComplex& a) { return a * b; }
inline BigComplex operator/(const BigComplex& a, const BigReal& b) {
    return {a.real() / b, a.imag() / b};
}
inline BigComplex operator/(const BigComplex& a, long b) {
    return {a.real() / b, a.imag() / b};
}
inline BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigReal n = b.real() * b.real() + b.imag() * b.imag();
    return {(a.real() * b.real() + a.imag() * b.imag()) / n,
            (a.imag() * b.real() - a.real() * b.imag()) / n};
}
inline BigComplex& operator+=(BigComplex& a, const BigComplex& b) { a = a + b; return a; }
inline BigComplex& operator-=(BigComplex& a, const BigComplex& b) { a = a - b; return a; }
inline BigComplex& operator*=(BigComplex& a, const BigComplex& b) { a = a * b; return a; }

inline BigComplex conj(const BigComplex& a) { return {a.real(), -a.imag()}; }
inline BigReal norm(const BigComplex& a) { return a.real() * a.real() + a.imag() * a.imag(); }
inline BigReal abs(const BigComplex& a) { return hypot(a.real(), a.imag()); }
inline BigReal arg(const BigComplex& a) { return atan2(a.imag(), a.real()); }
inline BigComplex exp(const BigComplex& a) {
    BigReal m = exp(a.real());
    return {m * cos(a.imag()), m * sin(a.imag())};
}
// principal branch
inline BigComplex log(const BigComplex& a) { return {log(abs(a)), arg(a)}; }
inline BigComplex sqrt(const BigComplex& a) {
    if (a.imag().is_zero() && a.real().sign() >= 0) return BigComplex(sqrt(a.real()));
    BigReal m = abs(a);
    BigReal u = sqrt((m + a.real()) / 2L);
    BigReal v = sqrt((m - a.real()) / 2L);
    if (a.imag().sign() < 0) v = -v;
    return {u, v};
}
inline BigComplex pow(const BigComplex& a, const BigComplex& e) {
    if (a.is_zero()) return a;
    return exp(e * log(a));
}
inline BigComplex pow(const BigComplex& a, long e) {
    long prec = a.prec();
    BigComplex r(1, 0, prec);
    BigComplex base = a;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    if (e < 0) return BigComplex(1, 0, prec) / r;
    return r;
}
inline BigComplex mul_i(const BigComplex& a) { return {-a.imag(), a.real()}; }

// e^{2*pi*i*z}, the workhorse of every q-expansion here
inline BigComplex cis2pi(const BigComplex& z) {
    long prec = z.prec();
    BigReal twopi = 2L * const_pi(prec);
    BigReal m = exp(-twopi * z.imag());
    return {m * cos(twopi * z.real()), m * sin(twopi * z.real())};
}

// ---------------------------------------------------------------------------

// Working precision plus the absolute truncation target threaded through
// every numeric routine. tail_tol defaults to 2^(-bits+16).
struct PrecisionCtx {
    long bits;
    BigReal tail_tol;

    explicit PrecisionCtx(long bits_ = 128)
        : bits(bits_), tail_tol(exp2i(-bits_ + 16, 64)) {
        check();
    }
    PrecisionCtx(long bits_, BigReal tol) : bits(bits_), tail_tol(std::move(tol)) {
        check();
    }
    PrecisionCtx doubled() const { return PrecisionCtx(2 * bits); }
    PrecisionCtx with_guard(long extra) const { return PrecisionCtx(bits + extra, tail_tol); }

private:
    void check() const {
        if (bits < 64) throw DomainError("PrecisionCtx: bits must be >= 64");
        if (!(tail_tol > 0L)) throw DomainError("PrecisionCtx: tail_tol must be positive");
    }
};

} // namespace mpk

using mpk::BigComplex;
using mpk::BigReal;
using mpk::PrecisionCtx;

} // namespace starkforge
