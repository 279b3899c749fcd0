#include "starkforge/lfun.hpp"

#include "starkforge/mpfun.hpp"
#include "starkforge/shintani.hpp"

#include <cmath>

namespace starkforge::lfun {

using mpk::const_pi;
using mpk::exp2i;
using mpk::incomplete_gamma_upper;
using nt::kronecker;

BigReal dirichlet_L(const BigComplex& s, long D, const PrecisionCtx& ctx) {
    long q = std::labs(D);
    long prec = ctx.bits + 32;
    BigReal acc(0L, prec);
    for (long a = 1; a < q; ++a) {
        int chi = kronecker(Int(D), Int(a));
        if (chi == 0) continue;
        BigReal z = shintani::hurwitz_zeta(s, BigReal(a, prec) / BigReal(q, prec), ctx).real();
        acc += BigReal(chi, prec) * z;
    }
    // q^{-s}
    return acc * exp(-s.real() * log(BigReal(q, prec)));
}

Rat bernoulli2_chi(long D) {
    if (D <= 0) throw DomainError("bernoulli2_chi: needs a positive fundamental discriminant");
    // B_{2,chi} = D * sum_{a=1}^{D} chi(a) B_2(a/D)
    Rat acc(0);
    for (long a = 1; a <= D; ++a) {
        int chi = kronecker(Int(D), Int(a));
        if (chi == 0) continue;
        Rat x(a, D);
        x.canonicalize();
        Rat b2 = x * x - x + Rat(1, 6);
        acc += chi * b2;
    }
    return acc * D;
}

BigReal dirichlet_L2_closed(long D, const PrecisionCtx& ctx) {
    long prec = ctx.bits + 32;
    BigReal b2(bernoulli2_chi(D), prec);
    BigReal pi = const_pi(prec);
    return pi * pi * b2 * exp(BigReal(-1.5, prec) * log(BigReal(D, prec)));
}

BigReal zeta_F_at_2(const TotallyRealField& F, const PrecisionCtx& ctx) {
    long prec = ctx.bits + 32;
    BigReal z2 = const_pi(prec) * const_pi(prec) / 6L;
    if (F.degree() == 1) return z2;
    if (F.degree() == 2) {
        long D = static_cast<long>(F.disc.get_si());
        return z2 * dirichlet_L(BigComplex(2, 0, ctx.bits), D, ctx);
    }
    throw fields::UnsupportedDegree("zeta_F_at_2: degree <= 2");
}

namespace {

// Q[(m,n)] = |m w + n|^2 / y (determinant 1)
BigReal qform(const BigComplex& w, const BigReal& m, const BigReal& n) {
    BigComplex v = BigComplex(m) * w + BigComplex(n);
    return norm(v) / w.imag();
}

// box radius so that pi*Q >= need on all dropped terms: |mw+n|^2/y >= r^2
// whenever max(|m| y, |distance|)-style bounds exceed the box
long epstein_box(const BigComplex& w, double need) {
    double y = w.imag().to_double();
    double x = w.real().to_double();
    // |mw+n|^2 >= m^2 y^2; and for fixed m, free n makes |mw+n| >= dist to Z
    double r = std::sqrt(need * y / 3.14159265358979);
    long M = static_cast<long>(r / y) + 2;
    long N = static_cast<long>(r + std::abs(x) * (r / y + 1)) + 2;
    return std::max(M, N);
}

} // namespace

BigReal epstein_plain(const BigComplex& w, const BigReal& s, const PrecisionCtx& ctx) {
    long prec = ctx.bits + 48;
    PrecisionCtx ictx(ctx.bits + 48, ctx.tail_tol);
    BigReal pi = const_pi(prec);
    double need = (ctx.bits + 24) * 0.6931471805599453;
    long B = epstein_box(w, need);
    BigComplex wmúltiplo(0, 0, prec);
    (void)wmúltiplo;
    BigReal sum1(0L, prec), sum2(0L, prec);
    for (long m = -B; m <= B; ++m)
        for (long n = -B; n <= B; ++n) {
            if (m == 0 && n == 0) continue;
            BigReal Q = qform(w, BigReal(m, prec), BigReal(n, prec));
            BigReal piQ = pi * Q;
            if (piQ.to_double() > need + 8) continue;
            // Gamma(s, piQ) (piQ)^{-s} and dual Gamma(1-s, piQ*) (piQ*)^{s-1};
            // the dual form Q*[(m,n)] = Q[(n,-m)] has the same value set, so
            // one loop serves both sums
            sum1 += incomplete_gamma_upper(BigComplex(s), piQ, ictx).real() *
                    exp(-s * log(piQ));
            sum2 += incomplete_gamma_upper(BigComplex(BigReal(1, prec) - s), piQ, ictx).real() *
                    exp((s - 1L) * log(piQ));
        }
    // S(s) = pi^s/Gamma(s) [ sum1 + sum2 + 1/(s-1) - 1/s ]
    BigReal bracket = sum1 + sum2 + 1L / (s - 1L) - 1L / s;
    BigReal pref = exp(s * log(pi)) / mpk::gamma(BigReal(s), ictx);
    return pref * bracket;
}

BigReal epstein_lattice(const BigComplex& b1, const BigComplex& b2, const BigReal& s,
                        const PrecisionCtx& ctx) {
    // |m b1 + n b2|^2 = covol * Q_w[(m,n)] with w = b1/b2 (Im > 0 after swap)
    long prec = ctx.bits + 48;
    BigComplex w = b1 / b2;
    if (w.imag().sign() < 0) w = conj(b1) / conj(b2); // reorder orientation
    if (!(w.imag() > 0L)) throw DomainError("epstein_lattice: degenerate basis");
    // |m b1 + n b2|^2 = |b2|^2 |m w + n|^2 = |b2|^2 y Q = covol Q
    BigReal covol = norm(b2) * w.imag();
    return exp(-s * log(covol)) * epstein_plain(w, s, ctx);
}

BigReal epstein_shift_sprime0(const BigReal& a, const BigReal& b, const BigComplex& w,
                              const PrecisionCtx& ctx) {
    long prec = ctx.bits + 48;
    PrecisionCtx ictx(ctx.bits + 48, ctx.tail_tol);
    BigReal pi = const_pi(prec);
    double need = (ctx.bits + 24) * 0.6931471805599453;
    long B = epstein_box(w, need) + 2;
    // E'(0) = sum_{l in Z^2 + (a,b)} E_1(pi Q[l])
    //       + sum_{mu != 0} e(-<(a,b), mu>) exp(-pi Q*[mu]) / (pi Q*[mu]) - 1
    BigReal sum1(0L, prec);
    for (long m = -B; m <= B; ++m)
        for (long n = -B; n <= B; ++n) {
            BigReal mm = BigReal(m, prec) + a, nn = BigReal(n, prec) + b;
            BigReal piQ = pi * qform(w, mm, nn);
            if (piQ.to_double() > need + 8) continue;
            if (piQ.to_double() < 1e-30)
                throw DomainError("epstein_shift_sprime0: shift is a lattice point");
            sum1 += mpk::expint_e1(piQ, ictx);
        }
    BigReal sum2(0L, prec);
    BigReal twopi = 2L * pi;
    for (long m = -B; m <= B; ++m)
        for (long n = -B; n <= B; ++n) {
            if (m == 0 && n == 0) continue;
            // Q*[(m,n)] = Q[(n,-m)]
            BigReal piQ = pi * qform(w, BigReal(n, prec), BigReal(-m, prec));
            if (piQ.to_double() > need + 8) continue;
            BigReal phase = twopi * (a * m + b * n);
            sum2 += cos(phase) * exp(-piQ) / piQ;
        }
    return sum1 + sum2 - 1L;
}

} // namespace starkforge::lfun
