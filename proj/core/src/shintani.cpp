#include "starkforge/shintani.hpp"

#include "starkforge/idealmod.hpp"
#include "starkforge/mpfun.hpp"
#include "starkforge/theta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace starkforge::shintani {

using fields::Ideal;
using mpk::bernoulli;
using mpk::const_pi;
using mpk::exp2i;

namespace {

// first-order dual complex numbers: value + d/ds
struct DualC {
    BigComplex v, d;
};

DualC dc(const BigComplex& v, long prec) { return {v, BigComplex(0, 0, prec)}; }
DualC operator+(const DualC& a, const DualC& b) { return {a.v + b.v, a.d + b.d}; }
DualC operator-(const DualC& a, const DualC& b) { return {a.v - b.v, a.d - b.d}; }
DualC operator*(const DualC& a, const DualC& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
DualC operator/(const DualC& a, const DualC& b) {
    BigComplex q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}
// a^s for positive real a and dual exponent s
DualC pow_dual(const BigReal& a, const DualC& s) {
    BigReal la = log(a);
    BigComplex val = exp(s.v * BigComplex(la));
    return {val, val * BigComplex(la) * s.d};
}

// digamma by Euler-Maclaurin
BigReal psi_em(const BigReal& x, long bits) {
    long prec = bits + 32;
    long M = std::max(8L, static_cast<long>(0.3 * bits) + 8 - mpk::floor_long(x));
    if (M < 1) M = 1;
    BigReal acc(0L, prec);
    for (long k = 0; k < M; ++k) acc -= 1L / (x + k);
    BigReal xm = x + M;
    acc += log(xm) - 1L / (2L * xm);
    BigReal xm2 = xm * xm, xp(1, prec);
    BigReal cutoff = exp2i(-bits - 24, 64);
    for (long j = 1; j < 2000; ++j) {
        xp *= xm2;
        BigReal term = BigReal(bernoulli(static_cast<unsigned>(2 * j)), prec) / (BigReal(2 * j, prec) * xp);
        acc -= term;
        if (abs(term) < cutoff) break;
    }
    return acc;
}

// Hurwitz zeta with dual s; x > 0 real
DualC hurwitz_dual(const DualC& s, const BigReal& x, long bits) {
    long prec = bits + 48;
    if (abs(s.v - BigComplex(1, 0, prec)).to_double() < 1e-12)
        throw PoleError("hurwitz_zeta: pole at s = 1");
    long M = std::max(8L, static_cast<long>(0.3 * bits) + 8 - mpk::floor_long(x));
    if (M < 1) M = 1;
    BigReal xm = x + M;
    DualC acc = dc(BigComplex(0, 0, prec), prec);
    for (long k = 0; k < M; ++k) {
        DualC ms = {-s.v, -s.d};
        acc = acc + pow_dual(x + k, ms);
    }
    DualC one = dc(BigComplex(1, 0, prec), prec);
    // (x+M)^{1-s}/(s-1)
    acc = acc + pow_dual(xm, one - s) / (s - one);
    // (x+M)^{-s}/2
    DualC xms = pow_dual(xm, DualC{-s.v, -s.d});
    acc = acc + xms * dc(BigComplex(BigReal(0.5, prec)), prec);
    // + sum_j B_2j/(2j)! (s)_{2j-1} (x+M)^{-s-2j+1}
    DualC poch = s;                 // (s)_1 = s
    BigReal xm2 = xm * xm;
    DualC xpow = pow_dual(xm, one - s); // (x+M)^{1-s} / xm^{2j} gives -s-2j+1
    BigReal cutoff = exp2i(-bits - 24, 64);
    BigReal prev_mag(0L, 64);
    for (long j = 1; j < 4000; ++j) {
        xpow = xpow * dc(BigComplex(BigReal(1, prec) / xm2), prec);
        BigReal b2j(bernoulli(static_cast<unsigned>(2 * j)), prec);
        // (2j)! factor
        BigReal fact(1, prec);
        for (long t = 2; t <= 2 * j; ++t) fact *= t;
        DualC term = poch * xpow * dc(BigComplex(b2j / fact), prec);
        acc = acc + term;
        BigReal mag = abs(term.v) + abs(term.d);
        if (mag < cutoff) break;
        if (j > 4 && mag > prev_mag && prev_mag > 0L)
            throw ConvergenceError("hurwitz_zeta: Euler-Maclaurin tail diverges before tolerance");
        prev_mag = mag;
        // extend Pochhammer: multiply by (s + 2j - 1)(s + 2j)
        DualC f1 = {s.v + BigComplex(2 * j - 1, 0, prec), s.d};
        DualC f2 = {s.v + BigComplex(2 * j, 0, prec), s.d};
        poch = poch * f1 * f2;
    }
    return acc;
}

// Barnes zeta_2 with dual s via the Hurwitz chain
DualC barnes2_dual(const DualC& s, const BigReal& w1, const BigReal& w2,
                   const BigReal& x, long bits) {
    long prec = bits + 48;
    DualC one = dc(BigComplex(1, 0, prec), prec);
    auto H = [&](const DualC& sh, const BigReal& xx) { return hurwitz_dual(sh, xx, bits + 16); };
    // G(t) = w2^{-s} zeta(s, (x + t w1)/w2); sum_{m>=0} G(m)
    DualC w2s = pow_dual(w2, DualC{-s.v, -s.d});
    long M = std::max(8L, static_cast<long>(0.25 * bits));
    DualC acc = dc(BigComplex(0, 0, prec), prec);
    for (long m = 0; m < M; ++m) acc = acc + H(s, (x + m * w1) / w2);
    BigReal XM = (x + M * w1) / w2;
    // integral: (w2/w1) zeta(s-1, XM)/(s-1)
    acc = acc + H(s - one, XM) * dc(BigComplex(w2 / w1), prec) / (s - one);
    // + G(M)/2
    acc = acc + H(s, XM) * dc(BigComplex(BigReal(0.5, prec)), prec);
    // - sum_j B_2j/(2j)! G^{(2j-1)}(M), G^{(k)} = (-1)^k (s)_k (w1/w2)^k zeta(s+k, XM)
    // written as (s)_{2j-2} * [t zeta(1+t, XM)] with t = s + 2j - 2, so the
    // removable pole of zeta at 1 cancels against the Pochhammer zero
    BigReal r = w1 / w2;
    DualC poch_lo = dc(BigComplex(1, 0, prec), prec); // (s)_0
    BigReal rpow = r;
    BigReal cutoff = exp2i(-bits - 24, 64);
    BigReal prev_mag(0L, 64);
    for (long j = 1; j < 2000; ++j) {
        BigReal b2j(bernoulli(static_cast<unsigned>(2 * j)), prec);
        BigReal fact(1, prec);
        for (long t = 2; t <= 2 * j; ++t) fact *= t;
        DualC tj = {s.v + BigComplex(2 * j - 2, 0, prec), s.d}; // t = s + 2j - 2
        DualC bracket; // t * zeta(1 + t, XM)
        if (abs(tj.v).to_double() < 1e-20) {
            // t zeta(1+t, X) = 1 - psi(X) t + O(t^2)
            BigReal psix = psi_em(XM, bits + 16);
            bracket = {BigComplex(1, 0, prec) - BigComplex(psix) * tj.v,
                       -BigComplex(psix) * tj.d};
        } else {
            DualC one_ = dc(BigComplex(1, 0, prec), prec);
            bracket = tj * H(tj + one_, XM);
        }
        DualC term = poch_lo * bracket * dc(BigComplex(b2j / fact * rpow), prec);
        acc = acc + term;
        BigReal mag = abs(term.v) + abs(term.d);
        if (mag < cutoff) break;
        if (j > 4 && mag > prev_mag && prev_mag > 0L)
            throw ConvergenceError("barnes zeta_2: Euler-Maclaurin tail diverges before tolerance");
        prev_mag = mag;
        DualC f1 = {s.v + BigComplex(2 * j - 2, 0, prec), s.d};
        DualC f2 = {s.v + BigComplex(2 * j - 1, 0, prec), s.d};
        poch_lo = poch_lo * f1 * f2;
        rpow = rpow * r * r;
    }
    return acc * w2s;
}

DualC dual_s(const BigComplex& s, long prec) {
    return {BigComplex(BigReal(s.real(), prec), BigReal(s.imag(), prec)), BigComplex(1, 0, prec)};
}

} // namespace

BigComplex hurwitz_zeta(const BigComplex& s, const BigReal& x, const PrecisionCtx& ctx) {
    if (!(x > 0L)) throw DomainError("hurwitz_zeta: x must be > 0");
    return hurwitz_dual(dual_s(s, ctx.bits + 48), x, ctx.bits).v;
}

BigComplex hurwitz_zeta_ds(const BigComplex& s, const BigReal& x, const PrecisionCtx& ctx) {
    if (!(x > 0L)) throw DomainError("hurwitz_zeta: x must be > 0");
    return hurwitz_dual(dual_s(s, ctx.bits + 48), x, ctx.bits).d;
}

BigComplex shintani_zeta(const BigComplex& s, const std::vector<BigReal>& w,
                         const BigReal& x, const PrecisionCtx& ctx) {
    if (!(x > 0L)) throw DomainError("shintani_zeta: x must be > 0");
    long prec = ctx.bits + 48;
    if (w.size() == 1) {
        // w^{-s} zeta(s, x/w)
        DualC s_ = dual_s(s, prec);
        return (pow_dual(w[0], DualC{-s_.v, -s_.d}) * hurwitz_dual(s_, x / w[0], ctx.bits)).v;
    }
    if (w.size() == 2) {
        if (abs(s - BigComplex(2, 0, prec)).to_double() < 1e-12)
            throw PoleError("shintani_zeta: pole at s = 2 (n = 2)");
        return barnes2_dual(dual_s(s, prec), w[0], w[1], x, ctx.bits).v;
    }
    throw fields::UnsupportedDegree("shintani_zeta: n <= 2 only");
}

BigComplex shintani_zeta_ds(const BigComplex& s, const std::vector<BigReal>& w,
                            const BigReal& x, const PrecisionCtx& ctx) {
    if (!(x > 0L)) throw DomainError("shintani_zeta: x must be > 0");
    long prec = ctx.bits + 48;
    if (w.size() == 1) {
        DualC s_ = dual_s(s, prec);
        return (pow_dual(w[0], DualC{-s_.v, -s_.d}) * hurwitz_dual(s_, x / w[0], ctx.bits)).d;
    }
    if (w.size() == 2) return barnes2_dual(dual_s(s, prec), w[0], w[1], x, ctx.bits).d;
    throw fields::UnsupportedDegree("shintani_zeta: n <= 2 only");
}

BigReal barnes_log_gamma(const BigReal& x, const std::vector<BigReal>& w,
                         const PrecisionCtx& ctx) {
    return shintani_zeta_ds(BigComplex(0, 0, ctx.bits), w, x, ctx).real();
}

BigReal neg_log_rho(const std::vector<BigReal>& w, const PrecisionCtx& ctx) {
    long prec = ctx.bits + 48;
    // sum over m != 0: for n = 1: zeta_1(s, w, w) ; for n = 2:
    // zeta_2(s, w, w1) + zeta_1(s, w2, w2), both at d/ds, s = 0
    if (w.size() == 1) {
        DualC s_ = dual_s(BigComplex(0, 0, prec), prec);
        return (pow_dual(w[0], DualC{-s_.v, -s_.d}) * hurwitz_dual(s_, BigReal(1, prec), ctx.bits)).d.real();
    }
    if (w.size() == 2) {
        BigReal a = shintani_zeta_ds(BigComplex(0, 0, prec), w, w[0], ctx).real();
        BigReal b = shintani_zeta_ds(BigComplex(0, 0, prec), {w[1]}, w[1], ctx).real();
        return a + b;
    }
    throw fields::UnsupportedDegree("neg_log_rho: n <= 2 only");
}

ChowlaSelbergReport chowla_selberg_check(long disc, const PrecisionCtx& ctx) {
    if (disc != -4 && disc != -3)
        throw DomainError("chowla_selberg_check: implemented for disc -4 and -3");
    long prec = ctx.bits + 48;
    long d = -disc;
    // eta side
    BigComplex w = disc == -4 ? BigComplex(0, 1, prec)
                              : BigComplex(BigReal(0.5, prec), sqrt(BigReal(3, prec)) / 2L);
    BigReal y = w.imag();
    BigReal eta4 = pow(abs(thetafun::dedekind_eta(w, ctx.with_guard(32))), 4L);
    BigReal lhs = y * eta4;
    // Gamma/L side: (sqrt d / 4 pi) exp(L'(0,chi)/L(0,chi)), chi = kronecker(disc, .)
    BigReal L0(0L, prec), L1(0L, prec);
    for (long a = 1; a < d; ++a) {
        int chi = nt::kronecker(nt::Int(disc), nt::Int(a));
        if (chi == 0) continue;
        BigReal xa = BigReal(a, prec) / BigReal(d, prec);
        // zeta(0, x) = 1/2 - x ; d/ds zeta(0, x) = log Gamma(x) - (1/2) log 2pi
        DualC s0 = dual_s(BigComplex(0, 0, prec), prec);
        DualC z = hurwitz_dual(s0, xa, ctx.bits + 16);
        L0 += BigReal(chi, prec) * z.v.real();
        L1 += BigReal(chi, prec) * z.d.real();
    }
    // L(s,chi) = d^{-s} sum chi(a) zeta(s, a/d): L(0) = sum-part,
    // L'(0) = sum d/ds - log d * L(0)
    BigReal Lp = L1 - log(BigReal(d, prec)) * L0;
    BigReal rhs = sqrt(BigReal(d, prec)) / (4L * const_pi(prec)) * exp(Lp / L0);
    ChowlaSelbergReport rep;
    rep.disc = disc;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.rel_error = (abs(lhs - rhs) / rhs).to_double();
    return rep;
}

// ---------------------------------------------------------------------------

ShintaniDecomposition decompose_real_quadratic(const TotallyRealField& F) {
    ShintaniDecomposition dec;
    dec.F = &F;
    if (F.degree() == 1) {
        dec.eps0 = F.F->one();
        Cone c;
        c.gens = {F.F->one()};
        c.closed = {true};
        dec.cones = {c};
        dec.shifts = {{{Rat(1), Rat(0)}}};
        return dec;
    }
    if (F.degree() != 2)
        throw fields::UnsupportedDegree("decompose_real_quadratic: n <= 2 only");
    dec.eps0 = F.totally_positive_unit();
    Cone c;
    c.gens = {F.F->one(), dec.eps0};
    c.closed = {true, false}; // include the ray of 1, exclude the ray of eps0
    dec.cones = {c};
    // shift set: alpha = u * 1 + v * eps0 in O_F with u in (0,1], v in [0,1);
    // the (u, v) coordinates are rational since 1, eps0 span a finite-index
    // sublattice of O_F
    std::vector<std::pair<Rat, Rat>> shifts;
    // solve coordinates exactly: alpha = u + v eps0
    const auto& Kf = F.F;
    nt::QMat A(2, 2);
    {
        FieldElem one = Kf->one();
        for (long i = 0; i < 2; ++i) {
            A.at(i, 0) = one.c[i];
            A.at(i, 1) = dec.eps0.c[i];
        }
    }
    nt::QMat Ai = nt::inverse(A);
    // enumerate alpha = a + b theta within embedding bounds of the box
    double e1 = Kf->embed(dec.eps0, 0, 64).real().to_double();
    double e2 = Kf->embed(dec.eps0, 1, 64).real().to_double();
    double hi1 = 1 + e1, hi2 = 1 + e2;
    double t1 = Kf->embed(Kf->gen(), 0, 64).real().to_double();
    double t2 = Kf->embed(Kf->gen(), 1, 64).real().to_double();
    long bound = static_cast<long>(std::ceil(std::max(hi1, hi2) * 4 / std::max(1.0, std::abs(t1 - t2)))) + 4;
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b) {
            if (a == 0 && b == 0) continue;
            double v1 = a + b * t1, v2 = a + b * t2;
            if (v1 <= 0 || v2 <= 0 || v1 > hi1 + 1 || v2 > hi2 + 1) continue;
            // exact coordinates
            std::vector<Rat> alpha{Rat(a), Rat(b)};
            Rat u = Ai.at(0, 0) * alpha[0] + Ai.at(0, 1) * alpha[1];
            Rat v = Ai.at(1, 0) * alpha[0] + Ai.at(1, 1) * alpha[1];
            if (u > 0 && u <= 1 && v >= 0 && v < 1) shifts.push_back({u, v});
        }
    std::sort(shifts.begin(), shifts.end());
    dec.shifts = {shifts};
    return dec;
}

int tiling_hits(const ShintaniDecomposition& dec, const std::vector<double>& point,
                int k_range) {
    const auto& F = *dec.F;
    if (F.degree() == 1) return point[0] > 0 ? 1 : 0;
    double e1 = F.F->embed(dec.eps0, 0, 64).real().to_double();
    double e2 = F.F->embed(dec.eps0, 1, 64).real().to_double();
    int hits = 0;
    for (int k = -k_range; k <= k_range; ++k) {
        // eps0^{-k} * point componentwise
        double p1 = point[0] * std::pow(e1, -k);
        double p2 = point[1] * std::pow(e2, -k);
        // coordinates in the cone basis (1, eps0): solve p = u(1,1) + v(e1,e2)
        double det = e2 - e1;
        double u = (p1 * e2 - p2 * e1) / det;
        double v = (p2 - p1) / det;
        if (u > 0 && v >= 0) ++hits;
    }
    return hits;
}

BigReal cone_zeta_special(int k, const std::vector<BigReal>& a,
                          const std::vector<BigReal>& b, const Rat& u, const Rat& v,
                          const PrecisionCtx& ctx) {
    if (k < 0) throw DomainError("cone_zeta_special: k >= 0");
    long prec = ctx.bits + 32;
    long K = k;
    // Bernoulli polynomials B_m(1-u), B_m(1-v)
    auto bern_poly = [&](unsigned m, const Rat& t) {
        // B_m(x) = sum C(m,j) B_j x^{m-j}
        Rat x = 1 - t;
        Rat acc(0);
        nt::Int binom(1);
        for (unsigned j = 0; j <= m; ++j) {
            // C(m, j)
            Rat c(binom);
            Rat xp(1);
            for (unsigned t2 = 0; t2 < m - j; ++t2) xp *= x;
            acc += c * bernoulli(j) * xp;
            binom = binom * (m - j) / (j + 1);
        }
        return acc;
    };
    // sectors: (Abar, Bbar)(sigma) = (a1 s + a2, b1 s + b2) and (a1 + a2 s, b1 + b2 s)
    auto sector_sum = [&](const BigReal& a1, const BigReal& a2, const BigReal& b1,
                          const BigReal& b2) {
        // need [sigma^K] of Abar^{k1-1} Bbar^{l1-1} for k1 + l1 = 2K + 2
        // power series in sigma to order K
        long L = K + 1;
        auto series_mul = [&](const std::vector<BigReal>& f, const std::vector<BigReal>& g) {
            std::vector<BigReal> r(L, BigReal(0L, prec));
            for (long i = 0; i < L; ++i)
                for (long j = 0; i + j < L; ++j) r[i + j] += f[i] * g[j];
            return r;
        };
        auto series_inv = [&](const std::vector<BigReal>& f) {
            std::vector<BigReal> r(L, BigReal(0L, prec));
            r[0] = 1L / f[0];
            for (long i = 1; i < L; ++i) {
                BigReal s(0L, prec);
                for (long j = 1; j <= i; ++j)
                    if (j < L) s += f[j] * r[i - j];
                r[i] = -s / f[0];
            }
            return r;
        };
        auto series_pow_pm1 = [&](const std::vector<BigReal>& f, long e) {
            // f^e for e >= 0 or e = -1
            std::vector<BigReal> r(L, BigReal(0L, prec));
            r[0] = BigReal(1, prec);
            if (e == -1) return series_inv(f);
            for (long t = 0; t < e; ++t) r = series_mul(r, f);
            return r;
        };
        std::vector<BigReal> A{a2, a1}, B{b2, b1};
        A.resize(L, BigReal(0L, prec));
        B.resize(L, BigReal(0L, prec));
        BigReal total(0L, prec);
        for (long k1 = 0; k1 <= 2 * K + 2; ++k1) {
            long l1 = 2 * K + 2 - k1;
            Rat bu = bern_poly(static_cast<unsigned>(k1), u);
            Rat bv = bern_poly(static_cast<unsigned>(l1), v);
            if (bu == 0 || bv == 0) continue;
            auto Ak = series_pow_pm1(A, k1 - 1);
            auto Bl = series_pow_pm1(B, l1 - 1);
            auto P = series_mul(Ak, Bl);
            //.../(2 k1! l1!)
            BigReal fact(1, prec);
            for (long t = 2; t <= k1; ++t) fact *= t;
            for (long t = 2; t <= l1; ++t) fact *= t;
            total += BigReal(bu, prec) * BigReal(bv, prec) * P[K] / (2L * fact);
        }
        return total;
    };
    BigReal out = sector_sum(a[0], a[1], b[0], b[1]) + sector_sum(a[1], a[0], b[1], b[0]);
    // (K!)^2 prefactor
    BigReal kf(1, prec);
    for (long t = 2; t <= K; ++t) kf *= t;
    return kf * kf * out;
}

BigReal cone_zeta_direct(const BigReal& s, const std::vector<BigReal>& a,
                         const std::vector<BigReal>& b, const Rat& u, const Rat& v,
                         long terms) {
    long prec = s.prec();
    BigReal acc(0L, prec);
    BigReal uu(u, prec), vv(v, prec);
    for (long m = 0; m < terms; ++m)
        for (long n = 0; n < terms; ++n) {
            BigReal L1 = a[0] * (uu + m) + b[0] * (vv + n);
            BigReal L2 = a[1] * (uu + m) + b[1] * (vv + n);
            acc += exp(-s * log(L1 * L2));
        }
    return acc;
}

BigReal zeta_minus1_via_cones(const TotallyRealField& F, const PrecisionCtx& ctx) {
    if (F.degree() != 2)
        throw fields::UnsupportedDegree("zeta_minus1_via_cones: real quadratic only");
    if (F.cls.h() != 1 || !F.unit_norm_minus_one)
        throw fields::UnsupportedDegree(
            "zeta_minus1_via_cones: needs h = 1 and a norm -1 unit (narrow class number 1)");
    auto dec = decompose_real_quadratic(F);
    long prec = ctx.bits + 32;
    // embeddings of the generators 1 and eps0
    std::vector<BigReal> a{BigReal(1, prec), BigReal(1, prec)};
    std::vector<BigReal> b{F.F->embed(dec.eps0, 0, prec).real(),
                           F.F->embed(dec.eps0, 1, prec).real()};
    BigReal acc(0L, prec);
    for (const auto& [u, v] : dec.shifts[0])
        acc += cone_zeta_special(1, a, b, u, v, ctx);
    return acc;
}

Int toric_vanishing_order(const ShintaniDecomposition& dec, const FieldElem& ell,
                          const FieldElem& alpha) {
    const auto& F = *dec.F;
    if (!fields::totally_positive(alpha))
        throw idealmod::NotTotallyPositive("toric_vanishing_order: alpha must be totally positive");
    if (!fields::totally_positive(ell))
        throw DomainError("toric_vanishing_order: ell must generate a ray of the positive cone");
    // convex in k: scan outward from k = 0
    auto pairing = [&](long k) {
        FieldElem u = F.F->one();
        FieldElem e = dec.eps0;
        if (k >= 0)
            for (long t = 0; t < k; ++t) u = u * e;
        else {
            FieldElem ei = F.F->inv(e);
            for (long t = 0; t < -k; ++t) u = u * ei;
        }
        Rat tr = F.F->trace(ell * u * alpha);
        return tr;
    };
    Rat best = pairing(0);
    long bestk = 0;
    for (int dir : {+1, -1}) {
        for (long k = dir;; k += dir) {
            Rat p = pairing(k);
            if (p < best) {
                best = p;
                bestk = k;
            } else {
                break; // convexity: once increasing, stays increasing
            }
            if (std::abs(k) > 256) throw Error("toric_vanishing_order: no minimum found");
        }
    }
    (void)bestk;
    if (best.get_den() != 1)
        throw DomainError("toric_vanishing_order: pairing is not integral (ell not in the trace dual?)");
    return best.get_num();
}

ReflectionReport shintani_reflection_experiment(const BigReal& z,
                                                const TotallyRealField& F,
                                                const PrecisionCtx& ctx) {
    if (F.degree() != 2)
        throw fields::UnsupportedDegree("reflection experiment: real quadratic only");
    long prec = ctx.bits + 32;
    BigReal eps = F.F->embed(F.fund_units[0], 0, prec).real();
    if (eps < 1L) eps = 1L / eps;
    if (!(z > 0L) || !(z < 1L + eps))
        throw DomainError("reflection experiment: z must lie in (0, 1 + eps)");
    ReflectionReport rep;
    // LHS: log |Gamma_2(z) / Gamma_2(1 + eps - z)| with weights (1, eps)
    std::vector<BigReal> w{BigReal(1, prec), eps};
    rep.lhs_log_abs = barnes_log_gamma(z, w, ctx) - barnes_log_gamma(1L + eps - z, w, ctx);
    // RHS: i^{1/2} exp(pi i (e + 1/e)/12) prod(1 - q^n qz)/prod(1 - q'^n qz')
    //      * exp(pi i/2 (z^2/e - (1 + 1/e) z)) with e -> eps (1 + i delta)
    for (double delta : {1e-2, 1e-3, 1e-4}) {
        BigComplex e(eps, eps * BigReal(delta, prec)); // eps (1 + i delta)
        BigComplex i1(0, 1, prec);
        BigComplex einv = BigComplex(1, 0, prec) / e;
        BigComplex q = mpk::cis2pi(e);
        BigComplex qp = mpk::cis2pi(-einv);
        BigComplex qz = mpk::cis2pi(BigComplex(z));
        BigComplex qzp = mpk::cis2pi(BigComplex(z) * einv);
        BigComplex num(1, 0, prec), den(1, 0, prec);
        BigComplex qn(1, 0, prec), qpn(1, 0, prec);
        long nmax = static_cast<long>(60.0 / (2 * 3.14159 * eps.to_double() * delta)) + 64;
        for (long n = 1; n <= nmax; ++n) {
            qn *= q;
            qpn *= qp;
            num *= BigComplex(1, 0, prec) - qn * qz;
            den *= BigComplex(1, 0, prec) - qpn * qzp;
            if (abs(qn).to_double() < 1e-30 && abs(qpn).to_double() < 1e-30) break;
        }
        BigComplex pref = exp(i1 * const_pi(prec) / 4L) // i^{1/2}
                          * exp(i1 * const_pi(prec) * (e + einv) / 12L)
                          * exp(i1 * const_pi(prec) / 2L *
                                (BigComplex(z * z) * einv - (BigComplex(1, 0, prec) + einv) * BigComplex(z)));
        BigComplex rhs = pref * num / den;
        rep.deltas.push_back(delta);
        rep.rhs_log_abs.push_back(log(abs(rhs)).to_double());
    }
    // crude stability flag: successive values approach the LHS monotonically
    double l = rep.lhs_log_abs.to_double();
    rep.extrapolation_stable =
        std::abs(rep.rhs_log_abs[2] - l) <= std::abs(rep.rhs_log_abs[0] - l) + 1e-6;
    return rep;
}

} // namespace starkforge::shintani
