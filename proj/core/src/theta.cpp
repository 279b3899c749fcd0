#include "starkforge/theta.hpp"

#include <cmath>

namespace starkforge::thetafun {

using mpk::cis2pi;
using mpk::const_pi;
using mpk::exp2i;

namespace {

long qprod_terms(double absq_log, long bits) {
    // N with |q|^{N+1}/(1-|q|) below 2^-(bits+16); absq_log = log|q| < 0
    double need = (bits + 24) * 0.6931471805599453;
    return static_cast<long>(need / -absq_log) + 2;
}

} // namespace

BigReal bernoulli2(const BigReal& u) { return u * u - u + BigReal(1, u.prec()) / 6L; }

BigComplex dedekind_eta(const BigComplex& w_in, const PrecisionCtx& ctx) {
    long prec = ctx.bits + 32;
    BigComplex w(BigReal(w_in.real(), prec), BigReal(w_in.imag(), prec));
    if (!(w.imag() > 0L)) throw DomainError("dedekind_eta: Im(w) must be positive");
    // factor f with eta(w_input) = f * eta(w_current)
    BigComplex f(1, 0, prec);
    BigReal half(0.5, prec);
    for (int it = 0; it < 4096; ++it) {
        // T-moves: w -> w - n, eta(w) = e^{i pi n / 12} eta(w - n)
        BigReal n = round_r(w.real());
        if (!n.is_zero()) {
            w.real() -= n;
            BigReal ang = const_pi(prec) * n / 12L;
            f *= BigComplex(cos(ang), sin(ang));
        }
        if (norm(w) >= 1L || w.imag() >= 1L) break;
        // S-move: eta(w_cur) = sqrt(-i w_new) eta(w_new), w_new = -1/w_cur
        BigComplex wn = -(BigComplex(1, 0, prec) / w);
        f *= sqrt(mul_i(-wn)); // -i * w_new
        w = wn;
    }
    BigComplex q = cis2pi(w);
    BigComplex acc = cis2pi(w / 24L);
    long N = qprod_terms(-2 * 3.141592653589793 * w.imag().to_double(), ctx.bits);
    BigComplex qn(1, 0, prec);
    for (long n = 1; n <= N; ++n) {
        qn *= q;
        acc *= BigComplex(BigReal(1, prec)) - qn;
    }
    return f * acc;
}

BigComplex product_theta_1(const BigComplex& w, const BigComplex& z_in, const PrecisionCtx& ctx) {
    long prec = ctx.bits + 32;
    if (!(w.imag() > 0L)) throw DomainError("product_theta_1: Im(w) must be positive");
    BigComplex z(BigReal(z_in.real(), prec), BigReal(z_in.imag(), prec));
    // reduce z by整 multiples of w: phi(z + m w) = (-1)^m q_z^{-m} q_w^{-m(m-1)/2} phi(z)
    long m = mpk::floor_long(round_r(z.imag() / w.imag()));
    BigComplex zr = z - BigReal(m, prec) * w;
    // real-part reduction is exact: q_z is 1-periodic in Re(z)
    zr.real() -= round_r(zr.real());
    // lattice-point proximity: phi vanishes exactly on Z + Zw
    BigReal d = abs(zr.real()) + abs(zr.imag());
    {
        BigComplex z1 = zr;
        z1.real() -= round_r(z1.real());
        if (abs(z1.real()) + abs(z1.imag()) < exp2i(-ctx.bits / 2, 64)) return BigComplex(0, 0, ctx.bits);
    }
    (void)d;
    BigComplex qz = cis2pi(zr);
    BigComplex qw = cis2pi(w);
    BigComplex val = qz - BigComplex(1, 0, prec);
    double logqw = -2 * 3.141592653589793 * w.imag().to_double();
    double extra = 2 * 3.141592653589793 * std::abs(zr.imag().to_double());
    long N = qprod_terms(logqw, ctx.bits) + static_cast<long>(extra / -logqw) + 2;
    BigComplex qwn(1, 0, prec);
    for (long n = 1; n <= N; ++n) {
        qwn *= qw;
        val *= (BigComplex(1, 0, prec) - qwn * qz) * (BigComplex(1, 0, prec) - qwn / qz);
    }
    if (m != 0) {
        // multiplier for z = zr + m w (+ integer): phi(z) = (-1)^m q_zr^{-m} q_w^{-m(m-1)/2} phi(zr)
        BigComplex mult = pow(qz, -m) * pow(qw, -m * (m - 1) / 2);
        if (m % 2 != 0) mult = -mult;
        val = mult * val;
    }
    return val;
}

BigComplex product_theta(const std::vector<BigComplex>& w, const std::vector<BigComplex>& z,
                         const PrecisionCtx& ctx) {
    if (w.size() != z.size()) throw DomainError("product_theta: dimension mismatch");
    BigComplex acc(1, 0, ctx.bits + 32);
    for (size_t i = 0; i < w.size(); ++i) acc *= product_theta_1(w[i], z[i], ctx);
    return acc;
}

BigComplex siegel_g(const BigReal& u_in, const BigReal& v_in, const BigComplex& w,
                    const PrecisionCtx& ctx) {
    long prec = ctx.bits + 32;
    // reduce (u, v) mod 1: |g| is exactly periodic; track nothing
    BigReal u(u_in, prec), v(v_in, prec);
    u -= mpk::floor_r(u);
    v -= mpk::floor_r(v);
    BigReal tol = exp2i(-ctx.bits / 2, 64);
    if ((u < tol || u > 1L - tol) && (v < tol || v > 1L - tol))
        throw LatticePointError("siegel_g: (u, v) is a lattice point");
    // classical normalization: z = u w + v with the B2(u) prefactor; |g| is
    // then exactly periodic in both arguments
    BigComplex z = BigComplex(u) * w + BigComplex(v);
    BigComplex qz = cis2pi(z);
    BigComplex qw = cis2pi(w);
    BigComplex val = BigComplex(1, 0, prec) - qz;
    double logqw = -2 * 3.141592653589793 * w.imag().to_double();
    long N = qprod_terms(logqw, ctx.bits) + 3;
    BigComplex qwn(1, 0, prec);
    for (long n = 1; n <= N; ++n) {
        qwn *= qw;
        val *= (BigComplex(1, 0, prec) - qwn * qz) * (BigComplex(1, 0, prec) - qwn / qz);
    }
    // prefactors
    BigComplex qb2 = pow(qw, BigComplex(bernoulli2(u) / 2L));
    BigReal ang = const_pi(prec) * v * (u - 1L);
    BigComplex ph(cos(ang), sin(ang));
    return -(qb2 * ph * val);
}

BigReal eta_theta_null_sq(const std::vector<BigComplex>& w, const PrecisionCtx& ctx) {
    long prec = ctx.bits + 32;
    // per factor: |q^{1/12} phi'(w_i, 0)| = 2 pi |q|^{1/12} prod |1-q^n|^2
    BigReal acc(1, prec);
    for (const auto& wi : w) {
        if (!(wi.imag() > 0L)) throw DomainError("eta_theta_null_sq: Im(w) must be positive");
        BigComplex q = cis2pi(wi);
        BigReal aq = abs(q);
        long N = qprod_terms(log(aq).to_double(), ctx.bits);
        BigReal p(1, prec);
        BigComplex qn(1, 0, prec);
        for (long n = 1; n <= N; ++n) {
            qn *= q;
            p *= norm(BigComplex(1, 0, prec) - qn); // |1-q^n|^2
        }
        BigReal q12 = exp(log(aq) / 12L);
        acc *= 2L * const_pi(prec) * q12 * p;
    }
    return acc;
}

} // namespace starkforge::thetafun
