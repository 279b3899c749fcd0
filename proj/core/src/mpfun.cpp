#include "starkforge/mpfun.hpp"

#include <cmath>
#include <mutex>
#include <vector>

namespace starkforge::mpk {

const mpq_class& bernoulli(unsigned k) {
    static std::vector<mpq_class> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (cache.empty()) cache = {mpq_class(1), mpq_class(-1, 2)};
    while (cache.size() <= k) {
        // sum_{j=0}^{n} C(n+1, j) B_j = 0  for n >= 1
        unsigned n = cache.size();
        mpq_class acc(0);
        mpz_class binom(1); // C(n+1, 0)
        for (unsigned j = 0; j < n; ++j) {
            acc += binom * cache[j];
            binom = binom * (n + 1 - j) / (j + 1);
        }
        cache.push_back(-acc / mpz_class(n + 1));
    }
    return cache[k];
}

namespace {

// Stirling series for log Gamma, valid once Re(z) is large enough that the
// minimal term of the asymptotic series is below 2^-(bits+guard).
BigComplex log_gamma_stirling(const BigComplex& z, long prec, long bits) {
    BigComplex lg = (z - BigComplex(BigReal(0.5, prec))) * log(z) - z;
    lg += BigComplex(BigReal(0.5, prec) * log(2L * const_pi(prec)));
    BigComplex zinv = BigComplex(1, 0, prec) / z;
    BigComplex zinv2 = zinv * zinv;
    BigComplex zp = zinv;
    BigReal cutoff = exp2i(-bits - 8, 64);
    for (unsigned j = 1; j < 4096; ++j) {
        BigReal bj(bernoulli(2 * j), prec);
        BigComplex term = zp * (bj / BigReal(static_cast<long>(2 * j) * (2L * j - 1L), prec));
        lg += term;
        if (abs(term) < cutoff) break;
        zp *= zinv2;
    }
    return lg;
}

bool near_nonpositive_integer(const BigComplex& s, long bits, long* which = nullptr) {
    if (!(abs(s.imag()) < exp2i(-bits / 2, 64))) return false;
    BigReal r = round_r(s.real());
    if (r > 0L) return false;
    if (!(abs(s.real() - r) < exp2i(-bits / 2, 64))) return false;
    if (which) *which = r.to_long();
    return true;
}

} // namespace

BigComplex log_gamma(const BigComplex& s, const PrecisionCtx& ctx) {
    long guard = 48;
    long prec = ctx.bits + guard;
    // raise the argument until Stirling's minimal term is small enough:
    // the optimal truncation error behaves like exp(-2*pi*Re(z))
    long target = static_cast<long>(0.1103 * (ctx.bits + 16)) + 6; // bits*ln2/(2*pi)
    BigComplex z(BigReal(s.real(), prec), BigReal(s.imag(), prec));
    BigComplex shiftlog(0, 0, prec);
    long m = 0;
    if (z.real() < target) m = target - floor_long(z.real());
    for (long k = 0; k < m; ++k) {
        shiftlog += log(z);
        z = z + BigComplex(1, 0, prec);
    }
    return log_gamma_stirling(z, prec, ctx.bits) - shiftlog;
}

BigComplex gamma(const BigComplex& s, const PrecisionCtx& ctx) {
    long pole;
    if (near_nonpositive_integer(s, ctx.bits, &pole))
        throw PoleAtNonPositiveInteger("gamma: pole at s = " + std::to_string(pole));
    long prec = ctx.bits + 48;
    if (s.real() > 0L || abs(s.imag()) > BigReal(0.5, 64)) {
        return exp(log_gamma(s, ctx));
    }
    // reflection-free: raise through the left half-plane
    BigComplex z(BigReal(s.real(), prec), BigReal(s.imag(), prec));
    BigComplex denom(1, 0, prec);
    while (!(z.real() > 0L)) {
        denom *= z;
        z = z + BigComplex(1, 0, prec);
    }
    return exp(log_gamma(z, ctx)) / denom;
}

BigReal gamma(const BigReal& s, const PrecisionCtx& ctx) {
    return gamma(BigComplex(s), ctx).real();
}

namespace {

// gamma_lower(s,x) * e^x * x^-s = sum_k x^k / (s(s+1)...(s+k)), Re(s) > 0
BigComplex lower_series_factor(const BigComplex& s, const BigReal& x, long prec, long bits) {
    BigComplex term = BigComplex(1, 0, prec) / s;
    BigComplex acc = term;
    BigReal cutoff = exp2i(-bits - 16, 64);
    for (long k = 1; k < 1000000; ++k) {
        term = term * BigComplex(BigReal(x, prec)) / (s + BigComplex(k, 0, prec));
        acc += term;
        if (abs(term) < cutoff * abs(acc)) break;
    }
    return acc;
}

// Legendre continued fraction: Gamma(s,x) = e^-x x^s / (x+1-s- 1(1-s)/(x+3-s- ...))
// evaluated by the modified Lentz algorithm.
BigComplex upper_cf_factor(const BigComplex& s, const BigReal& x, long prec, long bits) {
    BigReal tiny = exp2i(-4 * bits, prec);
    BigComplex b0 = BigComplex(BigReal(x, prec)) + BigComplex(1, 0, prec) - s;
    if (abs(b0) < tiny) b0 = BigComplex(tiny, BigReal(0, prec));
    BigComplex f = b0, C = b0, D(0, 0, prec);
    BigReal cutoff = exp2i(-bits - 16, 64);
    for (long i = 1; i < 1000000; ++i) {
        BigComplex ai = BigComplex(-i, 0, prec) * (BigComplex(i, 0, prec) - s);
        BigComplex bi = BigComplex(BigReal(x, prec)) + BigComplex(2 * i + 1, 0, prec) - s;
        D = bi + ai * D;
        if (abs(D) < tiny) D = BigComplex(tiny, BigReal(0, prec));
        C = bi + ai / C;
        if (abs(C) < tiny) C = BigComplex(tiny, BigReal(0, prec));
        D = BigComplex(1, 0, prec) / D;
        BigComplex delta = C * D;
        f *= delta;
        if (abs(delta - BigComplex(1, 0, prec)) < cutoff) break;
    }
    return BigComplex(1, 0, prec) / f;
}

BigReal e1_series(const BigReal& x, long prec, long bits) {
    // E1(x) = -euler - log x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    BigReal acc = -const_euler(prec) - log(x);
    BigReal term(1L, prec);
    BigReal cutoff = exp2i(-bits - 16, 64);
    for (long k = 1; k < 100000; ++k) {
        term = term * x / BigReal(k, prec);
        BigReal add = term / BigReal(k, prec);
        if (k % 2 == 1) acc += add; else acc -= add;
        if (add < cutoff) break;
    }
    return acc;
}

} // namespace

BigComplex incomplete_gamma_upper(const BigComplex& s_in, const BigReal& x_in,
                                  const PrecisionCtx& ctx) {
    if (x_in.sign() < 0) throw DomainError("incomplete_gamma_upper: x must be >= 0");
    long guard = 64;
    long prec = ctx.bits + guard;
    BigComplex s(BigReal(s_in.real(), prec), BigReal(s_in.imag(), prec));
    BigReal x(x_in, prec);

    if (x.is_zero()) return gamma(s, ctx);

    BigReal crossover = s.real() + 1L;
    if (x >= crossover && x >= 1L) {
        BigComplex pref = exp(BigComplex(log(x)) * s - BigComplex(x));
        return pref * upper_cf_factor(s, x, prec, ctx.bits);
    }

    long pole = 0;
    if (near_nonpositive_integer(s, ctx.bits, &pole)) {
        // climb down from Gamma(0, x) = E1(x) via
        // Gamma(s-1, x) = (Gamma(s,x) - x^{s-1} e^{-x}) / (s-1)
        BigReal g(e1_series(x, prec, ctx.bits), prec);
        BigComplex acc(g);
        BigReal ex = exp(-x);
        for (long k = 0; k > pole; --k) {
            BigComplex xs = exp(BigComplex(log(x)) * BigComplex(k - 1, 0, prec));
            acc = (acc - BigComplex(ex) * xs) / BigComplex(k - 1, 0, prec);
        }
        return acc;
    }

    if (s.real() > 0L) {
        BigComplex pref = exp(BigComplex(log(x)) * s - BigComplex(x));
        return gamma(s, ctx.with_guard(guard)) - pref * lower_series_factor(s, x, prec, ctx.bits);
    }

    // Re(s) <= 0, x small, s not near a non-positive integer: raise s first.
    long m = 1 + floor_long(-s.real());
    BigComplex shifted = incomplete_gamma_upper(s + BigComplex(m, 0, prec), x,
                                                ctx.with_guard(guard));
    BigReal ex = exp(-x);
    for (long k = m; k > 0; --k) {
        BigComplex sk = s + BigComplex(k - 1, 0, prec); // recurse down to s
        BigComplex xs = exp(BigComplex(log(x)) * sk);
        shifted = (shifted - BigComplex(ex) * xs) / sk;
    }
    return shifted;
}

BigReal incomplete_gamma_upper(const BigReal& s, const BigReal& x, const PrecisionCtx& ctx) {
    return incomplete_gamma_upper(BigComplex(s), x, ctx).real();
}

BigReal expint_e1(const BigReal& x, const PrecisionCtx& ctx) {
    if (!(x > 0L)) throw DomainError("expint_e1: x must be > 0");
    return incomplete_gamma_upper(BigComplex(0, 0, ctx.bits + 32), x, ctx).real();
}

BigComplex bessel_k_paper(const BigComplex& s_in, const BigReal& c_in,
                          const PrecisionCtx& ctx) {
    if (!(c_in > 0L)) throw DomainError("bessel_k_paper: c must be > 0");
    long guard = 48;
    long prec = ctx.bits + guard;
    BigComplex s(BigReal(s_in.real(), prec), BigReal(s_in.imag(), prec));
    BigReal c(c_in, prec);

    // K_s(c) = \int_{-inf}^{inf} exp(-2c cosh(u) + s u) du; the integrand is
    // doubly-exponentially concentrated, so the trapezoid rule converges
    // geometrically in 1/h. Halve h until the value is stable.
    auto f = [&](const BigReal& u) {
        return exp(BigComplex(-2L * c * cosh(u)) + s * BigComplex(BigReal(u, prec)));
    };
    // truncation: 2c cosh(U) - |Re s| U >= (bits+24) ln 2
    BigReal need = BigReal(ctx.bits + 24, prec) * const_log2(prec);
    BigReal U(1L, prec);
    while (2L * c * cosh(U) - abs(s.real()) * U < need) U += 1L;

    BigReal h(0.5, prec);
    BigComplex prev(0, 0, prec);
    BigComplex result(0, 0, prec);
    for (int iter = 0; iter < 16; ++iter) {
        BigComplex acc = f(BigReal(0L, prec));
        long nsteps = floor_long(U / h) + 1;
        for (long k = 1; k <= nsteps; ++k) {
            BigReal u = h * k;
            acc += f(u) + f(-u);
        }
        result = acc * h;
        if (iter > 1 && abs(result - prev) < ctx.tail_tol / 4L) break;
        prev = result;
        h = h / 2L;
    }
    return result;
}

BigReal bessel_k_paper(const BigReal& s, const BigReal& c, const PrecisionCtx& ctx) {
    return bessel_k_paper(BigComplex(s), c, ctx).real();
}

BigReal dirichlet_sum(const DirichletStream& stream, const BigComplex& s,
                      const PrecisionCtx& ctx, std::uint64_t max_terms) {
    if (!(s.real().to_double() > stream.conv_abscissa))
        throw DomainError("dirichlet_sum: Re(s) not inside the declared convergence half-plane");
    long prec = ctx.bits + 32;
    BigReal re_s(s.real(), prec);

    // find the truncation point from the analytic tail bound first
    std::uint64_t N = 16;
    while (!(stream.tail(N, re_s, prec) <= ctx.tail_tol)) {
        if (N >= max_terms)
            throw ConvergenceError("dirichlet_sum: tail bound cannot reach tail_tol within term budget");
        N *= 2;
    }
    // refine N downward a little (binary search between N/2 and N)
    std::uint64_t lo = N / 2, hi = N;
    while (lo + 1 < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (stream.tail(mid, re_s, prec) <= ctx.tail_tol) hi = mid; else lo = mid;
    }
    N = hi;

    bool complex_s = !s.imag().is_zero();
    bool int_s = !complex_s && re_s == round_r(re_s) && abs(re_s) < 64L;
    long si = int_s ? re_s.to_long() : 0;
    BigReal acc(0L, prec);
    BigComplex acc_c(0, 0, prec);
    for (std::uint64_t n = 1; n <= N; ++n) {
        BigReal cn = stream.coeff(n, prec);
        if (cn.is_zero()) continue;
        if (int_s) {
            acc += cn / pow(BigReal(mpz_class(static_cast<unsigned long>(n)), prec), si);
            continue;
        }
        BigReal ln = log(BigReal(mpz_class(static_cast<unsigned long>(n)), prec));
        if (complex_s) {
            acc_c += BigComplex(cn) * exp(BigComplex(-re_s * ln, -s.imag() * ln));
        } else {
            acc += cn * exp(-re_s * ln);
        }
    }
    return complex_s ? acc_c.real() : acc;
}

BigReal integrate_de(const std::function<BigReal(const BigReal&)>& f,
                     const BigReal& a, const BigReal& b, const PrecisionCtx& ctx) {
    long prec = ctx.bits + 32;
    // x = (a+b)/2 + (b-a)/2 * tanh(sinh(t)*pi/2), trapezoid in t. Abscissas
    // near the endpoints are formed as distances from the endpoint, never by
    // adding tanh ~ +-1, so endpoint singularities of f stay resolvable.
    BigReal mid = (a + b) / 2L, halfw = (b - a) / 2L;
    BigReal piH = const_pi(prec) / 2L;
    // for t > 0: 1 - tanh(sh) = 2 e^{-2 sh} / (1 + e^{-2 sh})
    auto pair_sum = [&](const BigReal& t) {
        BigReal sh = piH * sinh(t);
        BigReal e2 = exp(-2L * sh);
        BigReal d = halfw * 2L * e2 / (1L + e2); // halfw * (1 - tanh(sh))
        if (d.is_zero()) return BigReal(0L, prec);
        BigReal ch = cosh(sh);
        BigReal w = halfw * piH * cosh(t) / (ch * ch);
        if (w.is_zero()) return BigReal(0L, prec);
        BigReal xp = b - d, xm = a + d;
        BigReal acc(0L, prec);
        if (xp > a && xp < b) acc += f(xp) * w;
        if (xm > a && xm < b) acc += f(xm) * w;
        return acc;
    };
    BigReal h(0.5, prec);
    // endpoint distance at the last node is ~ 2 exp(-pi sinh(tmax)); keep it
    // below 2^{-4 prec} so even integrable endpoint singularities x^{-3/4}
    // leave less than 2^{-prec} of mass outside the truncated range
    BigReal tmax(std::asinh(4.0 * prec * 0.6931 / 3.14159) + 0.25, prec);
    BigReal prev(0L, prec), result(0L, prec);
    for (int iter = 0; iter < 15; ++iter) {
        BigReal acc = f(mid) * (halfw * piH);
        long nsteps = floor_long(tmax / h) + 1;
        for (long k = 1; k <= nsteps; ++k) acc += pair_sum(h * k);
        result = acc * h;
        if (iter > 2 && abs(result - prev) < ctx.tail_tol / 4L) break;
        prev = result;
        h = h / 2L;
    }
    return result;
}

BigReal integrate_to_inf(const std::function<BigReal(const BigReal&)>& f,
                         const BigReal& a, const PrecisionCtx& ctx) {
    long prec = ctx.bits + 32;
    // t = a + e^u - 1, u in (0, inf); then DE-transform u = exp(sinh(v)) style
    // Simpler: exp-sinh quadrature: t = a + exp(pi/2 sinh(v)), v in (-inf, inf)
    BigReal piH = const_pi(prec) / 2L;
    auto g = [&](const BigReal& v) {
        BigReal ex = exp(piH * sinh(v));
        BigReal x = a + ex;
        BigReal w = piH * cosh(v) * ex;
        return f(x) * w;
    };
    BigReal h(0.5, prec);
    // exp(-(pi/2) sinh(vmax)) below 2^{-2 prec}: nothing of the lower end is lost
    BigReal vmax(std::asinh(2.0 * 2.0 * prec * 0.6931 / 3.14159) + 0.25, prec);
    BigReal prev(0L, prec), result(0L, prec);
    for (int iter = 0; iter < 15; ++iter) {
        BigReal acc = g(BigReal(0L, prec));
        long nsteps = floor_long(vmax / h) + 1;
        for (long k = 1; k <= nsteps; ++k) {
            BigReal v = h * k;
            acc += g(v) + g(-v);
        }
        result = acc * h;
        if (iter > 2 && abs(result - prev) < ctx.tail_tol / 4L) break;
        prev = result;
        h = h / 2L;
    }
    return result;
}

} // namespace starkforge::mpk
