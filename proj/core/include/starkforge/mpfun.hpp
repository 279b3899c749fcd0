// Special functions at explicit precision: Gamma, upper incomplete Gamma,
// the Bessel-type integral K_s(c) = \int_0^inf exp[-c(t+1/t)] t^s dt/t,
// and a generic Dirichlet-series summation engine.

#pragma once

#include "starkforge/mp.hpp"

#include <functional>
#include <vector>

namespace starkforge::mpk {

// Exact Bernoulli numbers B_0, B_1, ... (B_1 = -1/2). Cached, thread-safe.
const mpq_class& bernoulli(unsigned k);

// Gamma(s) by Stirling's series with argument raising. Throws
// PoleAtNonPositiveInteger when s is within tolerance of {0,-1,-2,...}.
BigComplex gamma(const BigComplex& s, const PrecisionCtx& ctx);
BigReal gamma(const BigReal& s, const PrecisionCtx& ctx);

// log Gamma(s) for Re(s) > 0 (principal branch).
BigComplex log_gamma(const BigComplex& s, const PrecisionCtx& ctx);

// Upper incomplete Gamma(s, x) for x >= 0. Power series below the
// crossover x = Re(s)+1, Legendre continued fraction above it, downward
// recurrence through s = 0, -1, -2, ... where the series route degenerates.
BigComplex incomplete_gamma_upper(const BigComplex& s, const BigReal& x,
                                  const PrecisionCtx& ctx);
BigReal incomplete_gamma_upper(const BigReal& s, const BigReal& x,
                               const PrecisionCtx& ctx);

// The exponential integral E_1(x) = Gamma(0, x), x > 0.
BigReal expint_e1(const BigReal& x, const PrecisionCtx& ctx);

// Paper-normalized Bessel integral. Satisfies K_s(c) = 2*BesselK_s(2c)
// and K_{-s} = K_s. DomainError for c <= 0.
BigComplex bessel_k_paper(const BigComplex& s, const BigReal& c,
                          const PrecisionCtx& ctx);
BigReal bessel_k_paper(const BigReal& s, const BigReal& c, const PrecisionCtx& ctx);

// Coefficient stream for dirichlet_sum: c(n) for n = 1, 2, 3, ...
// indexed by (integer) norm, together with an analytic bound on the
// absolute tail |sum_{n > N} c(n) n^{-s}| valid for the Re(s) in use.
struct DirichletStream {
    std::function<BigReal(std::uint64_t, long /*prec*/)> coeff;
    // tail(N, re_s, prec) -> upper bound for the absolute tail beyond N
    std::function<BigReal(std::uint64_t, const BigReal&, long)> tail;
    double conv_abscissa = 1.0; // series converges absolutely for Re(s) > this
};

// sum c(n)/n^s with absolute error <= ctx.tail_tol; the truncation point is
// taken from the stream's analytic tail bound. ConvergenceError if the bound
// cannot reach tail_tol within max_terms.
BigReal dirichlet_sum(const DirichletStream& stream, const BigComplex& s,
                      const PrecisionCtx& ctx, std::uint64_t max_terms = 2'000'000);

// Tanh-sinh (double exponential) quadrature of f over (a, b), used as the
// independent oracle for the closed-form routines above. Lives here rather
// than in test code because the shintani experiments reuse it.
BigReal integrate_de(const std::function<BigReal(const BigReal&)>& f,
                     const BigReal& a, const BigReal& b, const PrecisionCtx& ctx);

// Quadrature over (a, inf) with exponential decay, via t = a + exp(u)-1 mapping.
BigReal integrate_to_inf(const std::function<BigReal(const BigReal&)>& f,
                         const BigReal& a, const PrecisionCtx& ctx);

} // namespace starkforge::mpk
