// Shintani machinery: cone decompositions under totally positive units,
// Riemann-Hurwitz / Barnes zeta functions with analytic s-derivatives,
// multiple-Gamma values, the Chowla-Selberg check, cone special values of
// Dedekind zeta, and toric vanishing orders.

#pragma once

#include "starkforge/fields.hpp"

namespace starkforge::shintani {

using fields::FieldElem;
using fields::TotallyRealField;
using nt::Int;
using nt::Rat;

struct PoleError : Error { using Error::Error; };

// Hurwitz zeta(s, x) for x > 0, s != 1, by Euler-Maclaurin; _ds is the
// exact analytic s-derivative (dual-number propagation, no finite
// differences)
BigComplex hurwitz_zeta(const BigComplex& s, const BigReal& x, const PrecisionCtx& ctx);
BigComplex hurwitz_zeta_ds(const BigComplex& s, const BigReal& x, const PrecisionCtx& ctx);

// zeta_n(s, w, x) = sum over m in Z_{>=0}^n of (x + m.w)^{-s}, n <= 2,
// continued by the iterated Euler-Maclaurin / Hurwitz chain
BigComplex shintani_zeta(const BigComplex& s, const std::vector<BigReal>& w,
                         const BigReal& x, const PrecisionCtx& ctx);
BigComplex shintani_zeta_ds(const BigComplex& s, const std::vector<BigReal>& w,
                            const BigReal& x, const PrecisionCtx& ctx);

// log(Gamma_n(x, w) / rho_n(w)) = d/ds zeta_n(s, w, x) at s = 0
BigReal barnes_log_gamma(const BigReal& x, const std::vector<BigReal>& w,
                         const PrecisionCtx& ctx);
// -log rho_n(w) = lim_{x->0+} (d/ds zeta_n(0, w, x) + log x), evaluated
// exactly by dropping the m = 0 term
BigReal neg_log_rho(const std::vector<BigReal>& w, const PrecisionCtx& ctx);

// Chowla-Selberg: y |eta(w)|^4 = (sqrt(d)/4pi) exp(L'(0,chi_-d)/L(0,chi_-d))
// for the class-number-one discriminants -4 (w = i) and -3 (w = (1+sqrt-3)/2).
struct ChowlaSelbergReport {
    long disc;
    BigReal lhs, rhs;
    double rel_error;
};
ChowlaSelbergReport chowla_selberg_check(long disc, const PrecisionCtx& ctx);

// cones -----------------------------------------------------------------

struct Cone {
    std::vector<FieldElem> gens;
    std::vector<bool> closed; // per generator ray: include the face x_i = 0?
};

struct ShintaniDecomposition {
    const TotallyRealField* F;
    std::vector<Cone> cones;
    FieldElem eps0; // totally positive fundamental unit (identity for n = 1)
    // rational shift set per cone: alpha in O_F inside the half-open box
    std::vector<std::vector<std::pair<Rat, Rat>>> shifts;
};

ShintaniDecomposition decompose_real_quadratic(const TotallyRealField& F);

// membership of a real point (given by embeddings) in u(V) for a unique
// unit power u = eps0^k; returns the number of (cone, k) hits in the range
int tiling_hits(const ShintaniDecomposition& dec, const std::vector<double>& point,
                int k_range = 48);

// Z(-k) for Z(s) = sum_{m,n>=0} prod_i (a_i (m+u) + b_i (n+v))^{-s}
// via the Gamma-residue formula (finite Bernoulli expression)
BigReal cone_zeta_special(int k, const std::vector<BigReal>& a,
                          const std::vector<BigReal>& b, const Rat& u, const Rat& v,
                          const PrecisionCtx& ctx);
// direct truncated evaluation at real s > 1 (loose-tolerance cross-check)
BigReal cone_zeta_direct(const BigReal& s, const std::vector<BigReal>& a,
                         const std::vector<BigReal>& b, const Rat& u, const Rat& v,
                         long terms);

// zeta_F(-1) assembled from the cone decomposition (real quadratic F with
// a totally positive generator for every principal ideal)
BigReal zeta_minus1_via_cones(const TotallyRealField& F, const PrecisionCtx& ctx);

// min over U_F^+ translates of Tr(ell * u * alpha); ell in the trace-dual
// lattice so the pairing is integral
Int toric_vanishing_order(const ShintaniDecomposition& dec, const FieldElem& ell,
                          const FieldElem& alpha);

// Shintani's Gamma_2 reflection formula as a diagnostic experiment:
// LHS via Barnes log-Gamma, RHS via Abel-regularized infinite products at
// eps(1 + i delta), delta in {1e-2, 1e-3, 1e-4}
struct ReflectionReport {
    BigReal lhs_log_abs;
    std::vector<double> deltas;
    std::vector<double> rhs_log_abs;
    bool extrapolation_stable;
};
ReflectionReport shintani_reflection_experiment(const BigReal& z,
                                                const TotallyRealField& F,
                                                const PrecisionCtx& ctx);

} // namespace starkforge::shintani
