// Dedekind eta, Siegel functions, the product theta phi(w, z) and the
// derivative theta null |eta_K(w; a)|^2.

#pragma once

#include "starkforge/fields.hpp"

namespace starkforge::thetafun {

struct LatticePointError : Error { using Error::Error; };

// eta(w) = q^{1/24} prod (1 - q^n), evaluated after SL_2(Z) reduction of w
// (the T/S moves are tracked exactly through eta's functional equations)
BigComplex dedekind_eta(const BigComplex& w, const PrecisionCtx& ctx);

// one-variable theta phi(w, z) = (q_z - 1) prod_{n>=1} (1 - q_w^n q_z)(1 - q_w^n / q_z).
// z is reduced by z -> z - m w first; the exact multiplier
// (-1)^m q_z^{-m} q_w^{-m(m-1)/2} is applied. Returns exact 0 when z is
// within 2^{-bits/2} of a lattice point.
BigComplex product_theta_1(const BigComplex& w, const BigComplex& z, const PrecisionCtx& ctx);

// componentwise product over H^n
BigComplex product_theta(const std::vector<BigComplex>& w, const std::vector<BigComplex>& z,
                         const PrecisionCtx& ctx);

// Siegel function g_{u,v}(w) by its own q-product (Bernoulli prefactor
// times the theta product), for (u, v) not both integral
BigComplex siegel_g(const BigReal& u, const BigReal& v, const BigComplex& w,
                    const PrecisionCtx& ctx);

// |eta_K(w; a)|^2 as the mixed first partial of prod_i phi(w_i, z_i) at
// z = 0: each factor contributes phi'(w_i, 0) = 2 pi i prod (1-q^n)^2,
// and the q_w^{1/12} normalization of the ratio law is included.
// Calibration: for n = 1 this equals 2 pi |eta(w)|^2.
BigReal eta_theta_null_sq(const std::vector<BigComplex>& w, const PrecisionCtx& ctx);

// B_2(u) = u^2 - u + 1/6
BigReal bernoulli2(const BigReal& u);

} // namespace starkforge::thetafun
