// Dirichlet L-values for quadratic fields and Epstein zeta values by the
// incomplete-gamma (theta) representation, including the shifted second
// limit formula coefficient.

#pragma once

#include "starkforge/fields.hpp"

namespace starkforge::lfun {

using fields::TotallyRealField;
using nt::Int;
using nt::Rat;

// L(s, chi_D) for the Kronecker character of a fundamental discriminant D,
// via Hurwitz zeta; s != 1
BigReal dirichlet_L(const BigComplex& s, long D, const PrecisionCtx& ctx);

// exact pi^2 * B_{2,chi} / D^{3/2} closed form of L(2, chi_D) for D > 0
// (functional equation from L(-1, chi) = -B_{2,chi}/2); the rational
// B_{2,chi} is returned separately for exact tests
Rat bernoulli2_chi(long D);
BigReal dirichlet_L2_closed(long D, const PrecisionCtx& ctx);

// Dedekind zeta of the totally real base at s = 2 (degree <= 2):
// zeta(2) resp. zeta(2) L(2, chi_disc)
BigReal zeta_F_at_2(const TotallyRealField& F, const PrecisionCtx& ctx);

// Epstein zeta by incomplete gamma, for the determinant-1 binary form
// Q[(m,n)] = |m w + n|^2 / y attached to w in H.
//
// plain value: S(s) = sum'_{(m,n)} Q[(m,n)]^{-s}, Re(s) anything away from
// the poles; converges exponentially in the lattice cutoff.
BigReal epstein_plain(const BigComplex& w, const BigReal& s, const PrecisionCtx& ctx);

// general positive binary form given by a lattice basis (b1, b2) in C:
// sum'_{(m,n)} |m b1 + n b2|^{-2s}, via the determinant-normalized form
BigReal epstein_lattice(const BigComplex& b1, const BigComplex& b2, const BigReal& s,
                        const PrecisionCtx& ctx);

// shifted Epstein derivative at s = 0:
//   E_{(a,b)}(w, s) = sum_{(m,n) in Z^2 + (a,b)} (y / |m w + n|^2)^s
//   E(0) = 0 and E'(0) = -2 log|g_{a,b}(w)|  (second limit formula)
BigReal epstein_shift_sprime0(const BigReal& a, const BigReal& b, const BigComplex& w,
                              const PrecisionCtx& ctx);

} // namespace starkforge::lfun
