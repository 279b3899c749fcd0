// Singular theta lift machinery: Siegel kernels on a^3 lattices with the
// x1 x3 - x2^2 form, Jacobi-type half-weight theta q-series, the unfolded
// closed-form lift, the chi/divisor bridge identity, and the incomplete-
// gamma singularity classifier.

#pragma once

#include "starkforge/eisen.hpp"
#include "starkforge/fields.hpp"

namespace starkforge::borlift {

using fields::CMField;
using fields::FieldElem;
using fields::Ideal;
using fields::TotallyRealField;
using nt::Int;
using nt::Rat;

struct CutoffTooSmall : Error { using Error::Error; };
struct NotUniform : Error { using Error::Error; };

// Siegel theta kernel over the slot lattice L1 x L2 x L3 (fractional ideals
// of F), quadratic form x1 x3 - x2^2 applied embeddingwise, Grassmannian
// datum given by w in H^n:
//   theta(w, tau) = sum_x prod_i exp(2 pi i (tau_i Qp_i + conj(tau_i) Qm_i))
// with Qp = B(x, A_w)^2, Qm = Q - Qp. The exponent matches the q^{(x,x)}
// convention of the Jacobi-type series, which makes tau -> tau + a exact.
// half_index switches to the (.. Qp/2 ..) exponent; Poisson inversion maps
// the plain kernel to the half-index kernel of the standard trace-dual
// lattice with the dual datum a' = J^{-1} a(w).
BigComplex siegel_kernel(const TotallyRealField& F, const std::vector<Ideal>& slots,
                         const std::vector<BigComplex>& w,
                         const std::vector<BigComplex>& tau, const PrecisionCtx& ctx,
                         bool half_index = false, bool dual_datum = false);

// Jacobi-type theta_a(q) = sum_{x in a} q^{(x, x)} and its coefficient table
struct JacobiTheta {
    BigComplex value;
    // representation numbers: (norm-sorted distinct x^2 as field elements,
    // multiplicity); uniform by construction
    std::vector<std::pair<FieldElem, long>> c_table;
};
JacobiTheta jacobi_type_theta(const TotallyRealField& F, const Ideal& a,
                              const std::vector<BigComplex>& w, long table_limit,
                              const PrecisionCtx& ctx);

// closed-form unfolded lift of theta_a against the a^3 Siegel kernel:
//   CT + C * sum_{(alpha, lambda)/~} c(lambda^2/2) / |N(alpha)| e-term,
// C = 2^{1-2n} / (h_F R_F sqrt(D_F)); equals sum_chi chi(a) h_chi(w; a)
struct LiftValue {
    BigReal value;
    double truncation_T;
    long pairs;
};
LiftValue lift_closed_form(const TotallyRealField& F, const Ideal& a,
                           const std::vector<BigComplex>& w, const PrecisionCtx& ctx);

// bridge identity: sum_chi chi(a) sigma_{1,chi}((beta) d a^{-1}) equals
// h_F * (class-restricted divisor sum); returns both sides
std::pair<BigComplex, BigComplex> divisor_sum_bridge(const TotallyRealField& F,
                                                     const FieldElem& beta,
                                                     const Ideal& a,
                                                     const PrecisionCtx& ctx);

// singularity type of f(r) = |r|^{-2s} Gamma(s, r^2) at r -> 0
struct SingularityReport {
    long s;
    bool log_type;          // s <= 0: r^{-2s} log(r^2) type (log at s = 0)
    BigReal fitted_slope;   // regression of f against the predicted model
    BigReal large_r_value;  // f at r = 3 (must be near 0)
};
SingularityReport singularity_classifier(long s, const PrecisionCtx& ctx);

} // namespace starkforge::borlift
