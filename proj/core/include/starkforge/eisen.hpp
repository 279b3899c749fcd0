// Eisenstein series over the totally real base field: sigma_{s,chi}, the
// Fourier expansion of h_chi(w; a), the total h, delta_K(R) ledgers, and
// the direct lattice Eisenstein sum for the Re(s) > 1 cross-checks.

#pragma once

#include "starkforge/fields.hpp"
#include "starkforge/idealmod.hpp"

#include <map>
#include <string>

namespace starkforge::eisen {

using fields::ClassGroup;
using fields::CMField;
using fields::FieldElem;
using fields::Ideal;
using fields::TotallyRealField;
using nt::Int;
using nt::Rat;

// sigma_{s,chi}(x) = prod_v (1 + chi(p_v) q_v^s + ... + (chi(p_v) q_v^s)^{ord_v});
// zero for non-integral x by the defining convention
BigComplex sigma_s_chi(const TotallyRealField& F, const Ideal& x, long s, int chi,
                       const PrecisionCtx& ctx);
// divisor-sum form sum_{c | x} chi(c) N(c)^s, the cross-check oracle
BigComplex sigma_divisor_form(const TotallyRealField& F, const Ideal& x, long s, int chi,
                              const PrecisionCtx& ctx);

struct FourierParams {
    const TotallyRealField* F;
    Ideal a_ideal;                  // the type ideal b of the presentation
    std::vector<BigComplex> w;      // CM point, one per real embedding
    long workers = 1;
};

// h_{chi}(w; a) by its Fourier expansion; the b-sum is truncated with the
// documented exponential tail bound (logged in the returned diagnostics)
struct HValue {
    BigReal value;
    double truncation_T;   // included all b with sum_j |b_j| y_j <= T
    long terms;
};
HValue h_chi_fourier(const FourierParams& p, int chi, const PrecisionCtx& ctx);

// h(w; a) = sum_chi chi(a) h_chi(w; a); real by construction
HValue h_total(const FourierParams& p, const PrecisionCtx& ctx);

// Moebius action of a 2x2 matrix over O_F on the CM point, componentwise
std::vector<BigComplex> moebius(const TotallyRealField& F, const FieldElem& a,
                                const FieldElem& b, const FieldElem& c,
                                const FieldElem& d, const std::vector<BigComplex>& w,
                                long prec);

// delta_K(R) = h(w; b) - log prod Im(w_i) - log N(b) for the presentation of
// a representative of R^{-1}
struct DeltaEntry {
    int class_label;
    BigReal delta;
    Ideal type_ideal;
    std::vector<BigComplex> cm_point;
    std::string method;
};

struct DeltaLedger {
    std::map<int, DeltaEntry> entries;
};

DeltaEntry delta_K(const CMField& K, int class_label, const PrecisionCtx& ctx,
                   long workers = 1);
DeltaLedger delta_ledger(const CMField& K, const PrecisionCtx& ctx, long workers = 1);

// direct lattice Eisenstein sum over (c,d) in (a + O_F)/U_F for Re(s) > 1,
// with unit-orbit representatives and an explicit cutoff; loose-tolerance
// cross-check only (polynomial decay)
BigReal eisenstein_direct(const FourierParams& p, const BigReal& s, long cutoff,
                          const PrecisionCtx& ctx);

} // namespace starkforge::eisen
