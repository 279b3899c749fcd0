#include "starkforge/idealmod.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace starkforge::idealmod {

using fields::FieldPtr;
using fields::ideal_from_generators;
using fields::ideal_inverse;
using fields::ideal_mul;
using fields::ideal_principal;
using fields::ideal_ring;
using fields::principal_generator;
using fields::short_vectors;
using fields::sign_pattern;
using fields::totally_positive;
using nt::QMat;

namespace {

// write an element of K as (u, v) in F + F*g, g = rel_gen
std::pair<FieldElem, FieldElem> split_over_F(const CMField& K, const FieldElem& x) {
    long n2 = K.K->degree(), n1 = K.F.degree();
    QMat S(n2, 2 * n1);
    FieldElem g = K.rel_gen;
    for (long j = 0; j < n1; ++j) {
        std::vector<Rat> c(n1, Rat(0));
        c[j] = 1;
        FieldElem ej = K.from_F(FieldElem{K.F.F, c});
        FieldElem gej = ej * g;
        for (long r = 0; r < n2; ++r) {
            S.at(r, j) = ej.c[r];
            S.at(r, n1 + j) = gej.c[r];
        }
    }
    auto sol = nt::solve(S, x.c);
    if (!sol) throw Error("split_over_F: element outside F + F*g");
    std::vector<Rat> u(sol->begin(), sol->begin() + n1);
    std::vector<Rat> v(sol->begin() + n1, sol->end());
    return {FieldElem{K.F.F, std::move(u)}, FieldElem{K.F.F, std::move(v)}};
}

// nearest-element division in a norm-euclidean real field: q with
// N(a - q b) < N(b); remainder returned alongside
std::pair<FieldElem, FieldElem> euclid_divmod(const TotallyRealField& F,
                                              const FieldElem& a, const FieldElem& b) {
    FieldElem quot = a * F.F->inv(b);
    std::vector<Rat> qc(quot.c.size());
    for (size_t i = 0; i < quot.c.size(); ++i) {
        // round to nearest integer
        Int num = quot.c[i].get_num(), den = quot.c[i].get_den();
        Int r;
        Int top = 2 * num + den, bot = 2 * den;
        mpz_fdiv_q(r.get_mpz_t(), top.get_mpz_t(), bot.get_mpz_t());
        qc[i] = Rat(r);
    }
    FieldElem q = F.F->from_coords(qc);
    FieldElem rem = a - q * b;
    return {q, rem};
}

Rat abs_norm(const FieldPtr& K, const FieldElem& x) {
    Rat n = K->norm(x);
    if (n < 0) n = -n;
    return n;
}

} // namespace

FieldElem ModulePresentation::w_element() const {
    return omega1 * cm->K->inv(omega2);
}

std::vector<BigComplex> ModulePresentation::cm_point(long prec) const {
    FieldElem w = w_element();
    std::vector<BigComplex> out;
    for (int idx : cm->cm_type) out.push_back(cm->K->embed(w, idx, prec));
    return out;
}

Ideal ModulePresentation::reassemble() const {
    std::vector<FieldElem> gens;
    for (long i = 0; i < cm->F.degree(); ++i) {
        FieldElem e = cm->from_F(b_ideal.element_from_row(i));
        gens.push_back(e * omega1);
    }
    for (long i = 0; i < cm->F.degree(); ++i) {
        std::vector<Rat> c(cm->F.degree(), Rat(0));
        c[i] = 1;
        gens.push_back(cm->from_F(FieldElem{cm->F.F, c}) * omega2);
    }
    return fields::z_span(cm->K, gens);
}

ModulePresentation present_as_of_module(const CMField& K, const Ideal& a) {
    long n2 = K.K->degree();
    // rows (u_i, v_i) over F for each Z-basis vector of a
    std::vector<std::pair<FieldElem, FieldElem>> rows;
    for (long i = 0; i < n2; ++i) rows.push_back(split_over_F(K, a.element_from_row(i)));

    const TotallyRealField& F = K.F;
    auto nonzero = [&](const FieldElem& x) { return !x.is_zero(); };

    // euclidean elimination on the v column
    while (true) {
        long piv = -1;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (!nonzero(rows[i].second)) continue;
            if (piv < 0 || abs_norm(F.F, rows[i].second) < abs_norm(F.F, rows[piv].second))
                piv = static_cast<long>(i);
        }
        if (piv < 0) throw DegenerateIdeal("present_as_of_module: module lies inside F");
        bool clean = true;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<long>(i) == piv || !nonzero(rows[i].second)) continue;
            auto [q, rem] = euclid_divmod(F, rows[i].second, rows[piv].second);
            rows[i] = {rows[i].first - q * rows[piv].first, rem};
            if (nonzero(rows[i].second)) {
                if (!(abs_norm(F.F, rem) < abs_norm(F.F, rows[piv].second)))
                    throw Error("present_as_of_module: euclidean division failed (field not norm-euclidean?)");
                clean = false;
            }
        }
        if (clean) {
            std::swap(rows[0], rows[static_cast<size_t>(piv)]);
            break;
        }
    }
    // euclidean gcd on the u column of the v = 0 rows
    FieldElem u2 = F.F->zero();
    for (size_t i = 1; i < rows.size(); ++i) {
        if (!nonzero(rows[i].first)) continue;
        if (u2.is_zero()) { u2 = rows[i].first; continue; }
        FieldElem x = rows[i].first;
        while (!x.is_zero()) {
            auto [q, rem] = euclid_divmod(F, u2, x);
            (void)q;
            u2 = x;
            x = rem;
        }
    }
    if (u2.is_zero()) throw DegenerateIdeal("present_as_of_module: rank deficient module");

    FieldElem g = K.rel_gen;
    ModulePresentation pres;
    pres.cm = &K;
    pres.a = a;
    pres.b_ideal = ideal_ring(F.F);
    // reduce u1 mod u2 for determinism
    auto [q1, u1r] = euclid_divmod(F, rows[0].first, u2);
    (void)q1;
    pres.omega1 = K.from_F(u1r) + K.from_F(rows[0].second) * g;
    pres.omega2 = K.from_F(u2);

    // sign normalization: all Im(w^{sigma_i}) > 0
    auto im_signs = [&]() {
        FieldElem w = pres.w_element();
        std::vector<int> s;
        for (int idx : K.cm_type) {
            BigReal im = K.K->embed(w, idx, 128).imag();
            if (abs(im) < mpk::exp2i(-96, 64))
                throw DegenerateIdeal("present_as_of_module: CM point on the real locus");
            s.push_back(im.sign());
        }
        return s;
    };
    std::vector<int> s = im_signs();
    bool all_pos = std::all_of(s.begin(), s.end(), [](int v) { return v > 0; });
    if (!all_pos) {
        if (auto u = F.unit_with_signs(s)) {
            // Im((u w)^{sigma}) = u^{sigma} Im(w^{sigma}) > 0
            pres.omega1 = K.from_F(*u) * pres.omega1;
        } else {
            std::vector<int> sneg;
            for (int v : s) sneg.push_back(-v);
            auto u2v = F.unit_with_signs(sneg);
            if (!u2v) throw DegenerateIdeal("present_as_of_module: no unit fixes the CM signs");
            std::swap(pres.omega1, pres.omega2);
            pres.omega1 = K.from_F(*u2v) * pres.omega1;
            // after swapping, w -> 1/w; Im(1/w) has the opposite sign of Im(w)
        }
        s = im_signs();
        if (!std::all_of(s.begin(), s.end(), [](int v) { return v > 0; }))
            throw Error("present_as_of_module: sign normalization failed");
    }
    // make the first embedding of omega2 positive when omega2 is in F
    {
        auto sp = sign_pattern(K.to_F(pres.omega2));
        if (sp[0] < 0) {
            pres.omega1 = -pres.omega1;
            pres.omega2 = -pres.omega2;
        }
    }
    if (!(pres.reassemble() == a))
        throw Error("present_as_of_module: reassembled lattice differs from the input");
    return pres;
}

bool is_real_ideal(const CMField& K, const Ideal& a) {
    // real = extended from an ideal of F; conjugation-stability alone also
    // holds at ramified primes, which are imaginary (p p^rho principal)
    if (!(K.conj_ideal(a) == a)) return false;
    Ideal aF = K.ideal_to_F(a);
    return K.ideal_from_F(aF) == a;
}

bool is_imaginary_ideal(const CMField& K, const Ideal& a) {
    Ideal p = ideal_mul(a, K.conj_ideal(a));
    Ideal pf = K.ideal_to_F(p);
    Ideal pf_int{pf.K, pf.basis, nt::Int(1)};
    auto gen = principal_generator(pf_int, K.F.fund_units);
    if (!gen.has_value()) return false;
    if (totally_positive(*gen)) return true;
    // a unit with the same sign pattern flips the generator totally positive
    return K.F.unit_with_signs(sign_pattern(*gen)).has_value();
}

IdealKind classify_ideal(const CMField& K, const Ideal& a) {
    if (is_real_ideal(K, a)) return IdealKind::Real;
    if (is_imaginary_ideal(K, a)) return IdealKind::Imaginary;
    return IdealKind::Mixed;
}

bool is_valid_polarization(const CMField& K, const FieldElem& zeta) {
    if (zeta.is_zero()) return false;
    if (!(K.conj_elem(zeta) == -zeta)) return false;
    for (int idx : K.cm_type) {
        if (!(K.K->embed(zeta, idx, 128).imag() > 0L)) return false;
    }
    // Riemann form integrality on O_K
    long n2 = K.K->degree();
    for (long i = 0; i < n2; ++i)
        for (long j = 0; j < n2; ++j) {
            std::vector<Rat> ci(n2, Rat(0)), cj(n2, Rat(0));
            ci[i] = 1;
            cj[j] = 1;
            FieldElem x{K.K, ci}, y{K.K, cj};
            Rat t = K.K->trace(zeta * x * K.conj_elem(y));
            if (t.get_den() != 1) return false;
        }
    return true;
}

FieldElem find_polarization(const CMField& K) {
    // bounded search in (1/2) d_K^{-1}: enumerate short vectors of the
    // codifferent lattice scaled by 1/2 and keep the smallest valid zeta
    Ideal codiff = ideal_inverse(fields::absolute_different(K.K));
    long n2 = K.K->degree();
    // lattice basis of (1/2)*codiff as field elements
    std::vector<FieldElem> basis;
    for (long i = 0; i < n2; ++i)
        basis.push_back(K.K->mul_int(codiff.element_from_row(i), Rat(1, 2)));
    // enumerate integer combinations within a growing box
    for (long box = 1; box <= 6; ++box) {
        FieldElem best = K.K->zero();
        BigReal best_q(0L, 96);
        std::vector<long> x(n2, 0);
        std::function<void(long)> rec = [&](long i) {
            if (i == n2) {
                FieldElem z = K.K->zero();
                for (long t = 0; t < n2; ++t)
                    if (x[t] != 0) z = z + K.K->mul_int(basis[t], Rat(x[t]));
                if (z.is_zero()) return;
                if (!is_valid_polarization(K, z)) return;
                BigReal q(0L, 96);
                for (long t = 0; t < n2; ++t) q += norm(K.K->embed(z, static_cast<int>(t), 96));
                if (best.is_zero() || q < best_q) {
                    best = z;
                    best_q = q;
                }
                return;
            }
            for (long v = -box; v <= box; ++v) {
                x[i] = v;
                rec(i + 1);
            }
        };
        rec(0);
        if (!best.is_zero()) return best;
    }
    throw InvalidPolarization("find_polarization: no valid zeta in the search box");
}

std::pair<Ideal, int> type_ideal(const CMField& K, const Ideal& a, const FieldElem& zeta) {
    if (!is_valid_polarization(K, zeta))
        throw InvalidPolarization("type_ideal: zeta fails the polarization conditions");
    Ideal J = ideal_mul(ideal_mul(ideal_principal(zeta), K.rel_different()),
                        ideal_mul(a, K.conj_ideal(a)));
    if (!(K.conj_ideal(J) == J)) throw Error("type_ideal: result is not conjugation-stable");
    Ideal tf = K.ideal_to_F(J);
    return {tf, K.F.class_of(tf)};
}

KahlerCoords kahler_coords(const TotallyRealField& F, const Ideal& a,
                           const std::vector<BigComplex>& w,
                           KahlerConvention conv, const PrecisionCtx& ctx) {
    if (!a.is_integral() || a.den != 1)
        throw NotIntegral("kahler_coords: ideal must be integral");
    long n = F.degree();
    auto d = nt::snf(a.basis, nullptr, nullptr);
    KahlerCoords out;
    for (const auto& x : d) out.divisors.push_back(x);
    std::sort(out.divisors.begin(), out.divisors.end());
    long prec = ctx.bits;
    BigReal scale(1, prec);
    if (conv == KahlerConvention::IndexOverDisc) {
        // paper normalization: prod t_i = N(a) / D_F
        BigReal df(F.disc, prec);
        scale = exp(log(df) * BigReal(-1, prec) / BigReal(n, prec));
    }
    for (long i = 0; i < n; ++i) {
        BigReal ti = BigReal(out.divisors[i], prec) * scale;
        out.t.push_back(ti);
        if (static_cast<long>(w.size()) == n) {
            BigReal x = w[i].real(), y = w[i].imag();
            out.s.emplace_back(ti * x / y, ti);
        }
    }
    return out;
}

std::vector<FieldElem> residues_mod(const TotallyRealField& F, const Ideal& I) {
    long n = F.degree();
    std::vector<FieldElem> out;
    std::vector<long> x(n, 0);
    std::function<void(long)> rec = [&](long i) {
        if (i == n) {
            std::vector<Rat> c(n);
            for (long t = 0; t < n; ++t) c[t] = Rat(x[t]);
            out.push_back(FieldElem{F.F, std::move(c)});
            return;
        }
        long d = I.basis.at(i, i).get_si();
        for (long v = 0; v < d; ++v) {
            x[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<MatrixRep> enumerate_matrix_reps(const TotallyRealField& F,
                                             const FieldElem& alpha) {
    if (!totally_positive(alpha))
        throw NotTotallyPositive("enumerate_matrix_reps: alpha must be totally positive");
    Ideal A = ideal_principal(alpha);
    Rat Nq = A.norm();
    long bound = static_cast<long>(mpz_get_d(Nq.get_num().get_mpz_t()) + 0.5);
    std::vector<MatrixRep> out;
    for (const auto& D : fields::ideals_of_norm_up_to(F.F, bound)) {
        // need (d) | (alpha) with a generator d; a = alpha / d
        if (!ideal_mul(A, ideal_inverse(D)).is_integral()) continue;
        auto dgen = principal_generator(D, F.fund_units);
        if (!dgen) continue; // non-principal divisors carry no representative
        FieldElem d = *dgen;
        FieldElem a = alpha * F.F->inv(d);
        // canonical orientation: totally positive pair when available
        if (!totally_positive(d)) {
            auto u = F.unit_with_signs(sign_pattern(d));
            if (u) d = *u * d, a = alpha * F.F->inv(d);
        }
        for (const auto& b : residues_mod(F, D)) out.push_back({a, b, d});
    }
    return out;
}

GenerationReport verify_classgroup_generation(const CMField& K) {
    const auto& G = K.cls;
    long h = G.h();
    GenerationReport rep;
    rep.decomposition.assign(h, {-1, -1});
    std::vector<bool> is_real(h, false), is_imag(h, false);
    is_real[0] = is_imag[0] = true;

    // scan small ideals for real / imaginary representatives of classes
    double dd = std::abs(mpz_get_d(K.K->disc().get_mpz_t()));
    long bound = static_cast<long>(std::sqrt(std::sqrt(dd)) * 4) + 8;
    for (const auto& I : fields::ideals_of_norm_up_to(K.K, bound)) {
        bool re = is_real_ideal(K, I), im = is_imaginary_ideal(K, I);
        if (!re && !im) continue;
        int c = K.class_of(I);
        if (re) is_real[c] = true;
        if (im) is_imag[c] = true;
    }
    for (int c = 0; c < h; ++c) {
        if (is_real[c]) rep.real_classes.push_back(c);
        if (is_imag[c]) rep.imaginary_classes.push_back(c);
    }
    for (int c = 0; c < h; ++c) {
        bool found = false;
        for (int r : rep.real_classes) {
            for (int i : rep.imaginary_classes) {
                if (G.compose(r, i) == c) {
                    rep.decomposition[c] = {r, i};
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        if (!found) rep.generated = false;
    }
    return rep;
}

} // namespace starkforge::idealmod
