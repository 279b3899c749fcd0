#include "starkforge/borlift.hpp"

#include "starkforge/lfun.hpp"
#include "starkforge/mpfun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace starkforge::borlift {

using eisen::sigma_s_chi;
using fields::ideal_inverse;
using fields::ideal_mul;
using fields::ideal_principal;
using fields::ideal_ring;
using mpk::const_pi;

namespace {

// integer points of a positive definite quadratic form below a bound
// (double-precision Cholesky box, exact filtering by the caller)
std::vector<std::vector<long>> points_below(const std::vector<std::vector<double>>& gram,
                                            double bound) {
    long n = static_cast<long>(gram.size());
    std::vector<std::vector<double>> q = gram;
    for (long i = 0; i < n; ++i) {
        for (long j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (long k = i + 1; k < n; ++k)
            for (long l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    double B = bound * (1 + 1e-9) + 1e-9;
    std::vector<std::vector<long>> out;
    std::vector<long> x(n, 0);
    std::vector<double> partial(n + 1, 0.0);
    std::function<void(long)> rec = [&](long i) {
        if (i < 0) {
            out.push_back(x);
            return;
        }
        double ci = 0;
        for (long j = i + 1; j < n; ++j) ci += q[i][j] * x[j];
        double room = B - partial[i + 1];
        if (room < 0) return;
        double half = std::sqrt(room / q[i][i]);
        long lo = static_cast<long>(std::ceil(-ci - half - 1e-12));
        long hi = static_cast<long>(std::floor(-ci + half + 1e-12));
        for (long v = lo; v <= hi; ++v) {
            x[i] = v;
            double d2 = (v + ci);
            partial[i] = partial[i + 1] + q[i][i] * d2 * d2;
            rec(i - 1);
        }
        x[i] = 0;
    };
    rec(n - 1);
    return out;
}

struct KernelGeometry {
    // per embedding: a-vector coefficients (on x1, x2, x3) with Qp = (a.x)^2
    std::vector<std::array<double, 3>> avec_d;
    std::vector<std::array<BigReal, 3>> avec;
};

KernelGeometry datum_from_w(const std::vector<BigComplex>& w, long prec, bool dual) {
    KernelGeometry g;
    for (const auto& wi : w) {
        BigReal x = wi.real(), y = wi.imag();
        BigReal n2 = norm(wi);
        std::array<BigReal, 3> a{1L / (2L * y), -x / y, n2 / (2L * y)};
        if (dual) {
            // a' = J^{-1} a = (2 a3, -a2, 2 a1)
            a = {n2 / y, x / y, 1L / y};
        }
        g.avec.push_back(a);
        g.avec_d.push_back({a[0].to_double(), a[1].to_double(), a[2].to_double()});
    }
    return g;
}

BigComplex kernel_sum(const TotallyRealField& F, const std::vector<Ideal>& slots,
                      const std::vector<BigComplex>& w, const std::vector<BigComplex>& tau,
                      const PrecisionCtx& ctx, bool dual_datum, bool half_index) {
    long n = F.degree();
    long prec = ctx.bits + 32;
    if (slots.size() != 3 || static_cast<long>(w.size()) != n ||
        static_cast<long>(tau.size()) != n)
        throw DomainError("siegel_kernel: shape mismatch");
    KernelGeometry geo = datum_from_w(w, prec, dual_datum);

    // slot basis elements and embeddings
    std::vector<std::vector<FieldElem>> rows(3);
    std::vector<std::vector<std::vector<double>>> emb(3); // [slot][row][emb]
    for (int s = 0; s < 3; ++s) {
        for (long i = 0; i < n; ++i) {
            FieldElem e = slots[s].element_from_row(i);
            rows[s].push_back(e);
            std::vector<double> ee;
            for (long j = 0; j < n; ++j)
                ee.push_back(F.F->embed(e, static_cast<int>(j), 64).real().to_double());
            emb[s].push_back(ee);
        }
    }
    // majorant M(x) = sum_i y_i (2 Qp_i - Q_i): positive definite in the 3n coords
    auto xi_at = [&](const std::vector<long>& c, int slot, long j) {
        double v = 0;
        for (long i = 0; i < n; ++i) v += c[slot * n + i] * emb[slot][i][j];
        return v;
    };
    std::vector<std::vector<double>> gram(3 * n, std::vector<double>(3 * n, 0.0));
    for (long r = 0; r < 3 * n; ++r)
        for (long c = 0; c < 3 * n; ++c) {
            // assemble via polarization of M on basis vectors
            std::vector<long> er(3 * n, 0), ec(3 * n, 0);
            er[r] = 1;
            ec[c] = 1;
            double s = 0;
            for (long j = 0; j < n; ++j) {
                double y = w[j].imag().to_double();
                auto q1r = xi_at(er, 0, j), q2r = xi_at(er, 1, j), q3r = xi_at(er, 2, j);
                auto q1c = xi_at(ec, 0, j), q2c = xi_at(ec, 1, j), q3c = xi_at(ec, 2, j);
                double br = geo.avec_d[j][0] * q1r + geo.avec_d[j][1] * q2r + geo.avec_d[j][2] * q3r;
                double bc = geo.avec_d[j][0] * q1c + geo.avec_d[j][1] * q2c + geo.avec_d[j][2] * q3c;
                double Qrc = (q1r * q3c + q3r * q1c) / 2 - q2r * q2c;
                s += y * (2 * br * bc - Qrc);
            }
            gram[r][c] = s;
        }
    double ymin = 1e300;
    for (const auto& ti : tau) ymin = std::min(ymin, ti.imag().to_double());
    // decay e^{-2 pi y_tau M(x)} (e^{-pi ...} in the half-index convention);
    // the gram already carries the w-side y weights
    double scale = half_index ? 3.14159265358979 : 2 * 3.14159265358979;
    double need = (ctx.bits + 16) * 0.6931471805599453 / (scale * ymin);
    auto pts = points_below(gram, need);

    BigComplex acc(0, 0, prec);
    BigReal twopi = 2L * const_pi(prec);
    // deterministic order
    std::sort(pts.begin(), pts.end());
    for (const auto& c : pts) {
        BigComplex term(0, 0, prec); // log-accumulate exponent
        BigComplex expo(0, 0, prec);
        for (long j = 0; j < n; ++j) {
            // exact coordinates per slot
            BigReal q1(0L, prec), q2(0L, prec), q3(0L, prec);
            for (long i = 0; i < n; ++i) {
                if (c[i] != 0) q1 += BigReal(c[i], prec) * F.F->embed(rows[0][i], static_cast<int>(j), prec).real();
                if (c[n + i] != 0) q2 += BigReal(c[n + i], prec) * F.F->embed(rows[1][i], static_cast<int>(j), prec).real();
                if (c[2 * n + i] != 0) q3 += BigReal(c[2 * n + i], prec) * F.F->embed(rows[2][i], static_cast<int>(j), prec).real();
            }
            BigReal B = geo.avec[j][0] * q1 + geo.avec[j][1] * q2 + geo.avec[j][2] * q3;
            BigReal Qp = B * B;
            BigReal Q = q1 * q3 - q2 * q2;
            BigReal Qm = Q - Qp;
            BigComplex t = tau[j];
            BigComplex contrib = t * BigComplex(Qp) + conj(t) * BigComplex(Qm);
            if (half_index) contrib = contrib / 2L;
            expo += mul_i(contrib) * twopi;
        }
        acc += exp(expo);
        (void)term;
    }
    return acc;
}

} // namespace

BigComplex siegel_kernel(const TotallyRealField& F, const std::vector<Ideal>& slots,
                         const std::vector<BigComplex>& w,
                         const std::vector<BigComplex>& tau, const PrecisionCtx& ctx,
                         bool half_index, bool dual_datum) {
    return kernel_sum(F, slots, w, tau, ctx, dual_datum, half_index);
}

JacobiTheta jacobi_type_theta(const TotallyRealField& F, const Ideal& a,
                              const std::vector<BigComplex>& w, long table_limit,
                              const PrecisionCtx& ctx) {
    long n = F.degree();
    long prec = ctx.bits + 32;
    double need = (ctx.bits + 16) * 0.6931471805599453 / (2 * 3.14159265358979);
    // gram below carries the y weights: decay e^{-2 pi sum_j y_j (x_j)^2}
    std::vector<std::vector<double>> gram(n, std::vector<double>(n, 0.0));
    std::vector<FieldElem> rows;
    for (long i = 0; i < n; ++i) rows.push_back(a.element_from_row(i));
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) {
            double s = 0;
            for (long j = 0; j < n; ++j) {
                double er = F.F->embed(rows[r], static_cast<int>(j), 64).real().to_double();
                double ec = F.F->embed(rows[c], static_cast<int>(j), 64).real().to_double();
                s += w[j].imag().to_double() * er * ec;
            }
            gram[r][c] = s;
        }
    auto pts = points_below(gram, need);
    std::sort(pts.begin(), pts.end());
    BigComplex acc(0, 0, prec);
    BigReal twopi = 2L * const_pi(prec);
    std::vector<std::pair<FieldElem, long>> table;
    for (const auto& c : pts) {
        FieldElem x = F.F->zero();
        for (long i = 0; i < n; ++i)
            if (c[i] != 0) x = x + F.F->mul_int(rows[i], Rat(c[i]));
        FieldElem x2 = x * x;
        BigComplex expo(0, 0, prec);
        for (long j = 0; j < n; ++j) {
            BigReal v = F.F->embed(x2, static_cast<int>(j), prec).real();
            expo += mul_i(w[j] * BigComplex(v)) * twopi;
        }
        acc += exp(expo);
        if (!x.is_zero()) {
            Rat nn = F.F->norm(x2);
            if (nn <= table_limit) {
                bool found = false;
                for (auto& [e, m] : table)
                    if (e == x2) {
                        ++m;
                        found = true;
                        break;
                    }
                if (!found) table.push_back({x2, 1});
            }
        }
    }
    std::sort(table.begin(), table.end(), [&](const auto& p1, const auto& p2) {
        return F.F->norm(p1.first) < F.F->norm(p2.first);
    });
    return {acc, table};
}

LiftValue lift_closed_form(const TotallyRealField& F, const Ideal& a,
                           const std::vector<BigComplex>& w, const PrecisionCtx& ctx) {
    long n = F.degree();
    long prec = ctx.bits + 48;
    BigReal pi = const_pi(prec);
    std::vector<double> y;
    double ymin = 1e300;
    BigReal prod_y(1, prec);
    for (const auto& wi : w) {
        y.push_back(wi.imag().to_double());
        ymin = std::min(ymin, y.back());
        prod_y *= wi.imag();
    }
    BigReal NA(a.norm(), prec);
    BigReal DF(F.disc, prec);
    BigReal RF = F.regulator(prec);
    // constant term: (D_F N(a) / 2^{n-2} pi^n h_F R_F) * h_F zeta_{F,[ad]}(2) * prod y
    // (class-restricted zeta = full zeta for h_F = 1)
    if (F.cls.h() != 1)
        throw fields::UnsupportedDegree("lift_closed_form: base class number 1 only");
    BigReal ct_pref = DF * NA / (mpk::exp2i(n - 2, prec) * pow(pi, n) * RF);
    BigReal value = ct_pref * lfun::zeta_F_at_2(F, ctx.with_guard(16)) * prod_y;

    // pair sum: C sum_{lambda in (a\0)/U^2} sum_{alpha in d^{-1}a^{-1}\0}
    //   c(lambda^2/2) / |N(alpha)| prod_j e(2 pi i (alpha lambda)_j x_j) e^{-2pi |(alpha lambda)_j)| y_j}
    // with c = 2 (representation numbers of the quadratic theta) and
    // C = 2^{1-2n} / (h_F R_F sqrt(D_F))
    double T = 4;
    {
        // reuse the h-style bound: counts * 16 ln^2 * e^{-2 pi T}
        double tol_log2 = std::log2(ctx.tail_tol.to_double()) - 2;
        while (true) {
            double count = std::pow(2 * T / ymin + 2, 2 * n) * 8;
            double coef = 16 * std::pow(std::log(std::pow(T / ymin, n) + 3) + 4, 2);
            if (std::log2(count) + std::log2(coef) - 2 * 3.14159265358979 * T / 0.6931471805599453 <= tol_log2)
                break;
            T += 2;
            if (T > 4000) throw ConvergenceError("lift_closed_form: tail bound unreachable");
        }
    }

    Ideal alat = ideal_mul(ideal_inverse(F.different), ideal_inverse(a));
    // lambda representatives modulo U_F^2 = <eps0>: restrict the log-ratio to
    // the fundamental strip; all sign patterns enumerated
    if (n == 2 && !F.unit_norm_minus_one)
        throw fields::UnsupportedDegree(
            "lift_closed_form: U_F^2 = <eps0> requires a norm -1 fundamental unit");
    FieldElem eps0 = F.totally_positive_unit();
    double le = 0;
    if (n == 2)
        le = std::log(std::abs(F.F->embed(eps0, 0, 64).real().to_double() /
                               F.F->embed(eps0, 1, 64).real().to_double()));

    std::vector<FieldElem> lrows, arows;
    for (long i = 0; i < n; ++i) {
        lrows.push_back(a.element_from_row(i));
        arows.push_back(alat.element_from_row(i));
    }
    auto embd = [&](const std::vector<FieldElem>& rows, const std::vector<long>& c, long j) {
        double v = 0;
        for (long i = 0; i < n; ++i)
            if (c[i]) v += c[i] * F.F->embed(rows[i], static_cast<int>(j), 64).real().to_double();
        return v;
    };

    struct Pair {
        double key;
        std::vector<long> lc, ac;
    };
    std::vector<Pair> pairs;
    // enumerate lambda with min_j |lambda_j| bounded: |(alpha lambda)_j| y_j <= T
    // needs |lambda_j| <= T / (y_j * |alpha_j|_min); use a growing box and the
    // fundamental-strip filter
    double lbox = T / ymin * 3 + 8;
    std::vector<long> lc(n, 0);
    std::function<void(long)> recl = [&](long i) {
        if (i == n) {
            bool zero = true;
            for (long t = 0; t < n; ++t) zero = zero && lc[t] == 0;
            if (zero) return;
            std::vector<double> lj(n);
            for (long j = 0; j < n; ++j) lj[j] = embd(lrows, lc, j);
            for (long j = 0; j < n; ++j)
                if (lj[j] == 0) return;
            if (n == 2) {
                double r = std::log(std::abs(lj[0] / lj[1]));
                if (!(r >= -1e-12 && r < le - 1e-12)) return; // strip [0, log(e1/e2))
            }
            // alpha box for this lambda
            std::vector<long> ac(n, 0);
            std::function<void(long)> reca = [&](long k) {
                if (k == n) {
                    bool az = true;
                    for (long t = 0; t < n; ++t) az = az && ac[t] == 0;
                    if (az) return;
                    double key = 0;
                    for (long j = 0; j < n; ++j)
                        key += std::abs(embd(arows, ac, j) * lj[j]) * y[j];
                    if (key > T) return;
                    pairs.push_back({key, lc, ac});
                    return;
                }
                long abox = 0;
                {
                    double m = 0;
                    for (long j = 0; j < n; ++j) m = std::max(m, T / (std::abs(lj[j]) * y[j]));
                    // coefficient bound via the inverse embedding row norms
                    abox = static_cast<long>(m * 4) + 2;
                }
                for (long v = -abox; v <= abox; ++v) {
                    ac[k] = v;
                    reca(k + 1);
                }
                ac[k] = 0;
            };
            reca(0);
            return;
        }
        for (long v = static_cast<long>(-lbox); v <= static_cast<long>(lbox); ++v) {
            lc[i] = v;
            recl(i + 1);
        }
        lc[i] = 0;
    };
    recl(0);
    std::sort(pairs.begin(), pairs.end(), [](const Pair& p1, const Pair& p2) {
        if (p1.key != p2.key) return p1.key < p2.key;
        if (p1.lc != p2.lc) return p1.lc < p2.lc;
        return p1.ac < p2.ac;
    });

    BigReal psum(0L, prec);
    for (size_t t = pairs.size(); t-- > 0;) {
        const auto& pr = pairs[t];
        FieldElem lam = F.F->zero(), alp = F.F->zero();
        for (long i = 0; i < n; ++i) {
            if (pr.lc[i]) lam = lam + F.F->mul_int(lrows[i], Rat(pr.lc[i]));
            if (pr.ac[i]) alp = alp + F.F->mul_int(arows[i], Rat(pr.ac[i]));
        }
        FieldElem prod = lam * alp;
        BigReal Nalpha = abs(BigReal(F.F->norm(alp), prec));
        BigReal phase(0L, prec), decay(0L, prec);
        for (long j = 0; j < n; ++j) {
            BigReal pj = F.F->embed(prod, static_cast<int>(j), prec).real();
            phase += pj * w[j].real();
            decay += abs(pj) * w[j].imag();
        }
        // c(lambda^2/2) = 2: x and -x represent the same square
        psum += 2L * cos(2L * pi * phase) * exp(-2L * pi * decay) / Nalpha;
    }
    BigReal C = mpk::exp2i(1 - 2 * n, prec) / (RF * sqrt(DF));
    value += C * psum;
    return {value, T, static_cast<long>(pairs.size())};
}

std::pair<BigComplex, BigComplex> divisor_sum_bridge(const TotallyRealField& F,
                                                     const FieldElem& beta,
                                                     const Ideal& a,
                                                     const PrecisionCtx& ctx) {
    long prec = ctx.bits + 16;
    Ideal arg = ideal_mul(ideal_mul(ideal_principal(beta), F.different), ideal_inverse(a));
    if (!arg.is_integral() || arg.den != 1)
        throw DomainError("divisor_sum_bridge: (beta) d a^{-1} must be integral");
    // side 1: sum_chi chi(a) sigma_{1,chi}(arg)
    BigComplex side1(0, 0, prec);
    int a_cls = F.class_of(a);
    for (int chi = 0; chi < F.cls.h(); ++chi)
        side1 += F.cls.chi_value(chi, a_cls, prec) * sigma_s_chi(F, arg, 1, chi, ctx);
    // side 2: h_F * sum over divisors of arg in the class of a^{-1} of N(c)
    BigComplex side2(0, 0, prec);
    {
        // divisor enumeration via the factorization, as in sigma_divisor_form
        BigComplex acc(0, 0, prec);
        std::vector<std::pair<Ideal, int>> pf;
        for (const auto& [p, e] : nt::factor(arg.norm().get_num())) {
            (void)e;
            for (const auto& P : fields::primes_above(F.F, F.disc, p.get_si())) {
                // valuation
                int v = 0;
                Ideal cur = arg;
                Ideal pinv = ideal_inverse(P);
                while (true) {
                    Ideal nxt = ideal_mul(cur, pinv);
                    if (!nxt.is_integral() || nxt.den != 1) break;
                    cur = nxt;
                    ++v;
                }
                if (v > 0) pf.push_back({P, v});
            }
        }
        int want = F.cls.inv[a_cls];
        std::function<void(size_t, Ideal)> rec = [&](size_t i, Ideal curr) {
            if (i == pf.size()) {
                if (F.class_of(curr) == want)
                    acc += BigComplex(BigReal(curr.norm().get_num(), prec));
                return;
            }
            Ideal step = curr;
            for (int k = 0; k <= pf[i].second; ++k) {
                rec(i + 1, step);
                if (k < pf[i].second) step = ideal_mul(step, pf[i].first);
            }
        };
        rec(0, ideal_ring(F.F));
        side2 = BigComplex(BigReal(F.cls.h(), prec)) * acc;
    }
    return {side1, side2};
}

SingularityReport singularity_classifier(long s, const PrecisionCtx& ctx) {
    if (s > 1) throw DomainError("singularity_classifier: s <= 1");
    long prec = ctx.bits + 32;
    PrecisionCtx ictx(ctx.bits + 32, ctx.tail_tol);
    SingularityReport rep;
    rep.s = s;
    rep.log_type = s <= 0;
    auto f = [&](double r) {
        BigReal rr(r, prec);
        BigReal g = mpk::incomplete_gamma_upper(BigComplex(s, 0, prec), rr * rr, ictx).real();
        return exp(BigReal(-2.0 * s, prec) * log(abs(rr))) * g;
    };
    std::vector<double> rs{1e-3, 1e-4, 1e-5, 1e-6};
    if (s == 0) {
        // least squares of f(r) against -log(r^2)
        BigReal sx(0L, prec), sy(0L, prec), sxx(0L, prec), sxy(0L, prec);
        for (double r : rs) {
            BigReal xv = -log(BigReal(r * r, prec));
            BigReal yv = f(r);
            sx += xv;
            sy += yv;
            sxx += xv * xv;
            sxy += xv * yv;
        }
        BigReal m(static_cast<long>(rs.size()), prec);
        rep.fitted_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    } else if (s < 0) {
        // f(r) ~ r^{-2s} * [Gamma(s, r^2) ~ -r^{2s}/s ... dominant - (r^2)^s/s]:
        // |r|^{-2s} Gamma(s, r^2) -> -1/s as r -> 0; fit against the constant
        BigReal acc(0L, prec);
        for (double r : rs) acc += f(r) * BigReal(-s, prec);
        rep.fitted_slope = acc / BigReal(static_cast<long>(rs.size()), prec);
    } else { // s = 1: power law |r|^{-2} Gamma(1, r^2) = r^{-2} e^{-r^2}
        BigReal acc(0L, prec);
        for (double r : rs) acc += f(r) * BigReal(r * r, prec);
        rep.fitted_slope = acc / BigReal(static_cast<long>(rs.size()), prec);
    }
    rep.large_r_value = f(3.0);
    return rep;
}

} // namespace starkforge::borlift
