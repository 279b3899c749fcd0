#include "starkforge/eisen.hpp"

#include "starkforge/lfun.hpp"
#include "starkforge/mpfun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <thread>

namespace starkforge::eisen {

using fields::ideal_inverse;
using fields::ideal_mul;
using fields::ideal_principal;
using fields::ideal_ring;
using fields::primes_above;
using mpk::const_pi;
using nt::factor;

namespace {

// valuation of an integral ideal at a prime ideal
int valuation(const Ideal& x, const Ideal& p) {
    Ideal cur = x;
    Ideal pinv = ideal_inverse(p);
    int v = 0;
    while (true) {
        Ideal nxt = ideal_mul(cur, pinv);
        if (!nxt.is_integral() || nxt.den != 1) return v;
        cur = nxt;
        ++v;
        if (v > 4096) throw Error("valuation runaway");
    }
}

} // namespace

BigComplex sigma_s_chi(const TotallyRealField& F, const Ideal& x, long s, int chi,
                       const PrecisionCtx& ctx) {
    static thread_local std::map<std::pair<const void*, long>, std::vector<Ideal>> prime_cache;
    long prec = ctx.bits + 16;
    if (!x.is_integral() || x.den != 1) return BigComplex(0, 0, prec);
    Rat Nq = x.norm();
    Int N = Nq.get_num();
    BigComplex acc(1, 0, prec);
    for (const auto& [p, e] : factor(N)) {
        (void)e;
        auto key = std::make_pair(static_cast<const void*>(F.F.get()), p.get_si());
        auto it = prime_cache.find(key);
        if (it == prime_cache.end())
            it = prime_cache.emplace(key, primes_above(F.F, F.disc, p.get_si())).first;
        for (const auto& P : it->second) {
            int v = valuation(x, P);
            if (v == 0) continue;
            // geometric sum 1 + t + ... + t^v with t = chi([P]) N(P)^s
            BigComplex t(pow(BigReal(P.norm().get_num(), prec), s));
            if (chi != 0) t = F.cls.chi_value(chi, F.class_of(P), prec) * t;
            BigComplex g(1, 0, prec), tp(1, 0, prec);
            for (int k = 0; k < v; ++k) {
                tp *= t;
                g += tp;
            }
            acc *= g;
        }
    }
    return acc;
}

BigComplex sigma_divisor_form(const TotallyRealField& F, const Ideal& x, long s, int chi,
                              const PrecisionCtx& ctx) {
    long prec = ctx.bits + 16;
    if (!x.is_integral() || x.den != 1) return BigComplex(0, 0, prec);
    // enumerate divisors from the prime factorization
    Rat Nq = x.norm();
    Int N = Nq.get_num();
    std::vector<std::pair<Ideal, int>> pf; // (prime, valuation)
    for (const auto& [p, e] : factor(N)) {
        (void)e;
        for (const auto& P : primes_above(F.F, F.disc, p.get_si())) {
            int v = valuation(x, P);
            if (v > 0) pf.push_back({P, v});
        }
    }
    BigComplex acc(0, 0, prec);
    std::function<void(size_t, Ideal)> rec = [&](size_t i, Ideal cur) {
        if (i == pf.size()) {
            acc += F.cls.chi_value(chi, F.class_of(cur), prec) *
                   BigComplex(pow(BigReal(cur.norm().get_num(), prec), s));
            return;
        }
        Ideal step = cur;
        for (int k = 0; k <= pf[i].second; ++k) {
            rec(i + 1, step);
            if (k < pf[i].second) step = ideal_mul(step, pf[i].first);
        }
    };
    rec(0, ideal_ring(F.F));
    return acc;
}

namespace {

struct BTerm {
    double key;           // sum |b_j| y_j, the decay exponent
    std::vector<Rat> coords;
};

// enumerate nonzero b in the fractional ideal lattice with sum_j |b_j| y_j <= T
std::vector<BTerm> enumerate_b(const TotallyRealField& F, const Ideal& lat,
                               const std::vector<double>& y, double T) {
    long n = F.degree();
    // embeddings of basis rows / den
    std::vector<std::vector<double>> emb(n, std::vector<double>(n));
    for (long i = 0; i < n; ++i) {
        FieldElem e = lat.element_from_row(i);
        for (long j = 0; j < n; ++j)
            emb[i][j] = F.F->embed(e, static_cast<int>(j), 64).real().to_double();
    }
    // coefficient box: |c| <= bound via inverse of emb
    // b_j = sum_i c_i emb[i][j]; |b_j| <= T / y_j
    std::vector<std::vector<double>> inv(n, std::vector<double>(n));
    if (n == 1) {
        inv[0][0] = 1.0 / emb[0][0];
    } else {
        double det = emb[0][0] * emb[1][1] - emb[0][1] * emb[1][0];
        inv[0][0] = emb[1][1] / det;
        inv[0][1] = -emb[0][1] / det;
        inv[1][0] = -emb[1][0] / det;
        inv[1][1] = emb[0][0] / det;
    }
    std::vector<long> lo(n), hi(n);
    for (long i = 0; i < n; ++i) {
        double bound = 0;
        for (long j = 0; j < n; ++j) bound += std::abs(inv[j][i]) * (T / y[j]);
        lo[i] = static_cast<long>(-bound - 2);
        hi[i] = static_cast<long>(bound + 2);
    }
    std::vector<BTerm> out;
    std::vector<long> c(n, 0);
    std::function<void(long)> rec = [&](long i) {
        if (i == n) {
            bool zero = true;
            for (long t = 0; t < n; ++t) zero = zero && c[t] == 0;
            if (zero) return;
            double key = 0;
            for (long j = 0; j < n; ++j) {
                double bj = 0;
                for (long t = 0; t < n; ++t) bj += c[t] * emb[t][j];
                key += std::abs(bj) * y[j];
            }
            if (key > T) return;
            BTerm bt;
            bt.key = key;
            for (long t = 0; t < n; ++t) bt.coords.push_back(Rat(c[t]));
            out.push_back(std::move(bt));
            return;
        }
        for (long v = lo[i]; v <= hi[i]; ++v) {
            c[i] = v;
            rec(i + 1);
        }
        c[i] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end(), [](const BTerm& a, const BTerm& b) {
        if (a.key != b.key) return a.key < b.key;
        return a.coords < b.coords;
    });
    return out;
}

// truncation point: C_count(T) * C_coef(T) * e^{-2 pi T} <= tol with the
// documented generous coefficient bound sigma_1(I)/N(I) <= 16 (ln(N+3))^2
double choose_T(long n, double ymin, double tol_log2) {
    double T = 4;
    for (int it = 0; it < 200; ++it) {
        double count = std::pow(2 * T / ymin + 2, n) * 4;
        double coef = 16 * std::pow(std::log(std::pow(T / ymin, n) + 3) + 4, 2);
        double bound_log2 = (std::log2(count) + std::log2(coef)) - 2 * 3.14159265358979 * T / 0.6931471805599453;
        if (bound_log2 <= tol_log2) return T;
        T += 2;
    }
    throw ConvergenceError("h_chi_fourier: cannot reach tail tolerance");
}

} // namespace

HValue h_chi_fourier(const FourierParams& p, int chi, const PrecisionCtx& ctx) {
    const TotallyRealField& F = *p.F;
    long n = F.degree();
    long prec = ctx.bits + 48;
    if (static_cast<long>(p.w.size()) != n) throw DomainError("h_chi_fourier: bad CM point");
    if (F.cls.h() != 1 && chi != 0)
        throw fields::UnsupportedDegree("h_chi_fourier: nontrivial ray classes not supported");

    BigReal NA(p.a_ideal.norm(), prec);
    BigReal DF(F.disc, prec);
    BigReal RF = F.regulator(prec);
    BigReal pi = const_pi(prec);
    BigReal pref = DF * NA / (mpk::exp2i(n - 2, prec) * pow(pi, n) * BigReal(F.cls.h(), prec) * RF);

    // constant term: chi(d_F) L_F(2, chi^{-1}) prod Im(w_i)
    BigReal prod_y(1, prec);
    for (const auto& wi : p.w) prod_y *= wi.imag();
    // chi(d_F): trivial chi in the supported cases
    BigReal L2 = lfun::zeta_F_at_2(F, ctx.with_guard(16));
    BigReal value = pref * L2 * prod_y;

    // b-sum over the fractional ideal d^{-1} a
    Ideal lat = ideal_mul(ideal_inverse(F.different), p.a_ideal);
    std::vector<double> y;
    double ymin = 1e300;
    for (const auto& wi : p.w) {
        y.push_back(wi.imag().to_double());
        ymin = std::min(ymin, y.back());
    }
    double tol_log2 = log(ctx.tail_tol).to_double() / 0.6931471805599453 - 2;
    double T = choose_T(n, ymin, tol_log2);
    auto terms = enumerate_b(F, lat, y, T);

    // sigma argument: (b) d a^{-1}, integral for b in d^{-1} a
    Ideal da_inv = ideal_mul(F.different, ideal_inverse(p.a_ideal));
    long workers = std::max(1L, p.workers);
    std::vector<BigReal> vals(terms.size(), BigReal(0L, prec));
    auto compute_range = [&](size_t lo, size_t hi) {
        for (size_t t = lo; t < hi; ++t) {
            const auto& bt = terms[t];
            // b as a field element: coords in the lattice basis
            std::vector<Rat> c(n, Rat(0));
            for (long i = 0; i < n; ++i) {
                FieldElem row = lat.element_from_row(i);
                for (long j = 0; j < n; ++j) c[j] += bt.coords[i] * row.c[j];
            }
            FieldElem b{F.F, c};
            Ideal arg = ideal_mul(ideal_principal(b), da_inv);
            BigComplex sig = sigma_s_chi(F, arg, 1, chi, ctx);
            BigReal Nb = abs(BigReal(F.F->norm(b), prec));
            // exp(2 pi i sum_j b_j x_j) exp(-2 pi sum |b_j| y_j): real part
            BigReal phase(0L, prec), decay(0L, prec);
            for (long j = 0; j < n; ++j) {
                BigReal bj = F.F->embed(b, static_cast<int>(j), prec).real();
                phase += bj * p.w[j].real();
                decay += abs(bj) * p.w[j].imag();
            }
            BigReal re = cos(2L * pi * phase) * exp(-2L * pi * decay);
            BigReal im = sin(2L * pi * phase) * exp(-2L * pi * decay);
            // chi is real on our class groups; keep the real part of sigma * e(...)
            vals[t] = (sig.real() * re - sig.imag() * im) / Nb;
        }
    };
    if (workers == 1 || terms.size() < 64) {
        compute_range(0, terms.size());
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (terms.size() + workers - 1) / workers;
        for (long wk = 0; wk < workers; ++wk) {
            size_t lo = wk * chunk, hi = std::min(terms.size(), (wk + 1) * chunk);
            if (lo >= hi) break;
            pool.emplace_back(compute_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    // fixed reduction order: terms are pre-sorted by decay key
    BigReal bsum(0L, prec);
    for (size_t t = terms.size(); t-- > 0;) bsum += vals[t]; // smallest first
    BigReal dsqrt = exp(BigReal(-1.5, prec) * log(DF));
    value += pref * pow(pi, n) * dsqrt * bsum;

    HValue out{value, T, static_cast<long>(terms.size())};
    return out;
}

HValue h_total(const FourierParams& p, const PrecisionCtx& ctx) {
    const TotallyRealField& F = *p.F;
    if (F.cls.h() == 1) return h_chi_fourier(p, 0, ctx);
    throw fields::UnsupportedDegree("h_total: base fields with h_F > 1 are out of scope");
}

std::vector<BigComplex> moebius(const TotallyRealField& F, const FieldElem& a,
                                const FieldElem& b, const FieldElem& c,
                                const FieldElem& d, const std::vector<BigComplex>& w,
                                long prec) {
    std::vector<BigComplex> out;
    for (long i = 0; i < F.degree(); ++i) {
        BigComplex ai = F.F->embed(a, static_cast<int>(i), prec);
        BigComplex bi = F.F->embed(b, static_cast<int>(i), prec);
        BigComplex ci = F.F->embed(c, static_cast<int>(i), prec);
        BigComplex di = F.F->embed(d, static_cast<int>(i), prec);
        out.push_back((ai * w[i] + bi) / (ci * w[i] + di));
    }
    return out;
}

DeltaEntry delta_K(const CMField& K, int class_label, const PrecisionCtx& ctx,
                   long workers) {
    long prec = ctx.bits + 48;
    int inv_label = K.cls.inv[class_label];
    Ideal a1 = K.cls.reps[inv_label];
    auto pres = idealmod::present_as_of_module(K, a1);
    FourierParams p;
    p.F = &K.F;
    p.a_ideal = pres.b_ideal;
    p.w = pres.cm_point(prec);
    p.workers = workers;
    HValue h = h_total(p, ctx);
    BigReal delta = h.value;
    for (const auto& wi : p.w) delta -= log(wi.imag());
    delta -= log(BigReal(pres.b_ideal.norm(), prec));
    DeltaEntry e;
    e.class_label = class_label;
    e.delta = delta;
    e.type_ideal = pres.b_ideal;
    e.cm_point = p.w;
    e.method = "fourier";
    return e;
}

DeltaLedger delta_ledger(const CMField& K, const PrecisionCtx& ctx, long workers) {
    DeltaLedger led;
    for (int c = 0; c < K.cls.h(); ++c) led.entries.emplace(c, delta_K(K, c, ctx, workers));
    return led;
}

BigReal eisenstein_direct(const FourierParams& p, const BigReal& s, long cutoff,
                          const PrecisionCtx& ctx) {
    const TotallyRealField& F = *p.F;
    long n = F.degree();
    long prec = ctx.bits + 32;
    // orbit representatives of (c, d) in (a + O_F) x O_F under the diagonal
    // unit action: normalize the log-embedding vector of (c at c != 0, else d)
    // into the fundamental strip of the totally positive unit
    double loge = 0;
    if (n == 2)
        loge = std::abs(std::log(std::abs(
            F.F->embed(F.totally_positive_unit(), 0, 64).real().to_double())));
    auto canonical = [&](std::vector<Rat>& cc, std::vector<Rat>& dd) {
        if (n == 1) {
            // orbit under {+-1}: fix sign of the first nonzero
            FieldElem c{F.F, cc}, d{F.F, dd};
            bool flip = false;
            if (!c.is_zero()) flip = c.c[0] < 0;
            else flip = d.c[0] < 0;
            if (flip) {
                for (auto& x : cc) x = -x;
                for (auto& x : dd) x = -x;
            }
            return;
        }
        FieldElem c{F.F, cc}, d{F.F, dd};
        FieldElem xi = c.is_zero() ? d : c;
        // scale by eps0^k so that log|xi_1 / xi_2| lands in [0, 2 loge)
        double l1 = std::log(std::abs(F.F->embed(xi, 0, 96).real().to_double()));
        double l2 = std::log(std::abs(F.F->embed(xi, 1, 96).real().to_double()));
        long k = static_cast<long>(std::floor((l1 - l2) / (2 * loge)));
        FieldElem u = F.totally_positive_unit();
        FieldElem scale = F.F->one();
        if (k > 0) {
            FieldElem ui = F.F->inv(u);
            for (long t = 0; t < k; ++t) scale = scale * ui;
        } else {
            for (long t = 0; t < -k; ++t) scale = scale * u;
        }
        c = c * scale;
        d = d * scale;
        // sign normalization under -1
        bool flip = false;
        const FieldElem& probe = c.is_zero() ? d : c;
        for (const auto& x : probe.c) {
            if (x != 0) { flip = x < 0; break; }
        }
        if (flip) { c = -c; d = -d; }
        cc = c.c;
        dd = d.c;
    };

    // enumerate (c, d) with coefficient box |coeff| <= cutoff, canonical
    // representatives deduplicated
    std::set<std::vector<Rat>> seen;
    BigReal acc(0L, prec);
    std::vector<long> idx(2 * n, -cutoff);
    BigReal prod_y(1, prec);
    for (const auto& wi : p.w) prod_y *= wi.imag();
    std::function<void(long)> rec = [&](long i) {
        if (i == 2 * n) {
            std::vector<Rat> cc(n), dd(n);
            bool zero = true;
            for (long t = 0; t < n; ++t) {
                cc[t] = Rat(idx[t]);
                dd[t] = Rat(idx[n + t]);
                zero = zero && idx[t] == 0 && idx[n + t] == 0;
            }
            if (zero) return;
            canonical(cc, dd);
            std::vector<Rat> key = cc;
            key.insert(key.end(), dd.begin(), dd.end());
            if (!seen.insert(key).second) return;
            FieldElem c{F.F, cc}, d{F.F, dd};
            // c must lie in a_ideal
            if (!p.a_ideal.contains(c)) return;
            BigReal term(1, prec);
            for (long j = 0; j < n; ++j) {
                BigComplex cj = F.F->embed(c, static_cast<int>(j), prec);
                BigComplex dj = F.F->embed(d, static_cast<int>(j), prec);
                BigReal q = norm(cj * p.w[j] + dj);
                term *= pow(p.w[j].imag(), s) * exp(-s * log(q));
            }
            acc += term;
            return;
        }
        for (long v = -cutoff; v <= cutoff; ++v) {
            idx[i] = v;
            rec(i + 1);
        }
        idx[i] = 0;
    };
    rec(0);
    (void)prod_y;
    return acc;
}

} // namespace starkforge::eisen
