#include "doctest.h"

#include "starkforge/mpfun.hpp"
#include "starkforge/idealmod.hpp"
#include "starkforge/shintani.hpp"

#include <cmath>

using namespace starkforge;
using namespace starkforge::mpk;
using namespace starkforge::shintani;
namespace idealmod = starkforge::idealmod;
using fields::build_quadratic_real;
using fields::build_rational;
using nt::Rat;

namespace {
PrecisionCtx ctx128(128);
}

TEST_CASE("hurwitz zeta: classical values") {
    // zeta(2, 1) = pi^2/6
    BigComplex v = hurwitz_zeta(BigComplex(2, 0, 128), BigReal(1, 160), ctx128);
    BigReal want = const_pi(192) * const_pi(192) / 6L;
    CHECK(abs(v.real() - want).to_double() < 1e-35);
    CHECK(abs(v.imag()).to_double() < 1e-35);
    // zeta(0, x) = 1/2 - x
    for (double x : {0.25, 1.0, 2.5}) {
        BigComplex z = hurwitz_zeta(BigComplex(0, 0, 128), BigReal(x, 160), ctx128);
        CHECK(abs(z.real() - BigReal(0.5 - x, 160)).to_double() < 1e-35);
    }
    // zeta(-1, 1) = -1/12
    BigComplex zm = hurwitz_zeta(BigComplex(-1, 0, 128), BigReal(1, 160), ctx128);
    CHECK(abs(zm.real() + BigReal(1, 160) / 12L).to_double() < 1e-35);
    CHECK_THROWS_AS(hurwitz_zeta(BigComplex(1, 0, 128), BigReal(1, 160), ctx128), PoleError);
}

TEST_CASE("lerch: d/ds zeta(s,x) at 0 equals log(Gamma(x)/sqrt(2 pi))") {
    // anchor x = 1/2: log(Gamma(1/2)/sqrt(2pi)) = -log(2)/2
    BigComplex d = hurwitz_zeta_ds(BigComplex(0, 0, 128), BigReal(0.5, 160), ctx128);
    CHECK(abs(d.real() + const_log2(160) / 2L).to_double() < 1e-35);
    // ten random x in (0, 2): two-path agreement with Stirling log-Gamma
    nt::SplitMix64 rng(17);
    for (int t = 0; t < 10; ++t) {
        double x = 0.05 + 1.9 * rng.uniform();
        BigReal lhs = hurwitz_zeta_ds(BigComplex(0, 0, 128), BigReal(x, 160), ctx128).real();
        BigReal rhs = log_gamma(BigComplex(BigReal(x, 160)), ctx128).real() -
                      log(2L * const_pi(160)) / 2L;
        CHECK(abs(lhs - rhs).to_double() < 1e-20);
    }
}

TEST_CASE("shintani zeta: n=1 reduces to Hurwitz; telescoping recurrence at n=2") {
    // zeta_1(s, 1, x) = zeta(s, x)
    BigComplex a = shintani_zeta(BigComplex(2, 0, 128), {BigReal(1, 160)}, BigReal(1, 160), ctx128);
    CHECK(abs(a.real() - const_pi(192) * const_pi(192) / 6L).to_double() < 1e-34);
    // zeta_2(s,(w1,w2),x) - zeta_2(s,(w1,w2),x+w1) = zeta_1(s,w2,x)
    nt::SplitMix64 rng(4);
    for (int t = 0; t < 3; ++t) {
        BigReal w1(0.6 + rng.uniform(), 160), w2(0.4 + rng.uniform(), 160);
        BigReal x(0.3 + rng.uniform(), 160);
        BigComplex s(3, 0, 128);
        BigComplex lhs = shintani_zeta(s, {w1, w2}, x, ctx128) -
                         shintani_zeta(s, {w1, w2}, x + w1, ctx128);
        BigComplex rhs = shintani_zeta(s, {w2}, x, ctx128);
        CHECK(abs(lhs - rhs).to_double() < 1e-30);
    }
}

TEST_CASE("barnes log gamma: n=1 recovers factorials") {
    // log(Gamma_1(x)/rho_1) = log(Gamma(x)/sqrt(2pi)); at x = 1,2,3:
    // Gamma = 1, 1, 2
    std::vector<double> gams{1.0, 1.0, 2.0};
    for (int i = 0; i < 3; ++i) {
        BigReal lg = barnes_log_gamma(BigReal(i + 1.0, 160), {BigReal(1, 160)}, ctx128);
        BigReal want = log(BigReal(gams[i], 160)) - log(2L * const_pi(160)) / 2L;
        CHECK(abs(lg - want).to_double() < 1e-32);
    }
    // rho_1(1) = sqrt(2 pi): -log rho = -(1/2) log 2pi
    BigReal nlr = neg_log_rho({BigReal(1, 160)}, ctx128);
    CHECK(abs(nlr + log(2L * const_pi(160)) / 2L).to_double() < 1e-32);
}

TEST_CASE("barnes gamma_2 recurrence from the zeta_2 telescoping") {
    BigReal w1(1.0, 192), w2(1.61803398874989484820458683436563811772, 192);
    BigReal x(0.7, 192);
    // log G2(x) - log G2(x + w1) = d/ds zeta_1(s, w2, x)|_0
    BigReal lhs = barnes_log_gamma(x, {w1, w2}, ctx128) - barnes_log_gamma(x + w1, {w1, w2}, ctx128);
    BigReal rhs = shintani_zeta_ds(BigComplex(0, 0, 128), {w2}, x, ctx128).real();
    CHECK(abs(lhs - rhs).to_double() < 1e-28);
}

TEST_CASE("chowla-selberg for Q(i) and Q(sqrt-3)") {
    auto r4 = chowla_selberg_check(-4, ctx128);
    CHECK(r4.rel_error < 1e-25);
    auto r3 = chowla_selberg_check(-3, ctx128);
    CHECK(r3.rel_error < 1e-25);
    // precision doubling tightens the agreement
    auto r4b = chowla_selberg_check(-4, PrecisionCtx(256));
    CHECK(r4b.rel_error < r4.rel_error + 1e-40);
}

TEST_CASE("real quadratic cone decomposition tiles the positive quadrant") {
    for (long D : {5L, 2L}) {
        auto F = build_quadratic_real(D, ctx128);
        auto dec = decompose_real_quadratic(F);
        REQUIRE(dec.cones.size() == 1);
        nt::SplitMix64 rng(42);
        int bad = 0;
        for (int t = 0; t < 10000; ++t) {
            // random totally positive point from a wide log-box
            double p1 = std::exp(6.0 * (rng.uniform() - 0.5));
            double p2 = std::exp(6.0 * (rng.uniform() - 0.5));
            if (tiling_hits(dec, {p1, p2}) != 1) ++bad;
        }
        CHECK(bad == 0);
    }
    // n = 1: trivial ray
    auto Q = build_rational();
    auto dq = decompose_real_quadratic(Q);
    CHECK(tiling_hits(dq, {2.5}) == 1);
}

TEST_CASE("cone zeta special values vs Barnes chain in the degenerate case") {
    // both linear forms equal: Z(s) = zeta_2^{Barnes}(2s, (a,b), a u + b v)
    PrecisionCtx ctx(160);
    BigReal a(1.0, 224), b(1.7, 224);
    Rat u(1), v(0);
    BigReal x = a; // a*1 + b*0
    // K = 0: Z(0) = zeta_2(0)
    BigReal z0 = cone_zeta_special(0, {a, a}, {b, b}, u, v, ctx);
    BigReal w0 = shintani_zeta(BigComplex(0, 0, 160), {a, b}, x, ctx).real();
    CHECK(abs(z0 - w0).to_double() < 1e-38);
    // K = 1: Z(-1) = zeta_2(-2)
    BigReal z1 = cone_zeta_special(1, {a, a}, {b, b}, u, v, ctx);
    BigReal w1 = shintani_zeta(BigComplex(-2, 0, 160), {a, b}, x, ctx).real();
    CHECK(abs(z1 - w1).to_double() < 1e-36);
    // direct summation cross-check at s = 2 is impossible for Z(-1); instead
    // check Z at s=2 direct sum against nothing here (covered elsewhere)
}

TEST_CASE("zeta_F(-1) = 1/30 for Q(sqrt5) via cones, functional equation oracle") {
    auto F = build_quadratic_real(5, ctx128);
    BigReal viacones = zeta_minus1_via_cones(F, PrecisionCtx(192));
    BigReal want = BigReal(1, 192) / 30L;
    CHECK(abs(viacones - want).to_double() < 1e-20);
    // oracle via the functional equation: zeta_F(-1) = D^{3/2}/(4 pi^4) zeta_F(2),
    // zeta_F(2) = zeta(2) L(2, chi_5) with L via Hurwitz zeta
    long prec = 224;
    BigReal L2(0L, prec);
    for (long r = 1; r < 5; ++r) {
        int chi = nt::kronecker(nt::Int(5), nt::Int(r));
        if (chi == 0) continue;
        L2 += BigReal(chi, prec) *
              hurwitz_zeta(BigComplex(2, 0, 192), BigReal(r, prec) / 5L, PrecisionCtx(192)).real();
    }
    L2 /= 25L;
    BigReal zF2 = const_pi(prec) * const_pi(prec) / 6L * L2;
    BigReal pi4 = pow(const_pi(prec), 4L);
    BigReal oracle = exp(BigReal(1.5, prec) * log(BigReal(5, prec))) / (4L * pi4) * zF2;
    CHECK(abs(oracle - want).to_double() < 1e-40);
    CHECK(abs(viacones - oracle).to_double() < 1e-20);
}

TEST_CASE("zeta_F(0) vanishes for real quadratic via cones") {
    auto F = build_quadratic_real(5, ctx128);
    auto dec = decompose_real_quadratic(F);
    long prec = 160;
    std::vector<BigReal> a{BigReal(1, prec), BigReal(1, prec)};
    std::vector<BigReal> b{F.F->embed(dec.eps0, 0, prec).real(),
                           F.F->embed(dec.eps0, 1, prec).real()};
    BigReal acc(0L, prec);
    for (const auto& [u, v] : dec.shifts[0])
        acc += cone_zeta_special(0, a, b, u, v, ctx128);
    CHECK(abs(acc).to_double() < 1e-30);
}

TEST_CASE("toric vanishing orders") {
    auto F = build_quadratic_real(5, ctx128);
    auto dec = decompose_real_quadratic(F);
    // ray generator ell = 1 (the fundamental cone's own ray); Tr(O_F) in Z
    FieldElem ell = F.F->one();
    // alpha = 1: min over units of Tr(ell u) attained near u = 1
    nt::Int o1 = toric_vanishing_order(dec, ell, F.F->one());
    // brute force oracle over u = eps0^k, k in [-10, 10]
    auto brute = [&](const FieldElem& alpha) {
        Rat best;
        bool first = true;
        FieldElem e = dec.eps0;
        for (int k = -10; k <= 10; ++k) {
            FieldElem u = F.F->one();
            for (int t = 0; t < std::abs(k); ++t) u = u * (k > 0 ? e : F.F->inv(e));
            Rat tr = F.F->trace(ell * u * alpha);
            if (first || tr < best) { best = tr; first = false; }
        }
        return best;
    };
    CHECK(Rat(o1) == brute(F.F->one()));
    CHECK(o1 == 2); // <ell, 1> = Tr(1) = n, attained at u = 1
    FieldElem eps2 = dec.eps0;
    nt::Int o2 = toric_vanishing_order(dec, ell, eps2);
    CHECK(Rat(o2) == brute(eps2));
    // the other ray of the cone works as well
    nt::Int o3 = toric_vanishing_order(dec, dec.eps0, F.F->one());
    CHECK(o3 == 2); // Tr(eps0 eps0^{-1}) = Tr(1) attained inside the orbit
    // order(alpha * beta) >= order(alpha) + order(beta) on samples
    nt::SplitMix64 rng(9);
    int checked = 0;
    for (int t = 0; t < 40 && checked < 10; ++t) {
        FieldElem x = F.F->from_coords({Rat(rng.range(1, 5)), Rat(rng.range(0, 3))});
        FieldElem y = F.F->from_coords({Rat(rng.range(1, 5)), Rat(rng.range(0, 3))});
        if (!fields::totally_positive(x) || !fields::totally_positive(y)) continue;
        ++checked;
        nt::Int ox = toric_vanishing_order(dec, ell, x);
        nt::Int oy = toric_vanishing_order(dec, ell, y);
        nt::Int oxy = toric_vanishing_order(dec, ell, x * y);
        CHECK(oxy >= ox + oy);
    }
    CHECK(checked == 10);
    CHECK_THROWS_AS(toric_vanishing_order(dec, ell, -F.F->one()),
                    idealmod::NotTotallyPositive);
}

TEST_CASE("shintani reflection experiment emits diagnostics") {
    auto F = build_quadratic_real(5, PrecisionCtx(64, BigReal(1e-10, 64)));
    auto rep = shintani_reflection_experiment(BigReal(0.5, 96), F, PrecisionCtx(64, BigReal(1e-10, 64)));
    REQUIRE(rep.deltas.size() == 3);
    REQUIRE(rep.rhs_log_abs.size() == 3);
    // delta trend recorded; the lhs is finite
    CHECK(rep.lhs_log_abs.is_finite());
    CHECK_THROWS_AS(shintani_reflection_experiment(BigReal(-1.0, 96), F, PrecisionCtx(64, BigReal(1e-10, 64))),
                    DomainError);
}
