#include "doctest.h"

#include "starkforge/exact.hpp"
#include "starkforge/mpfun.hpp"

using namespace starkforge;
using namespace starkforge::nt;
using namespace starkforge::mpk;

TEST_CASE("hnf uniqueness and module equality") {
    ZMat m(3, 2);
    m.at(0, 0) = 4; m.at(0, 1) = 6;
    m.at(1, 0) = 2; m.at(1, 1) = 2;
    m.at(2, 0) = 0; m.at(2, 1) = 10;
    ZMat h = hnf(m);
    CHECK(h.rows == 2);
    CHECK(h.at(0, 0) == 2);
    CHECK(h.at(1, 0) == 0);
    // same module, different generators
    ZMat m2(2, 2);
    m2.at(0, 0) = 2; m2.at(0, 1) = 4;
    m2.at(1, 0) = 4; m2.at(1, 1) = 6;
    CHECK(hnf(m2) == hnf(mul(ZMat::identity(2), m2)));
}

TEST_CASE("snf divisibility chain and determinant") {
    ZMat m(2, 2);
    m.at(0, 0) = 2; m.at(0, 1) = 4;
    m.at(1, 0) = 6; m.at(1, 1) = 8;
    ZMat U, V;
    auto d = snf(m, &U, &V);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 2);
    CHECK(d[1] == 4);
    CHECK(d[1] % d[0] == 0);
    // U m V = diag(d)
    ZMat prod = mul(mul(U, m), V);
    CHECK(prod.at(0, 0) == d[0]);
    CHECK(prod.at(1, 1) == d[1]);
    CHECK(prod.at(0, 1) == 0);
    CHECK(prod.at(1, 0) == 0);
    CHECK(abs(det(m)) == d[0] * d[1]);
}

TEST_CASE("bareiss determinant vs rational elimination") {
    SplitMix64 rng(7);
    for (int t = 0; t < 10; ++t) {
        ZMat m(4, 4);
        for (long i = 0; i < 4; ++i)
            for (long j = 0; j < 4; ++j) m.at(i, j) = rng.range(-9, 9);
        Rat dq = det(QMat(m));
        CHECK(Rat(det(m)) == dq);
    }
}

TEST_CASE("rational inverse and solve") {
    QMat m(2, 2);
    m.at(0, 0) = Rat(1, 2); m.at(0, 1) = 1;
    m.at(1, 0) = 3;         m.at(1, 1) = Rat(4, 3);
    QMat mi = inverse(m);
    QMat p = mul(m, mi);
    CHECK(p.at(0, 0) == 1);
    CHECK(p.at(0, 1) == 0);
    auto x = solve(m, {Rat(1), Rat(0)});
    REQUIRE(x.has_value());
    CHECK(m.at(0, 0) * (*x)[0] + m.at(0, 1) * (*x)[1] == 1);
}

TEST_CASE("lll recovers the sqrt(2) integer relation") {
    // rows: [1 0 0 C], [0 1 0 C*x], [0 0 1 C*x^2] with x = sqrt(2)
    PrecisionCtx ctx(192);
    BigReal x = sqrt(BigReal(2, 192));
    Int C = Int(1) << 150;
    ZMat b(3, 4);
    for (long i = 0; i < 3; ++i) b.at(i, i) = 1;
    b.at(0, 3) = C;
    b.at(1, 3) = mpk::to_mpz_round(BigReal(C, 200) * x);
    b.at(2, 3) = mpk::to_mpz_round(BigReal(C, 200) * x * x);
    ZMat r = lll(b);
    // the shortest vector should encode -2 + 0 x + 1 x^2
    bool found = false;
    for (long i = 0; i < 3; ++i) {
        if ((r.at(i, 0) == -2 && r.at(i, 1) == 0 && r.at(i, 2) == 1) ||
            (r.at(i, 0) == 2 && r.at(i, 1) == 0 && r.at(i, 2) == -1))
            found = true;
    }
    CHECK(found);
}

TEST_CASE("factor and kronecker") {
    auto f = factor(Int(600));
    REQUIRE(f.size() == 3);
    CHECK(f[0].p == 2); CHECK(f[0].e == 3);
    CHECK(f[1].p == 3); CHECK(f[1].e == 1);
    CHECK(f[2].p == 5); CHECK(f[2].e == 2);
    CHECK(kronecker(Int(5), Int(11)) == 1);  // 5 = 4^2 mod 11
    CHECK(kronecker(Int(5), Int(13)) == -1);
    CHECK(kronecker(Int(-4), Int(5)) == 1);
}

TEST_CASE("polynomial arithmetic") {
    QPoly f{Rat(1), Rat(2), Rat(1)};          // (1+x)^2
    QPoly g{Rat(-1), Rat(1)};                 // x-1
    QPoly p = poly_mul(f, g);                 // x^3 + x^2 - x - 1
    REQUIRE(p.size() == 4);
    CHECK(p[0] == -1);
    CHECK(p[3] == 1);
    QPoly m{Rat(-2), Rat(0), Rat(1)};         // x^2 - 2
    QPoly r = poly_mod(QPoly{Rat(0), Rat(0), Rat(0), Rat(1)}, m); // x^3 mod x^2-2 = 2x
    REQUIRE(r.size() == 2);
    CHECK(r[1] == 2);
    // cyclotomic sanity: Phi_4(i) ~ 0 numerically
    BigComplex i(0, 1, 128);
    CHECK(abs(poly_eval(cyclotomic(4), i, 128)).to_double() < 1e-30);
    CHECK(abs(poly_eval(cyclotomic(12), exp(BigComplex(BigReal(0, 128), 2L * const_pi(128) / 12L)), 128)).to_double() < 1e-30);
}
