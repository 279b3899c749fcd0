// Exact integer / rational linear algebra and small number-theory utilities:
// Hermite and Smith normal forms, Bareiss determinants, LLL reduction,
// polynomial arithmetic over Q, Kronecker symbols, trial-division factoring.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "starkforge/mp.hpp"

namespace starkforge::nt {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class(num, den) does not canonicalize; this does
inline Rat ratio(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

struct ZMat {
    long rows = 0, cols = 0;
    std::vector<Int> a;

    ZMat() = default;
    ZMat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    Int& at(long i, long j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(long i, long j) const { return a[static_cast<size_t>(i) * cols + j]; }
    static ZMat identity(long n);
    bool operator==(const ZMat& o) const = default;
};

struct QMat {
    long rows = 0, cols = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    explicit QMat(const ZMat& m);
    Rat& at(long i, long j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(long i, long j) const { return a[static_cast<size_t>(i) * cols + j]; }
    static QMat identity(long n);
};

ZMat mul(const ZMat& x, const ZMat& y);
QMat mul(const QMat& x, const QMat& y);
ZMat transpose(const ZMat& x);

// exact determinant (Bareiss / fraction-free)
Int det(const ZMat& m);
Rat det(const QMat& m);

QMat inverse(const QMat& m);                 // throws DomainError if singular
std::optional<std::vector<Rat>> solve(const QMat& A, const std::vector<Rat>& b);

// Row-style Hermite normal form: unimodular row operations only; the result
// is upper echelon with positive pivots and entries above each pivot reduced
// into [0, pivot). Zero rows are dropped. Rows of hnf() span the same
// Z-module as the input rows; the form is unique, so equality of modules is
// equality of HNFs.
ZMat hnf(const ZMat& m);

// Smith normal form: returns diagonal d with d1 | d2 | ..., and optionally
// unimodular U, V with U * m * V = diag(d).
std::vector<Int> snf(const ZMat& m, ZMat* U = nullptr, ZMat* V = nullptr);

// LLL reduction of the lattice spanned by the rows of basis (delta = 3/4),
// exact rational arithmetic. Returns the reduced basis rows.
ZMat lll(const ZMat& basis);

// Kronecker symbol (a|n), full generality including n <= 0.
int kronecker(const Int& a, const Int& n);

struct PrimePower {
    Int p;
    unsigned e;
};
// trial-division factorization; fine for the desk-scale norms used here
std::vector<PrimePower> factor(Int n);
bool is_probable_prime(const Int& n);

// dense polynomials over Q, coefficient order c[0] + c[1] x + ...
using QPoly = std::vector<Rat>;
QPoly poly_mul(const QPoly& f, const QPoly& g);
QPoly poly_add(const QPoly& f, const QPoly& g);
QPoly poly_scale(const QPoly& f, const Rat& c);
// remainder of f modulo the monic polynomial m
QPoly poly_mod(QPoly f, const QPoly& m);
QPoly poly_derivative(const QPoly& f);
void poly_trim(QPoly& f);

// evaluate with BigComplex argument
BigComplex poly_eval(const QPoly& f, const BigComplex& x, long prec);

// cyclotomic polynomial Phi_m for m <= 16
QPoly cyclotomic(unsigned m);

// deterministic 64-bit generator for seeded sampling in tests and reports
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * (1.0 / 9007199254740992.0); }
    long range(long lo, long hi) { // inclusive bounds
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

} // namespace starkforge::nt
