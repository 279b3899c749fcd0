// Number fields presented by a monic integral minimal polynomial together
// with an integral basis expressed in the power basis of the generator.
// Elements are exact rational coordinate vectors in the integral basis;
// ideals are Hermite-reduced Z-lattices with a denominator.

#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "starkforge/exact.hpp"
#include "starkforge/mp.hpp"

namespace starkforge::fields {

using nt::Int;
using nt::QMat;
using nt::QPoly;
using nt::Rat;
using nt::ZMat;

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

struct FieldElem {
    FieldPtr K;
    std::vector<Rat> c; // coordinates in the integral basis

    bool is_zero() const;
    bool is_integral() const;
    bool operator==(const FieldElem& o) const { return c == o.c; }
};

class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    // min_poly: monic with integer coefficients; basis_rows: row i is the
    // i-th integral basis element written in the power basis 1, t, t^2, ...;
    // root_seeds: decimal approximations of the roots of min_poly fixing the
    // embedding order (re, im pairs; im empty string means a real root).
    static FieldPtr create(QPoly min_poly, QMat basis_rows,
                           std::vector<std::pair<std::string, std::string>> root_seeds);

    long degree() const { return n_; }
    const QPoly& min_poly() const { return minpoly_; }
    const QMat& basis_rows() const { return basis_; }
    Int disc() const { return disc_; }
    bool root_is_real(int i) const { return root_real_[i]; }

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem gen() const;                        // the root t as an element
    FieldElem from_coords(std::vector<Rat> c) const;
    FieldElem from_power_coords(const std::vector<Rat>& p) const; // in 1,t,t^2,...
    std::vector<Rat> to_power_coords(const FieldElem& x) const;

    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem sub(const FieldElem& a, const FieldElem& b) const;
    FieldElem neg(const FieldElem& a) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    FieldElem mul_int(const FieldElem& a, const Rat& r) const;
    FieldElem inv(const FieldElem& a) const;
    Rat norm(const FieldElem& a) const;
    Rat trace(const FieldElem& a) const;
    QMat mul_matrix(const FieldElem& a) const;   // y-coords -> (a*y)-coords

    // whether the multiplication table of the basis is integral (the basis
    // spans an order); ingestion verification uses this
    bool basis_is_order() const;

    // embeddings, polished by Newton to the requested precision (cached)
    std::vector<BigComplex> roots(long prec) const;
    BigComplex embed(const FieldElem& a, int which, long prec) const;
    std::vector<BigComplex> embed_all(const FieldElem& a, long prec) const;

private:
    long n_ = 0;
    QPoly minpoly_;
    QMat basis_;            // rows = basis elements in power coords
    QMat power_to_basis_;   // inverse of basis_ transposed appropriately
    std::vector<QMat> mulmat_; // mulmat_[i]: coords(e_i * y) = mulmat_[i] * coords(y)
    Int disc_;
    std::vector<std::pair<std::string, std::string>> seeds_;
    std::vector<bool> root_real_;
    std::vector<Rat> one_coords_;

    mutable std::mutex cache_mu_;
    mutable long cache_prec_ = 0;
    mutable std::vector<BigComplex> cache_roots_;
};

FieldElem operator+(const FieldElem& a, const FieldElem& b);
FieldElem operator-(const FieldElem& a, const FieldElem& b);
FieldElem operator-(const FieldElem& a);
FieldElem operator*(const FieldElem& a, const FieldElem& b);

// ---------------------------------------------------------------------------

// Fractional ideal: (1/den) * Z-span of basis rows (coords in the integral
// basis). basis is square (full rank), Hermite-reduced; den minimal.
struct Ideal {
    FieldPtr K;
    ZMat basis;
    Int den = 1;

    bool operator==(const Ideal& o) const { return basis == o.basis && den == o.den; }
    Rat norm() const;
    bool is_integral() const;
    bool contains(const FieldElem& x) const;
    FieldElem element_from_row(long i) const;
};

Ideal ideal_ring(const FieldPtr& K); // (1) = O_K
Ideal ideal_from_generators(const FieldPtr& K, const std::vector<FieldElem>& gens);
// raw Z-span of the given elements (no closure under O-multiplication);
// the result reuses the Ideal container but need not be an actual ideal
Ideal z_span(const FieldPtr& K, const std::vector<FieldElem>& gens);
Ideal ideal_principal(const FieldElem& a);
Ideal ideal_mul(const Ideal& a, const Ideal& b);
Ideal ideal_add(const Ideal& a, const Ideal& b); // gcd / sum of modules
Ideal ideal_inverse(const Ideal& a);
Ideal ideal_scale(const Ideal& a, const FieldElem& x); // x * a
Ideal ideal_pow(const Ideal& a, long e);

// apply a ring automorphism given by its matrix on basis coordinates
Ideal ideal_map(const Ideal& a, const QMat& automorphism);

// all integral ideals with norm <= bound, by exhaustive enumeration of
// HNF sublattices that are closed under the basis multiplications.
// Complete by construction; used both for small class-set computations
// and as the oracle for splitting-law based enumeration.
std::vector<Ideal> ideals_of_norm_up_to(const FieldPtr& K, long bound);

// integer left-kernel of M: lattice {x : x M = 0}, rows = basis
ZMat kernel_left(const ZMat& M);

// intersection of two full-rank column-space lattices given by rows/dens
std::pair<ZMat, Int> lattice_intersect(const ZMat& A, const Int& dena,
                                       const ZMat& B, const Int& denb);

} // namespace starkforge::fields
