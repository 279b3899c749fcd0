// Field data model: totally real base fields F, CM fields K, unit groups,
// class groups with character tables, and the rigorous desk-scale class-set
// computation (complete ideal enumeration below the Minkowski bound plus a
// provably terminating principality search).

#pragma once

#include "starkforge/numberfield.hpp"

#include <optional>
#include <string>

namespace starkforge::fields {

struct InvalidDiscriminant : Error { using Error::Error; };
struct UnsupportedDegree : Error { using Error::Error; };
struct ConsistencyError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };

// abelian group presented by representatives and a multiplication table,
// with the full character table (values are m-th roots of unity, stored as
// exponents so that characters stay exact)
struct ClassGroup {
    std::vector<Ideal> reps; // reps[0] is the ring itself
    std::vector<std::vector<int>> mult;
    std::vector<int> inv;
    long char_m = 1;
    std::vector<std::vector<long>> chi_pow; // chi_pow[chi][cls] in Z/char_m

    long h() const { return static_cast<long>(reps.size()); }
    int compose(int a, int b) const { return mult[a][b]; }
    BigComplex chi_value(int chi, int cls, long prec) const;
    bool chi_is_real(int chi) const;
    void build_characters();
};

// short vectors: all nonzero lattice elements x of the integral-basis
// lattice with sum_i |x^{(i)}|^2 <= bound (embedding norm); bound is a
// double with generous slack, exactness is restored by the callers' exact
// predicates on the candidates.
std::vector<FieldElem> short_vectors(const FieldPtr& K, double bound);

// sign pattern of a nonzero element under the real embeddings (+1/-1)
std::vector<int> sign_pattern(const FieldElem& x);
bool totally_positive(const FieldElem& x);

struct TotallyRealField {
    FieldPtr F;
    std::string label;
    Int disc;
    std::vector<FieldElem> fund_units; // rank n-1
    bool unit_norm_minus_one = false;  // quadratic: N(eps) = -1
    Ideal different;                   // d_F as an integral ideal
    ClassGroup cls;

    long degree() const { return F->degree(); }
    BigReal regulator(long prec) const; // = 1 by convention when n = 1
    // totally positive fundamental unit (eps if N(eps) = -1 is absorbed by
    // sign adjustment: eps^2 when needed); identity for Q
    FieldElem totally_positive_unit() const;
    // adjust x by a unit of the given sign pattern; nullopt if the pattern
    // is not attained by units
    std::optional<FieldElem> unit_with_signs(const std::vector<int>& want) const;
    int class_of(const Ideal& I) const;
};

struct CMField {
    FieldPtr K; // degree 2n
    TotallyRealField F;
    std::string label;
    QMat f_to_k;                 // F-coords (len n) -> K-coords (len 2n)
    QMat rho;                    // complex conjugation on K-coords
    FieldElem rel_gen;           // rel_gen^2 in F, totally negative
    std::vector<int> cm_type;    // root index of K per F-embedding
    std::vector<int> conj_root;  // conj_root[j]: index of the conjugate root
    Int disc;
    long w_K = 2;
    std::vector<FieldElem> fund_units; // of K, rank n-1
    ClassGroup cls;
    std::optional<QPoly> reflex_min_poly; // descriptive only

    long n() const { return F.degree(); }
    FieldElem from_F(const FieldElem& x) const;
    FieldElem to_F(const FieldElem& x) const; // only for rho-fixed elements
    FieldElem conj_elem(const FieldElem& x) const;
    Ideal conj_ideal(const Ideal& I) const;
    Ideal ideal_from_F(const Ideal& a) const; // a * O_K
    Ideal ideal_to_F(const Ideal& I) const;   // I cap F for rho-stable I
    Ideal rel_different() const;               // d_{K/F} as an O_K-ideal
    int class_of(const Ideal& I) const;
    BigReal regulator(long prec) const;
};

// principality: provably complete search using the unit-fundamental-domain
// bound. Returns a generator if the (integral) ideal is principal.
std::optional<FieldElem> principal_generator(const Ideal& I,
                                             const std::vector<FieldElem>& units);
bool ideals_equivalent(const Ideal& a, const Ideal& b,
                       const std::vector<FieldElem>& units);

// class set = complete enumeration of integral ideals below the Minkowski
// bound partitioned by equivalence; the group table by reduction of products
ClassGroup class_group_by_enumeration(const FieldPtr& K,
                                      const std::vector<FieldElem>& units);

// trace-dual based different ideal of the maximal order
Ideal absolute_different(const FieldPtr& K);

// builders ------------------------------------------------------------------

TotallyRealField build_rational();
TotallyRealField build_quadratic_real(long D, const PrecisionCtx& ctx);
CMField build_imaginary_quadratic(long d, const PrecisionCtx& ctx); // d < 0 squarefree

// integral ideals of F of norm <= bound via splitting of rational primes
// (degree <= 2 only), each with its class label
struct LabeledIdeal {
    Ideal ideal;
    long norm;
    int class_label;
};
std::vector<LabeledIdeal> enumerate_ideals(const TotallyRealField& F, long norm_bound);

// number of integral ideals of norm exactly m (Dedekind zeta coefficient)
long ideal_count_of_norm(const TotallyRealField& F, long m);

// prime ideals of a quadratic (or rational) field above p
std::vector<Ideal> primes_above(const FieldPtr& K, const Int& disc, long p);

} // namespace starkforge::fields
