// Ideals of a CM field K as O_F-modules: presentations a = O_F w1 + O_F w2,
// CM points, real/imaginary classification, type ideals, Kahler coordinates,
// and the upper-triangular matrix representatives of M_2^+(alpha)/SL_2(O_F).

#pragma once

#include "starkforge/fields.hpp"

namespace starkforge::idealmod {

using fields::CMField;
using fields::FieldElem;
using fields::Ideal;
using fields::TotallyRealField;
using nt::Int;
using nt::Rat;

struct DegenerateIdeal : Error { using Error::Error; };
struct InvalidPolarization : Error { using Error::Error; };
struct NotIntegral : Error { using Error::Error; };
struct NotTotallyPositive : Error { using Error::Error; };

// a = b_ideal * omega1 (+) O_F * omega2 with all Im(w^{sigma_i}) > 0 where
// w = omega1/omega2. b_ideal is normalized to O_F (the base fields here are
// principal); reassemble() restores the lattice for the exactness check.
struct ModulePresentation {
    const CMField* cm;
    Ideal a;
    Ideal b_ideal;
    FieldElem omega1, omega2;

    FieldElem w_element() const; // omega1 / omega2 in K
    std::vector<BigComplex> cm_point(long prec) const; // w^{sigma_i}, CM type order
    Ideal reassemble() const;
};

ModulePresentation present_as_of_module(const CMField& K, const Ideal& a);

enum class IdealKind { Real, Imaginary, Mixed };
// predicates: an ideal can satisfy both (ramified-square cases); the
// classifier tags Real first, then Imaginary, else Mixed
bool is_real_ideal(const CMField& K, const Ideal& a);      // extended from F
bool is_imaginary_ideal(const CMField& K, const Ideal& a); // a a^rho = (mu), mu >> 0
IdealKind classify_ideal(const CMField& K, const Ideal& a);

// polarization element: zeta^rho = -zeta, Im(zeta^{sigma_i}) > 0, and the
// Riemann form Tr_{K/Q}(zeta x y^rho) integral on O_K
bool is_valid_polarization(const CMField& K, const FieldElem& zeta);
FieldElem find_polarization(const CMField& K);

// the F-ideal zeta * d_{K/F} * a * a^rho together with its class label
std::pair<Ideal, int> type_ideal(const CMField& K, const Ideal& a, const FieldElem& zeta);

enum class KahlerConvention { Index, IndexOverDisc };

struct KahlerCoords {
    std::vector<Int> divisors;     // elementary divisors of a in O_F, ascending
    std::vector<BigReal> t;        // convention-scaled coordinates
    std::vector<BigComplex> s;     // s_j = t_j x_j / y_j + i t_j
};

KahlerCoords kahler_coords(const TotallyRealField& F, const Ideal& a,
                           const std::vector<BigComplex>& w,
                           KahlerConvention conv, const PrecisionCtx& ctx);

// representatives (a b; 0 d), ad = alpha, (a, d) modulo the unit action,
// b over O_F/(d)
struct MatrixRep {
    FieldElem a, b, d;
};
std::vector<MatrixRep> enumerate_matrix_reps(const TotallyRealField& F,
                                             const FieldElem& alpha);

// residue representatives of O_F / I (box coordinates of the HNF basis)
std::vector<FieldElem> residues_mod(const TotallyRealField& F, const Ideal& I);

struct GenerationReport {
    bool generated = true;
    // per class: a pair (real class, imaginary class) composing to it, or
    // (-1, -1) when no decomposition was found within the search bound
    std::vector<std::pair<int, int>> decomposition;
    std::vector<int> real_classes;      // classes containing a real ideal
    std::vector<int> imaginary_classes; // classes containing an imaginary ideal
};
GenerationReport verify_classgroup_generation(const CMField& K);

} // namespace starkforge::idealmod
