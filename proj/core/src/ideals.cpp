#include "starkforge/numberfield.hpp"

#include <algorithm>
#include <functional>

namespace starkforge::fields {

using nt::hnf;
using nt::snf;

namespace {

// canonical form: basis HNF, den minimal positive
Ideal canonicalize(FieldPtr K, ZMat basis, Int den) {
    if (den < 0) den = -den;
    basis = hnf(basis);
    if (basis.rows != K->degree())
        throw DomainError("ideal: lattice is not full rank");
    Int g = den;
    for (const auto& x : basis.a) {
        g = gcd(g, x);
        if (g == 1) break;
    }
    if (g > 1) {
        for (auto& x : basis.a) x /= g;
        den /= g;
    }
    return Ideal{std::move(K), std::move(basis), std::move(den)};
}

// stack coordinate rows of x * e_i over all generators x and basis e_i
Ideal module_from_elements(const FieldPtr& K, const std::vector<FieldElem>& gens,
                           bool multiply_by_basis) {
    long n = K->degree();
    std::vector<std::vector<Rat>> rows;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (multiply_by_basis) {
            for (long i = 0; i < n; ++i) {
                std::vector<Rat> c(n, Rat(0));
                c[i] = 1;
                FieldElem ei{K, c};
                rows.push_back((g * ei).c);
            }
        } else {
            rows.push_back(g.c);
        }
    }
    if (rows.empty()) throw DomainError("ideal: zero module");
    Int den(1);
    for (const auto& r : rows)
        for (const auto& x : r) den = lcm(den, Int(x.get_den()));
    ZMat m(static_cast<long>(rows.size()), n);
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < n; ++j) {
            Rat v = rows[i][j] * Rat(den);
            m.at(i, j) = v.get_num();
        }
    return canonicalize(K, std::move(m), std::move(den));
}

} // namespace

Rat Ideal::norm() const {
    Int d = nt::det(basis);
    if (d < 0) d = -d;
    Rat dn(den);
    Rat out(d);
    for (long i = 0; i < K->degree(); ++i) out /= dn;
    return out;
}

bool Ideal::is_integral() const {
    // integral iff contained in O, i.e. every basis row / den is integral
    for (long i = 0; i < basis.rows; ++i)
        for (long j = 0; j < basis.cols; ++j)
            if (basis.at(i, j) % den != 0) return false;
    return true;
}

FieldElem Ideal::element_from_row(long i) const {
    std::vector<Rat> c(K->degree());
    for (long j = 0; j < K->degree(); ++j) c[j] = nt::ratio(basis.at(i, j), den);
    return {K, std::move(c)};
}

bool Ideal::contains(const FieldElem& x) const {
    long n = K->degree();
    std::vector<Int> v(n);
    for (long j = 0; j < n; ++j) {
        Rat t = x.c[j] * Rat(den);
        if (t.get_den() != 1) return false;
        v[j] = t.get_num();
    }
    // rows are upper triangular with pivot (i, i): eliminate columns forward
    for (long i = 0; i < n; ++i) {
        if (v[i] % basis.at(i, i) != 0) return false;
        Int q = v[i] / basis.at(i, i);
        for (long j = i; j < n; ++j) v[j] -= q * basis.at(i, j);
    }
    for (long j = 0; j < n; ++j)
        if (v[j] != 0) return false;
    return true;
}

Ideal ideal_ring(const FieldPtr& K) {
    return Ideal{K, ZMat::identity(K->degree()), Int(1)};
}

Ideal ideal_from_generators(const FieldPtr& K, const std::vector<FieldElem>& gens) {
    return module_from_elements(K, gens, true);
}

Ideal z_span(const FieldPtr& K, const std::vector<FieldElem>& gens) {
    return module_from_elements(K, gens, false);
}

Ideal ideal_principal(const FieldElem& a) {
    return module_from_elements(a.K, {a}, true);
}

Ideal ideal_mul(const Ideal& a, const Ideal& b) {
    long n = a.K->degree();
    std::vector<FieldElem> gens;
    gens.reserve(n * n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            gens.push_back(a.element_from_row(i) * b.element_from_row(j));
    return module_from_elements(a.K, gens, false); // already an O-module
}

Ideal ideal_add(const Ideal& a, const Ideal& b) {
    long n = a.K->degree();
    std::vector<FieldElem> gens;
    for (long i = 0; i < n; ++i) {
        gens.push_back(a.element_from_row(i));
        gens.push_back(b.element_from_row(i));
    }
    return module_from_elements(a.K, gens, false);
}

Ideal ideal_scale(const Ideal& a, const FieldElem& x) {
    long n = a.K->degree();
    std::vector<FieldElem> gens;
    for (long i = 0; i < n; ++i) gens.push_back(a.element_from_row(i) * x);
    return module_from_elements(a.K, gens, false);
}

Ideal ideal_map(const Ideal& a, const QMat& phi) {
    long n = a.K->degree();
    std::vector<FieldElem> gens;
    for (long i = 0; i < n; ++i) {
        FieldElem e = a.element_from_row(i);
        std::vector<Rat> c(n, Rat(0));
        for (long r = 0; r < n; ++r)
            for (long j = 0; j < n; ++j) c[r] += phi.at(r, j) * e.c[j];
        gens.push_back(FieldElem{a.K, std::move(c)});
    }
    return module_from_elements(a.K, gens, false);
}

Ideal ideal_inverse(const Ideal& a) {
    const FieldPtr& K = a.K;
    long n = K->degree();
    // work with the integral lattice I = rowspan(basis); a = I / den
    FieldElem alpha = a.element_from_row(0);
    {
        std::vector<Rat> c = alpha.c;
        for (auto& x : c) x *= Rat(a.den);
        alpha = FieldElem{K, std::move(c)}; // integral, nonzero
    }
    Ideal pa = ideal_principal(alpha); // den == 1
    if (pa.den != 1) throw Error("ideal_inverse: internal");
    // constraints G_k y in Z^n where G_k = (H^-1)^T M_k, H = HNF of (alpha)
    QMat Hq(pa.basis);
    QMat Hinv = nt::inverse(Hq);
    std::vector<QMat> G;
    for (long k = 0; k < n; ++k) {
        FieldElem beta = FieldElem{K, {}};
        {
            std::vector<Rat> c(n);
            for (long j = 0; j < n; ++j) c[j] = Rat(a.basis.at(k, j));
            beta = FieldElem{K, std::move(c)};
        }
        QMat Mk = K->mul_matrix(beta);
        // rows of (M_k y) live in row-lattice of H <=> Hinv^T * (M_k y) integral
        QMat Gk(n, n);
        for (long r = 0; r < n; ++r)
            for (long c2 = 0; c2 < n; ++c2) {
                Rat s(0);
                for (long t = 0; t < n; ++t) s += Hinv.at(t, r) * Mk.at(t, c2);
                Gk.at(r, c2) = s;
            }
        G.push_back(Gk);
    }
    Int e(1);
    for (const auto& Gk : G)
        for (const auto& x : Gk.a) e = lcm(e, Int(x.get_den()));
    ZMat Gp(n * n, n);
    for (long k = 0; k < n; ++k)
        for (long r = 0; r < n; ++r)
            for (long c2 = 0; c2 < n; ++c2) {
                Rat v = G[static_cast<size_t>(k)].at(r, c2) * Rat(e);
                Gp.at(k * n + r, c2) = v.get_num();
            }
    // solve G' y == 0 (mod e): y = V z, d_i z_i == 0 (mod e)
    ZMat U, V;
    auto d = snf(Gp, &U, &V);
    ZMat sol(n, n);
    for (long i = 0; i < n; ++i) {
        Int di = i < static_cast<long>(d.size()) ? d[i] : Int(0);
        Int scale = di == 0 ? Int(1) : e / gcd(di, e);
        for (long r = 0; r < n; ++r) sol.at(i, r) = scale * V.at(r, i);
    }
    // colon lattice C = { y } ; inverse = den * C / alpha
    FieldElem ainv = K->inv(alpha);
    std::vector<FieldElem> gens;
    for (long i = 0; i < n; ++i) {
        std::vector<Rat> c(n);
        for (long j = 0; j < n; ++j) c[j] = Rat(sol.at(i, j) * a.den);
        gens.push_back(FieldElem{K, std::move(c)} * ainv);
    }
    return module_from_elements(K, gens, false);
}

Ideal ideal_pow(const Ideal& a, long e) {
    if (e == 0) return ideal_ring(a.K);
    Ideal base = e < 0 ? ideal_inverse(a) : a;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Ideal acc = base;
    --k;
    while (k) {
        acc = ideal_mul(acc, base);
        --k;
    }
    return acc;
}

ZMat kernel_left(const ZMat& M) {
    ZMat U;
    auto d = snf(M, &U, nullptr);
    long rank = 0;
    for (const auto& x : d)
        if (x != 0) ++rank;
    long nk = M.rows - rank;
    ZMat out(nk, M.rows);
    long t = 0;
    for (long i = 0; i < M.rows; ++i) {
        bool zero_row = i >= static_cast<long>(d.size()) || d[i] == 0;
        if (!zero_row) continue;
        for (long j = 0; j < M.rows; ++j) out.at(t, j) = U.at(i, j);
        ++t;
    }
    return out;
}

std::pair<ZMat, Int> lattice_intersect(const ZMat& A, const Int& dena,
                                       const ZMat& B, const Int& denb) {
    Int D = lcm(dena, denb);
    ZMat Ap = A, Bp = B;
    Int fa = D / dena, fb = D / denb;
    for (auto& x : Ap.a) x *= fa;
    for (auto& x : Bp.a) x *= fb;
    ZMat stack(Ap.rows + Bp.rows, Ap.cols);
    for (long i = 0; i < Ap.rows; ++i)
        for (long j = 0; j < Ap.cols; ++j) stack.at(i, j) = Ap.at(i, j);
    for (long i = 0; i < Bp.rows; ++i)
        for (long j = 0; j < Bp.cols; ++j) stack.at(Ap.rows + i, j) = Bp.at(i, j);
    ZMat ker = kernel_left(stack);
    ZMat inter(ker.rows, Ap.cols);
    for (long i = 0; i < ker.rows; ++i)
        for (long j = 0; j < Ap.cols; ++j) {
            Int s(0);
            for (long k = 0; k < Ap.rows; ++k) s += ker.at(i, k) * Ap.at(k, j);
            inter.at(i, j) = s;
        }
    return {hnf(inter), D};
}

std::vector<Ideal> ideals_of_norm_up_to(const FieldPtr& K, long bound) {
    long n = K->degree();
    std::vector<Ideal> out;
    // basis multiplication matrices must be integral for sublattice checks
    if (!K->basis_is_order()) throw DomainError("ideals_of_norm_up_to: basis is not an order");
    std::vector<ZMat> mulz(n, ZMat(n, n));
    for (long i = 0; i < n; ++i) {
        std::vector<Rat> c(n, Rat(0));
        c[i] = 1;
        QMat M = K->mul_matrix(FieldElem{K, c});
        for (long r = 0; r < n; ++r)
            for (long j = 0; j < n; ++j) mulz[i].at(r, j) = M.at(r, j).get_num();
    }
    // lattice rows in HNF: upper triangular, diag d_j, entries (i,j), i<j in [0,d_j)
    ZMat L(n, n);
    std::function<void(long)> fill_offdiag;
    auto is_module = [&]() {
        // closed under multiplication by each basis element: for every row r
        // and every generator g, coords(row * e_g) must lie in the lattice
        for (long r = 0; r < n; ++r)
            for (long g = 0; g < n; ++g) {
                std::vector<Int> v(n, Int(0));
                for (long j = 0; j < n; ++j)
                    for (long t = 0; t < n; ++t) v[j] += mulz[g].at(j, t) * L.at(r, t);
                for (long i = 0; i < n; ++i) {
                    if (v[i] % L.at(i, i) != 0) return false;
                    Int q = v[i] / L.at(i, i);
                    for (long j = i; j < n; ++j) v[j] -= q * L.at(i, j);
                }
                for (long j = 0; j < n; ++j)
                    if (v[j] != 0) return false;
            }
        return true;
    };
    std::function<void(long, long)> fill_diag = [&](long i, long prod) {
        if (i == n) {
            // enumerate off-diagonal entries
            std::vector<std::pair<long, long>> slots;
            for (long r = 0; r < n; ++r)
                for (long c = r + 1; c < n; ++c)
                    if (L.at(c, c) > 1) slots.push_back({r, c});
            std::function<void(size_t)> rec = [&](size_t k) {
                if (k == slots.size()) {
                    if (is_module()) out.push_back(Ideal{K, L, Int(1)});
                    return;
                }
                auto [r, c] = slots[k];
                long dc = static_cast<long>(L.at(c, c).get_si());
                for (long v = 0; v < dc; ++v) {
                    L.at(r, c) = v;
                    rec(k + 1);
                }
                L.at(r, c) = 0;
            };
            rec(0);
            return;
        }
        for (long d = 1; prod * d <= bound; ++d) {
            L.at(i, i) = d;
            fill_diag(i + 1, prod * d);
        }
        L.at(i, i) = 1;
    };
    fill_diag(0, 1);
    std::sort(out.begin(), out.end(), [](const Ideal& a, const Ideal& b) {
        Rat na = a.norm(), nb = b.norm();
        if (na != nb) return na < nb;
        return a.basis.a < b.basis.a;
    });
    return out;
}

} // namespace starkforge::fields
