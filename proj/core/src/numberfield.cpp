#include "starkforge/numberfield.hpp"

#include <algorithm>

namespace starkforge::fields {

using nt::det;
using nt::inverse;
using nt::poly_eval;
using nt::poly_mod;
using nt::poly_mul;

bool FieldElem::is_zero() const {
    for (const auto& x : c)
        if (x != 0) return false;
    return true;
}

bool FieldElem::is_integral() const {
    for (const auto& x : c)
        if (x.get_den() != 1) return false;
    return true;
}

FieldPtr NumberField::create(QPoly min_poly, QMat basis_rows,
                             std::vector<std::pair<std::string, std::string>> root_seeds) {
    auto K = std::make_shared<NumberField>();
    K->minpoly_ = std::move(min_poly);
    K->n_ = static_cast<long>(K->minpoly_.size()) - 1;
    if (K->n_ < 1 || K->minpoly_.back() != 1)
        throw DomainError("NumberField: min_poly must be monic of degree >= 1");
    K->basis_ = std::move(basis_rows);
    if (K->basis_.rows != K->n_ || K->basis_.cols != K->n_)
        throw DomainError("NumberField: basis shape mismatch");
    K->power_to_basis_ = inverse(K->basis_); // solves p = c^T basis_ for c
    if (static_cast<long>(root_seeds.size()) != K->n_)
        throw DomainError("NumberField: need one root seed per degree");
    K->seeds_ = std::move(root_seeds);
    for (auto& s : K->seeds_) K->root_real_.push_back(s.second.empty() || s.second == "0");

    // multiplication matrices: coords(e_i * e_j)
    auto power_of_basis = [&](long i) {
        QPoly p(K->basis_.cols);
        for (long j = 0; j < K->n_; ++j) p[j] = K->basis_.at(i, j);
        nt::poly_trim(p);
        return p;
    };
    auto to_basis = [&](const QPoly& p) {
        std::vector<Rat> pc(K->n_, Rat(0));
        for (size_t j = 0; j < p.size(); ++j) pc[j] = p[j];
        std::vector<Rat> out(K->n_, Rat(0));
        // c = power_to_basis^T * pc : c_i = sum_j pc_j * (basis^-1)(j,i)
        for (long i = 0; i < K->n_; ++i) {
            Rat s(0);
            for (long j = 0; j < K->n_; ++j) s += pc[j] * K->power_to_basis_.at(j, i);
            out[i] = s;
        }
        return out;
    };
    K->mulmat_.resize(K->n_);
    for (long i = 0; i < K->n_; ++i) {
        QMat M(K->n_, K->n_);
        QPoly pi = power_of_basis(i);
        for (long j = 0; j < K->n_; ++j) {
            QPoly pij = poly_mod(poly_mul(pi, power_of_basis(j)), K->minpoly_);
            auto cij = to_basis(pij);
            for (long t = 0; t < K->n_; ++t) M.at(t, j) = cij[t];
        }
        K->mulmat_[i] = M;
    }

    // coords of 1
    {
        std::vector<Rat> p(K->n_, Rat(0));
        p[0] = 1;
        QPoly one{Rat(1)};
        std::vector<Rat> pc(K->n_, Rat(0));
        pc[0] = 1;
        std::vector<Rat> out(K->n_, Rat(0));
        for (long i = 0; i < K->n_; ++i) {
            Rat s(0);
            for (long j = 0; j < K->n_; ++j) s += pc[j] * K->power_to_basis_.at(j, i);
            out[i] = s;
        }
        K->one_coords_ = out;
    }

    // discriminant = det of the trace form on the basis
    {
        QMat tf(K->n_, K->n_);
        for (long i = 0; i < K->n_; ++i)
            for (long j = 0; j < K->n_; ++j) {
                // trace(e_i e_j) = trace of mul matrix of e_i e_j
                QMat M(K->n_, K->n_);
                for (long t = 0; t < K->n_; ++t) {
                    // column t: coords(e_i * e_j * e_t) = mulmat_i * coords(e_j e_t)
                    std::vector<Rat> ejt(K->n_);
                    for (long r = 0; r < K->n_; ++r) ejt[r] = K->mulmat_[j].at(r, t);
                    for (long r = 0; r < K->n_; ++r) {
                        Rat s(0);
                        for (long q = 0; q < K->n_; ++q) s += K->mulmat_[i].at(r, q) * ejt[q];
                        M.at(r, t) = s;
                    }
                }
                Rat tr(0);
                for (long t = 0; t < K->n_; ++t) tr += M.at(t, t);
                tf.at(i, j) = tr;
            }
        Rat d = det(tf);
        if (d.get_den() != 1)
            throw DomainError("NumberField: non-integral discriminant (basis is not an order)");
        K->disc_ = d.get_num();
    }
    return K;
}

FieldElem NumberField::zero() const {
    return {shared_from_this(), std::vector<Rat>(n_, Rat(0))};
}
FieldElem NumberField::one() const { return {shared_from_this(), one_coords_}; }
FieldElem NumberField::gen() const {
    std::vector<Rat> p(n_, Rat(0));
    if (n_ == 1) { // t is rational: -c0
        p[0] = -minpoly_[0];
        return from_power_coords(p);
    }
    p[1] = 1;
    return from_power_coords(p);
}
FieldElem NumberField::from_coords(std::vector<Rat> c) const {
    if (static_cast<long>(c.size()) != n_) throw DomainError("from_coords: wrong length");
    return {shared_from_this(), std::move(c)};
}
FieldElem NumberField::from_power_coords(const std::vector<Rat>& p) const {
    if (static_cast<long>(p.size()) > n_) throw DomainError("from_power_coords: too long");
    std::vector<Rat> out(n_, Rat(0));
    for (long i = 0; i < n_; ++i) {
        Rat s(0);
        for (long j = 0; j < static_cast<long>(p.size()); ++j)
            s += p[j] * power_to_basis_.at(j, i);
        out[i] = s;
    }
    return {shared_from_this(), std::move(out)};
}
std::vector<Rat> NumberField::to_power_coords(const FieldElem& x) const {
    std::vector<Rat> p(n_, Rat(0));
    for (long j = 0; j < n_; ++j) {
        Rat s(0);
        for (long i = 0; i < n_; ++i) s += x.c[i] * basis_.at(i, j);
        p[j] = s;
    }
    return p;
}

FieldElem NumberField::add(const FieldElem& a, const FieldElem& b) const {
    std::vector<Rat> c(n_);
    for (long i = 0; i < n_; ++i) c[i] = a.c[i] + b.c[i];
    return {shared_from_this(), std::move(c)};
}
FieldElem NumberField::sub(const FieldElem& a, const FieldElem& b) const {
    std::vector<Rat> c(n_);
    for (long i = 0; i < n_; ++i) c[i] = a.c[i] - b.c[i];
    return {shared_from_this(), std::move(c)};
}
FieldElem NumberField::neg(const FieldElem& a) const {
    std::vector<Rat> c(n_);
    for (long i = 0; i < n_; ++i) c[i] = -a.c[i];
    return {shared_from_this(), std::move(c)};
}
FieldElem NumberField::mul(const FieldElem& a, const FieldElem& b) const {
    std::vector<Rat> c(n_, Rat(0));
    for (long i = 0; i < n_; ++i) {
        if (a.c[i] == 0) continue;
        for (long r = 0; r < n_; ++r) {
            Rat s(0);
            for (long j = 0; j < n_; ++j) s += mulmat_[i].at(r, j) * b.c[j];
            c[r] += a.c[i] * s;
        }
    }
    return {shared_from_this(), std::move(c)};
}
FieldElem NumberField::mul_int(const FieldElem& a, const Rat& r) const {
    std::vector<Rat> c(n_);
    for (long i = 0; i < n_; ++i) c[i] = a.c[i] * r;
    return {shared_from_this(), std::move(c)};
}
QMat NumberField::mul_matrix(const FieldElem& a) const {
    QMat M(n_, n_);
    for (long i = 0; i < n_; ++i) {
        if (a.c[i] == 0) continue;
        for (long r = 0; r < n_; ++r)
            for (long j = 0; j < n_; ++j) M.at(r, j) += a.c[i] * mulmat_[i].at(r, j);
    }
    return M;
}
FieldElem NumberField::inv(const FieldElem& a) const {
    if (a.is_zero()) throw DomainError("field inverse of zero");
    auto x = nt::solve(mul_matrix(a), one_coords_);
    if (!x) throw DomainError("field inverse: singular (zero divisor?)");
    return {shared_from_this(), std::move(*x)};
}
Rat NumberField::norm(const FieldElem& a) const { return det(mul_matrix(a)); }
Rat NumberField::trace(const FieldElem& a) const {
    QMat M = mul_matrix(a);
    Rat t(0);
    for (long i = 0; i < n_; ++i) t += M.at(i, i);
    return t;
}

bool NumberField::basis_is_order() const {
    for (const auto& M : mulmat_)
        for (const auto& x : M.a)
            if (x.get_den() != 1) return false;
    return true;
}

std::vector<BigComplex> NumberField::roots(long prec) const {
    std::lock_guard<std::mutex> lock(cache_mu_);
    long want = prec + 32;
    if (cache_prec_ >= want) {
        std::vector<BigComplex> out;
        out.reserve(n_);
        for (const auto& r : cache_roots_)
            out.emplace_back(BigReal(r.real(), prec), BigReal(r.imag(), prec));
        return out;
    }
    QPoly dpoly = nt::poly_derivative(minpoly_);
    std::vector<BigComplex> rts;
    for (long i = 0; i < n_; ++i) {
        BigComplex x(BigReal(seeds_[i].first, want),
                     root_real_[i] ? BigReal(0L, want) : BigReal(seeds_[i].second, want));
        // Newton iterations; seed precision doubles each step
        for (int it = 0; it < 64; ++it) {
            BigComplex f = poly_eval(minpoly_, x, want);
            BigComplex fp = poly_eval(dpoly, x, want);
            BigComplex step = f / fp;
            x -= step;
            if (abs(step) < mpk::exp2i(-want + 8, 64)) break;
        }
        if (root_real_[i]) x.imag() = BigReal(0L, want);
        rts.push_back(x);
        // seeds must actually be roots: |f(x)| small after polishing
        if (!(abs(poly_eval(minpoly_, x, want)) < BigReal(1e-6, 64)))
            throw DomainError("NumberField: root seed " + std::to_string(i) + " does not converge to a root");
    }
    cache_roots_ = rts;
    cache_prec_ = want;
    std::vector<BigComplex> out;
    out.reserve(n_);
    for (const auto& r : cache_roots_)
        out.emplace_back(BigReal(r.real(), prec), BigReal(r.imag(), prec));
    return out;
}

BigComplex NumberField::embed(const FieldElem& a, int which, long prec) const {
    auto rts = roots(prec + 16);
    auto p = to_power_coords(a);
    BigComplex acc(0, 0, prec + 16);
    const BigComplex& t = rts[which];
    for (long j = n_; j-- > 0;) acc = acc * t + BigComplex(BigReal(p[j], prec + 16));
    return {BigReal(acc.real(), prec), BigReal(acc.imag(), prec)};
}

std::vector<BigComplex> NumberField::embed_all(const FieldElem& a, long prec) const {
    std::vector<BigComplex> out;
    for (long i = 0; i < n_; ++i) out.push_back(embed(a, static_cast<int>(i), prec));
    return out;
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) { return a.K->add(a, b); }
FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a.K->sub(a, b); }
FieldElem operator-(const FieldElem& a) { return a.K->neg(a); }
FieldElem operator*(const FieldElem& a, const FieldElem& b) { return a.K->mul(a, b); }

} // namespace starkforge::fields
