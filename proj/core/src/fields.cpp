#include "starkforge/fields.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace starkforge::fields {

using nt::factor;
using nt::kronecker;
using nt::snf;

// --------------------------------------------------------------------------
// characters of a finite abelian group from the SNF of its relation lattice

void ClassGroup::build_characters() {
    long h = this->h();
    // relation lattice of Z^h -> G, e_i -> class i: rows h*e_i and
    // e_i + e_j - e_{i*j}
    ZMat R(h * h + h, h);
    long r = 0;
    for (int i = 0; i < h; ++i, ++r) R.at(r, i) = h;
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j, ++r) {
            R.at(r, i) += 1;
            R.at(r, j) += 1;
            R.at(r, mult[i][j]) -= 1;
        }
    ZMat U, V;
    auto d = snf(R, &U, &V);
    // G = Z^h / rowspan(R); x V has coordinate i defined mod d_i
    char_m = 1;
    std::vector<long> dd(h);
    for (long i = 0; i < h; ++i) {
        dd[i] = d[i].get_si();
        if (dd[i] == 0) throw Error("class group characters: infinite quotient");
        char_m = std::lcm(char_m, dd[i]);
    }
    // characters: t_i in Z/d_i ; value on class c = exp(2 pi i sum t_i (e_c V)_i / d_i)
    chi_pow.clear();
    std::vector<long> t(h, 0);
    while (true) {
        std::vector<long> row(h);
        for (int c = 0; c < h; ++c) {
            long e = 0;
            for (long i = 0; i < h; ++i) {
                long vci = mpz_class(V.at(c, i) % dd[i]).get_si();
                long term = (t[i] * vci) % dd[i];
                e = (e + term * (char_m / dd[i])) % char_m;
            }
            row[c] = ((e % char_m) + char_m) % char_m;
        }
        chi_pow.push_back(row);
        // odometer over prod Z/d_i
        long k = 0;
        while (k < h) {
            t[k] = (t[k] + 1) % dd[k];
            if (t[k] != 0) break;
            ++k;
        }
        if (k == h) break;
    }
    if (static_cast<long>(chi_pow.size()) != h)
        throw Error("class group characters: expected h characters, got " +
                    std::to_string(chi_pow.size()));
    // put the trivial character first
    for (size_t i = 0; i < chi_pow.size(); ++i) {
        bool trivial = true;
        for (long x : chi_pow[i]) trivial = trivial && x == 0;
        if (trivial) { std::swap(chi_pow[0], chi_pow[i]); break; }
    }
}

BigComplex ClassGroup::chi_value(int chi, int cls, long prec) const {
    long k = chi_pow[chi][cls];
    BigReal ang = 2L * mpk::const_pi(prec) * BigReal(k, prec) / BigReal(char_m, prec);
    return {cos(ang), sin(ang)};
}

bool ClassGroup::chi_is_real(int chi) const {
    for (long k : chi_pow[chi])
        if ((2 * k) % char_m != 0) return false;
    return true;
}

// --------------------------------------------------------------------------

std::vector<FieldElem> short_vectors(const FieldPtr& K, double bound) {
    long n = K->degree();
    auto rts = K->roots(64);
    // Gram of the embedding norm sum_roots |x|^2 in double precision
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
    {
        std::vector<std::vector<std::pair<double, double>>> emb(n);
        for (long i = 0; i < n; ++i) {
            std::vector<Rat> c(n, Rat(0));
            c[i] = 1;
            FieldElem ei{K, c};
            for (long j = 0; j < n; ++j) {
                BigComplex v = K->embed(ei, static_cast<int>(j), 64);
                emb[i].push_back({v.real().to_double(), v.imag().to_double()});
            }
        }
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                double s = 0;
                for (long k = 0; k < n; ++k)
                    s += emb[i][k].first * emb[j][k].first + emb[i][k].second * emb[j][k].second;
                g[i][j] = s;
            }
    }
    // Cholesky-style decomposition Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    std::vector<std::vector<double>> q = g;
    for (long i = 0; i < n; ++i) {
        for (long j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (long k = i + 1; k < n; ++k)
            for (long l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    double B = bound * (1.0 + 1e-9) + 1e-9;
    std::vector<FieldElem> out;
    std::vector<long> x(n, 0);
    std::vector<double> partial(n + 1, 0.0); // Q contribution of levels > i
    std::vector<double> center(n, 0.0);
    // enumerate from the last coordinate down
    std::function<void(long)> rec = [&](long i) {
        if (i < 0) {
            bool all_zero = true;
            for (long t : x) all_zero = all_zero && t == 0;
            if (all_zero) return;
            std::vector<Rat> c(n);
            for (long t = 0; t < n; ++t) c[t] = Rat(x[t]);
            out.push_back(FieldElem{K, std::move(c)});
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
            double d = (v + ci);
            partial[i] = partial[i + 1] + q[i][i] * d * d;
            rec(i - 1);
        }
        x[i] = 0;
    };
    rec(n - 1);
    return out;
}

std::vector<int> sign_pattern(const FieldElem& x) {
    const FieldPtr& K = x.K;
    std::vector<int> s;
    for (long i = 0; i < K->degree(); ++i) {
        if (!K->root_is_real(static_cast<int>(i))) continue;
        BigComplex v = K->embed(x, static_cast<int>(i), 128);
        if (abs(v.real()) < mpk::exp2i(-96, 64))
            throw Error("sign_pattern: embedding numerically zero");
        s.push_back(v.real().sign());
    }
    return s;
}

bool totally_positive(const FieldElem& x) {
    auto s = sign_pattern(x);
    for (int v : s)
        if (v < 0) return false;
    return true;
}

// --------------------------------------------------------------------------

std::optional<FieldElem> principal_generator(const Ideal& I,
                                             const std::vector<FieldElem>& units) {
    const FieldPtr& K = I.K;
    if (I.den != 1) throw DomainError("principal_generator: ideal must be integral");
    Rat Nq = I.norm();
    if (Nq.get_den() != 1) throw Error("principal_generator: non-integral norm");
    Int N = Nq.get_num();
    long m = K->degree();
    double Nd = mpz_get_d(N.get_mpz_t());

    // bound on the embedding norm of a generator after unit adjustment
    double B;
    if (units.empty()) {
        // finite unit group: all |x^(i)| equal is forced only up to torsion,
        // but |N(x)| = N and m embeddings give Q = m * N^{2/m} at best; for
        // imaginary quadratic Q(x) = 2|x|^2 = 2N exactly.
        B = m * std::pow(Nd, 2.0 / m) + 1.0;
        if (m == 2) B = 2.0 * Nd;
    } else if (units.size() == 1) {
        // one fundamental unit: two archimedean "slots" (real quadratic or
        // quartic CM). ratio r = log of slot-norm quotient lands in
        // [-R/2, R/2] after adjustment.
        auto rts = K->roots(96);
        // collect |u|^2 per distinct archimedean place (conjugate roots collapse)
        std::vector<double> slot;
        std::vector<bool> used(m, false);
        for (long i = 0; i < m; ++i) {
            if (used[i]) continue;
            used[i] = true;
            for (long j = i + 1; j < m; ++j) {
                if (used[j]) continue;
                if ((abs(rts[i].real() - rts[j].real()) < mpk::exp2i(-40, 64)) &&
                    (abs(rts[i].imag() + rts[j].imag()) < mpk::exp2i(-40, 64))) {
                    used[j] = true;
                    break;
                }
            }
            slot.push_back(norm(K->embed(units[0], static_cast<int>(i), 96)).to_double());
        }
        if (slot.size() != 2) throw UnsupportedDegree("principal_generator: expected 2 places");
        double R = std::abs(std::log(slot[0] / slot[1]));
        bool complex_places = m == 4;
        if (complex_places) {
            // Q = 2(|x1|^2 + |x2|^2), |x1|^2 |x2|^2 = N
            B = 4.0 * std::sqrt(Nd) * std::cosh(R / 2.0);
        } else {
            // Q = x1^2 + x2^2, |x1 x2| = N
            B = 2.0 * Nd * std::cosh(R);
        }
        B *= 1.05;
    } else {
        throw UnsupportedDegree("principal_generator: unit rank > 1 not supported");
    }

    for (const auto& x : short_vectors(K, B)) {
        Rat nx = K->norm(x);
        if (nx < 0) nx = -nx;
        if (nx != Nq) continue;
        if (!I.contains(x)) continue;
        if (ideal_principal(x) == I) return x;
    }
    return std::nullopt;
}

bool ideals_equivalent(const Ideal& a, const Ideal& b,
                       const std::vector<FieldElem>& units) {
    Ideal q = ideal_mul(a, ideal_inverse(b));
    Ideal q_int{q.K, q.basis, Int(1)}; // scale by den: principality unaffected
    return principal_generator(q_int, units).has_value();
}

ClassGroup class_group_by_enumeration(const FieldPtr& K,
                                      const std::vector<FieldElem>& units) {
    long m = K->degree();
    double dd = std::abs(mpz_get_d(K->disc().get_mpz_t()));
    long r2 = 0;
    for (long i = 0; i < m; ++i)
        if (!K->root_is_real(static_cast<int>(i))) ++r2;
    r2 /= 2;
    double mfac = 1, mpow = 1;
    for (long i = 1; i <= m; ++i) { mfac *= i; mpow *= m; }
    double mb = std::pow(4.0 / 3.14159265358979, r2) * (mfac / mpow) * std::sqrt(dd);
    long bound = static_cast<long>(std::floor(mb + 1e-9));
    if (bound < 1) bound = 1;

    auto all = ideals_of_norm_up_to(K, bound);
    ClassGroup G;
    std::vector<int> label(all.size(), -1);
    for (size_t i = 0; i < all.size(); ++i) {
        for (size_t j = 0; j < G.reps.size(); ++j) {
            if (ideals_equivalent(all[i], G.reps[j], units)) {
                label[i] = static_cast<int>(j);
                break;
            }
        }
        if (label[i] < 0) {
            G.reps.push_back(all[i]);
            label[i] = static_cast<int>(G.reps.size()) - 1;
        }
    }
    long h = G.h();
    G.mult.assign(h, std::vector<int>(h, -1));
    for (int i = 0; i < h; ++i)
        for (int j = i; j < h; ++j) {
            Ideal p = ideal_mul(G.reps[i], G.reps[j]);
            int lab = -1;
            for (int t = 0; t < h; ++t)
                if (ideals_equivalent(p, G.reps[t], units)) { lab = t; break; }
            if (lab < 0) throw Error("class_group: product escapes class set");
            G.mult[i][j] = G.mult[j][i] = lab;
        }
    G.inv.assign(h, -1);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j)
            if (G.mult[i][j] == 0) G.inv[i] = j;
    G.build_characters();
    return G;
}

Ideal absolute_different(const FieldPtr& K) {
    long n = K->degree();
    // trace form T_ij = Tr(e_i e_j); dual lattice rows = T^{-1}
    QMat T(n, n);
    for (long i = 0; i < n; ++i) {
        std::vector<Rat> ci(n, Rat(0));
        ci[i] = 1;
        FieldElem ei{K, ci};
        for (long j = 0; j < n; ++j) {
            std::vector<Rat> cj(n, Rat(0));
            cj[j] = 1;
            T.at(i, j) = K->trace(ei * FieldElem{K, cj});
        }
    }
    QMat Tinv = nt::inverse(T);
    std::vector<FieldElem> gens;
    for (long i = 0; i < n; ++i) {
        std::vector<Rat> c(n);
        for (long j = 0; j < n; ++j) c[j] = Tinv.at(i, j);
        gens.push_back(FieldElem{K, std::move(c)});
    }
    Ideal codiff = ideal_from_generators(K, gens);
    return ideal_inverse(codiff);
}

// --------------------------------------------------------------------------

BigReal TotallyRealField::regulator(long prec) const {
    long n = degree();
    if (n == 1) return BigReal(1, prec);
    // |det| of an (n-1)x(n-1) minor of the unit log matrix
    long r = n - 1;
    std::vector<std::vector<BigReal>> L;
    for (long i = 0; i < r; ++i) {
        std::vector<BigReal> row;
        for (long j = 0; j < r; ++j)
            row.push_back(log(abs(F->embed(fund_units[i], static_cast<int>(j), prec).real())));
        L.push_back(row);
    }
    if (r == 1) return abs(L[0][0]);
    throw UnsupportedDegree("regulator: rank > 1 not supported for real fields here");
}

FieldElem TotallyRealField::totally_positive_unit() const {
    if (degree() == 1) return F->one();
    const FieldElem& eps = fund_units[0];
    if (totally_positive(eps)) return eps;
    FieldElem e2 = eps * eps;
    return e2;
}

std::optional<FieldElem> TotallyRealField::unit_with_signs(const std::vector<int>& want) const {
    long n = degree();
    std::vector<FieldElem> cands{F->one(), -F->one()};
    if (n == 2) {
        cands.push_back(fund_units[0]);
        cands.push_back(-fund_units[0]);
    }
    for (const auto& u : cands)
        if (sign_pattern(u) == want) return u;
    return std::nullopt;
}

int TotallyRealField::class_of(const Ideal& I) const {
    for (size_t j = 0; j < cls.reps.size(); ++j)
        if (ideals_equivalent(I, cls.reps[j], fund_units)) return static_cast<int>(j);
    throw Error("class_of: no matching class (inconsistent class group)");
}

// --------------------------------------------------------------------------

TotallyRealField build_rational() {
    QPoly mp{Rat(-1), Rat(1)}; // x - 1
    QMat basis = QMat::identity(1);
    auto F = NumberField::create(mp, basis, {{"1", ""}});
    TotallyRealField out;
    out.F = F;
    out.label = "Q";
    out.disc = 1;
    out.different = ideal_ring(F);
    out.cls.reps = {ideal_ring(F)};
    out.cls.mult = {{0}};
    out.cls.inv = {0};
    out.cls.build_characters();
    return out;
}

namespace {

bool squarefree(long D) {
    for (long q = 2; q * q <= D; ++q)
        if (D % (q * q) == 0) return false;
    return true;
}

// smallest solution of x^2 - D y^2 = +-4 (same parity) resp. +-1; the
// fundamental unit of the maximal order is (x + y sqrt(D))/2 resp. x + y sqrt(D)
std::pair<Int, Int> pell_fundamental(long D, bool mod4is1) {
    for (Int y = 1;; ++y) {
        if (y > 100000000) throw InvalidDiscriminant("fundamental unit search exhausted");
        Int Dy2 = D * y * y;
        for (int s : {-1, +1}) {
            Int t = mod4is1 ? Dy2 + 4 * s : Dy2 + s;
            if (t < 0) continue;
            Int x = sqrt(t);
            if (x * x == t) {
                // (x + y sqrt D)/2 is integral only when x = y (mod 2)
                if (mod4is1 && (x - y) % 2 != 0) continue;
                return {x, y};
            }
        }
    }
}

} // namespace

TotallyRealField build_quadratic_real(long D, const PrecisionCtx& ctx) {
    if (D <= 1 || !squarefree(D))
        throw InvalidDiscriminant("build_quadratic_real: D must be squarefree > 1");
    bool m1 = (D % 4 == 1);
    QPoly mp;
    Int disc;
    double theta_lo, theta_hi;
    if (m1) {
        mp = {Rat(-(D - 1) / 4), Rat(-1), Rat(1)}; // x^2 - x - (D-1)/4
        disc = D;
        theta_hi = (1 + std::sqrt(static_cast<double>(D))) / 2;
        theta_lo = (1 - std::sqrt(static_cast<double>(D))) / 2;
    } else {
        mp = {Rat(-D), Rat(0), Rat(1)}; // x^2 - D
        disc = 4 * D;
        theta_hi = std::sqrt(static_cast<double>(D));
        theta_lo = -theta_hi;
    }
    char buf[64];
    auto fmt = [&](double v) {
        snprintf(buf, sizeof buf, "%.18e", v);
        return std::string(buf);
    };
    auto F = NumberField::create(mp, QMat::identity(2), {{fmt(theta_hi), ""}, {fmt(theta_lo), ""}});

    TotallyRealField out;
    out.F = F;
    out.label = "Q(sqrt" + std::to_string(D) + ")";
    out.disc = F->disc();
    if (out.disc != disc) throw Error("build_quadratic_real: discriminant mismatch");

    auto [x, y] = pell_fundamental(D, m1);
    // unit (x + y sqrt(D))/2 if D=1 mod 4 else x + y sqrt(D), in basis coords
    FieldElem eps = F->zero();
    if (m1) {
        // sqrt(D) = 2 theta - 1
        std::vector<Rat> c(2);
        c[0] = nt::ratio(x - y, Int(2));
        c[1] = Rat(y);
        eps = F->from_coords(c);
    } else {
        std::vector<Rat> c(2);
        c[0] = Rat(x);
        c[1] = Rat(y);
        eps = F->from_coords(c);
    }
    Rat nrm = F->norm(eps);
    if (nrm != 1 && nrm != -1) throw Error("build_quadratic_real: unit search failed");
    // normalize eps > 1 at the first embedding
    if (!(abs(F->embed(eps, 0, 96).real()) > BigReal(1, 64))) eps = F->inv(eps);
    if (F->embed(eps, 0, 96).real().sign() < 0) eps = -eps;
    out.fund_units = {eps};
    out.unit_norm_minus_one = (nrm == -1);
    out.different = absolute_different(F);
    out.cls = class_group_by_enumeration(F, out.fund_units);
    (void)ctx;
    return out;
}

// --------------------------------------------------------------------------

FieldElem CMField::from_F(const FieldElem& x) const {
    long n2 = K->degree(), n1 = F.degree();
    std::vector<Rat> c(n2, Rat(0));
    for (long r = 0; r < n2; ++r)
        for (long j = 0; j < n1; ++j) c[r] += f_to_k.at(r, j) * x.c[j];
    return {K, std::move(c)};
}

FieldElem CMField::to_F(const FieldElem& x) const {
    // solve f_to_k * y = x
    long n2 = K->degree(), n1 = F.degree();
    QMat A(n2, n1);
    for (long r = 0; r < n2; ++r)
        for (long j = 0; j < n1; ++j) A.at(r, j) = f_to_k.at(r, j);
    auto y = nt::solve(A, x.c);
    if (!y) throw DomainError("to_F: element not in the base field");
    return {F.F, std::move(*y)};
}

FieldElem CMField::conj_elem(const FieldElem& x) const {
    long n2 = K->degree();
    std::vector<Rat> c(n2, Rat(0));
    for (long r = 0; r < n2; ++r)
        for (long j = 0; j < n2; ++j) c[r] += rho.at(r, j) * x.c[j];
    return {K, std::move(c)};
}

Ideal CMField::conj_ideal(const Ideal& I) const { return ideal_map(I, rho); }

Ideal CMField::ideal_from_F(const Ideal& a) const {
    std::vector<FieldElem> gens;
    for (long i = 0; i < F.degree(); ++i) gens.push_back(from_F(a.element_from_row(i)));
    return ideal_from_generators(K, gens);
}

Ideal CMField::ideal_to_F(const Ideal& I) const {
    long n1 = F.degree(), n2 = K->degree();
    // lattice of the F-image inside K-coords
    ZMat B(n1, n2);
    Int denb(1);
    {
        QMat rows(n1, n2);
        for (long i = 0; i < n1; ++i) {
            std::vector<Rat> c(n1, Rat(0));
            c[i] = 1;
            FieldElem img = from_F(FieldElem{F.F, c});
            for (long j = 0; j < n2; ++j) {
                rows.at(i, j) = img.c[j];
                denb = lcm(denb, Int(img.c[j].get_den()));
            }
        }
        for (long i = 0; i < n1; ++i)
            for (long j = 0; j < n2; ++j) {
                Rat v = rows.at(i, j) * Rat(denb);
                B.at(i, j) = v.get_num();
            }
    }
    auto [inter, den] = lattice_intersect(I.basis, I.den, B, denb);
    if (inter.rows != n1) throw Error("ideal_to_F: intersection has wrong rank");
    // rows are K-coords of F-elements; convert to F-coords
    std::vector<FieldElem> gens;
    for (long i = 0; i < n1; ++i) {
        std::vector<Rat> c(n2);
        for (long j = 0; j < n2; ++j) c[j] = nt::ratio(inter.at(i, j), den);
        gens.push_back(to_F(FieldElem{K, std::move(c)}));
    }
    return ideal_from_generators(F.F, gens);
}

Ideal CMField::rel_different() const {
    // d_K = d_{K/F} * (d_F O_K)
    Ideal dK = absolute_different(K);
    Ideal dFK = ideal_from_F(F.different);
    return ideal_mul(dK, ideal_inverse(dFK));
}

int CMField::class_of(const Ideal& I) const {
    for (size_t j = 0; j < cls.reps.size(); ++j)
        if (ideals_equivalent(I, cls.reps[j], fund_units)) return static_cast<int>(j);
    throw Error("class_of: no matching class (inconsistent class group)");
}

BigReal CMField::regulator(long prec) const {
    long nn = n();
    if (nn == 1) return BigReal(1, prec);
    if (nn == 2) {
        BigComplex u1 = K->embed(fund_units[0], cm_type[0], prec);
        return abs(2L * log(abs(u1)));
    }
    throw UnsupportedDegree("CM regulator: n > 2");
}

// --------------------------------------------------------------------------

CMField build_imaginary_quadratic(long d, const PrecisionCtx& ctx) {
    if (d >= 0 || !squarefree(-d))
        throw InvalidDiscriminant("build_imaginary_quadratic: d must be squarefree < 0");
    bool m1 = ((d % 4 + 4) % 4 == 1);
    QPoly mp;
    if (m1)
        mp = {Rat(-(d - 1) / 4), Rat(-1), Rat(1)}; // theta = (1+sqrt d)/2
    else
        mp = {Rat(-d), Rat(0), Rat(1)}; // theta = sqrt d
    double im = std::sqrt(static_cast<double>(-d));
    char buf[64];
    auto fmt = [&](double v) {
        snprintf(buf, sizeof buf, "%.18e", v);
        return std::string(buf);
    };
    std::vector<std::pair<std::string, std::string>> seeds;
    if (m1)
        seeds = {{"0.5", fmt(im / 2)}, {"0.5", fmt(-im / 2)}};
    else
        seeds = {{"0", fmt(im)}, {"0", fmt(-im)}};
    auto K = NumberField::create(mp, QMat::identity(2), seeds);

    CMField out;
    out.K = K;
    out.F = build_rational();
    out.label = "Q(sqrt" + std::to_string(d) + ")";
    out.f_to_k = QMat(2, 1);
    out.f_to_k.at(0, 0) = 1;
    out.rho = QMat(2, 2);
    if (m1) { // theta-bar = 1 - theta
        out.rho.at(0, 0) = 1; out.rho.at(0, 1) = 1;
        out.rho.at(1, 1) = -1;
    } else { // theta-bar = -theta
        out.rho.at(0, 0) = 1;
        out.rho.at(1, 1) = -1;
    }
    if (m1) {
        out.rel_gen = K->from_coords({Rat(-1), Rat(2)}); // 2 theta - 1 = sqrt(d)
    } else {
        out.rel_gen = K->gen();
    }
    out.cm_type = {0};
    out.conj_root = {1, 0};
    out.disc = K->disc();
    out.w_K = out.disc == -4 ? 4 : (out.disc == -3 ? 6 : 2);
    out.fund_units = {};
    out.cls = class_group_by_enumeration(K, out.fund_units);
    (void)ctx;
    return out;
}

// --------------------------------------------------------------------------

std::vector<Ideal> primes_above(const FieldPtr& K, const Int& disc, long p) {
    if (K->degree() == 1) return {ideal_principal(K->mul_int(K->one(), Rat(p)))};
    if (K->degree() != 2) throw UnsupportedDegree("primes_above: degree > 2");
    FieldElem pe = K->mul_int(K->one(), Rat(p));
    int kr = kronecker(disc, Int(p));
    if (kr == -1) return {ideal_principal(pe)}; // inert
    // find a root of the minimal polynomial mod p
    const QPoly& mp = K->min_poly();
    long b = mpz_class(mp[1].get_num() % p).get_si();
    long c = mpz_class(mp[0].get_num() % p).get_si();
    long root = -1;
    for (long x = 0; x < p; ++x)
        if (((x * x + b * x + c) % p + p) % p == 0) { root = x; break; }
    if (root < 0) throw Error("primes_above: no root found for split/ramified prime");
    FieldElem shifted = K->gen() - K->mul_int(K->one(), Rat(root));
    Ideal P1 = ideal_from_generators(K, {pe, shifted});
    if (kr == 0) return {P1}; // ramified
    // split: second prime is the conjugate root
    long root2 = ((-b - root) % p + p) % p;
    FieldElem shifted2 = K->gen() - K->mul_int(K->one(), Rat(root2));
    Ideal P2 = ideal_from_generators(K, {pe, shifted2});
    return {P1, P2};
}

long ideal_count_of_norm(const TotallyRealField& F, long m) {
    if (m <= 0) return 0;
    if (F.degree() == 1) return 1;
    long count = 1;
    for (const auto& [p, e] : factor(Int(m))) {
        long pl = p.get_si();
        int kr = kronecker(F.disc, p);
        if (kr == 1) count *= (e + 1);
        else if (kr == 0) count *= 1;
        else count *= (e % 2 == 0) ? 1 : 0;
        (void)pl;
        if (count == 0) return 0;
    }
    return count;
}

std::vector<LabeledIdeal> enumerate_ideals(const TotallyRealField& F, long norm_bound) {
    if (norm_bound < 1) throw DomainError("enumerate_ideals: bound must be >= 1");
    if (F.degree() > 2) throw UnsupportedDegree("enumerate_ideals: internal enumeration needs degree <= 2");
    std::vector<LabeledIdeal> out;
    if (F.degree() == 1) {
        for (long m = 1; m <= norm_bound; ++m) {
            out.push_back({ideal_principal(F.F->mul_int(F.F->one(), Rat(m))), m, 0});
        }
        return out;
    }
    // prime data up to the bound
    struct P {
        Ideal ideal;
        long norm;
    };
    std::vector<std::vector<P>> prime_groups; // conjugate groups per rational prime
    for (long p = 2; p <= norm_bound; ++p) {
        bool isp = true;
        for (long q = 2; q * q <= p; ++q)
            if (p % q == 0) { isp = false; break; }
        if (!isp) continue;
        int kr = kronecker(F.disc, Int(p));
        std::vector<P> group;
        if (kr == -1) {
            if (p * p <= norm_bound) {
                auto pr = primes_above(F.F, F.disc, p);
                group.push_back({pr[0], p * p});
            }
        } else {
            auto pr = primes_above(F.F, F.disc, p);
            for (const auto& q : pr) group.push_back({q, p});
        }
        if (!group.empty()) prime_groups.push_back(group);
    }
    // multiplicative enumeration
    std::vector<std::pair<Ideal, long>> acc{{ideal_ring(F.F), 1}};
    for (const auto& group : prime_groups) {
        std::vector<std::pair<Ideal, long>> next;
        for (const auto& [I, nI] : acc) {
            // exponents per prime in the group
            std::function<void(size_t, Ideal, long)> rec = [&](size_t k, Ideal cur, long n) {
                if (k == group.size()) {
                    next.push_back({cur, n});
                    return;
                }
                rec(k + 1, cur, n);
                Ideal step = cur;
                long nn = n;
                while (true) {
                    nn *= group[k].norm;
                    if (nn > norm_bound) break;
                    step = ideal_mul(step, group[k].ideal);
                    rec(k + 1, step, nn);
                }
            };
            rec(0, I, nI);
        }
        acc = std::move(next);
    }
    for (auto& [I, n] : acc) out.push_back({I, n, F.class_of(I)});
    std::sort(out.begin(), out.end(), [](const LabeledIdeal& a, const LabeledIdeal& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        return a.ideal.basis.a < b.ideal.basis.a;
    });
    return out;
}

} // namespace starkforge::fields
