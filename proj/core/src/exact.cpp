#include "starkforge/exact.hpp"

#include <algorithm>

namespace starkforge::nt {

ZMat ZMat::identity(long n) {
    ZMat m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMat::QMat(const ZMat& m) : QMat(m.rows, m.cols) {
    for (size_t i = 0; i < m.a.size(); ++i) a[i] = Rat(m.a[i]);
}

QMat QMat::identity(long n) {
    QMat m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

ZMat mul(const ZMat& x, const ZMat& y) {
    if (x.cols != y.rows) throw DomainError("ZMat mul: shape mismatch");
    ZMat r(x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long k = 0; k < x.cols; ++k) {
            if (x.at(i, k) == 0) continue;
            for (long j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return r;
}

QMat mul(const QMat& x, const QMat& y) {
    if (x.cols != y.rows) throw DomainError("QMat mul: shape mismatch");
    QMat r(x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long k = 0; k < x.cols; ++k) {
            if (x.at(i, k) == 0) continue;
            for (long j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return r;
}

ZMat transpose(const ZMat& x) {
    ZMat r(x.cols, x.rows);
    for (long i = 0; i < x.rows; ++i)
        for (long j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

Int det(const ZMat& m) {
    if (m.rows != m.cols) throw DomainError("det: not square");
    long n = m.rows;
    if (n == 0) return 1;
    ZMat w = m;
    Int prev(1);
    int sign = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            long piv = -1;
            for (long i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (long j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(piv, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                w.at(i, j) = t;
            }
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : -w.at(n - 1, n - 1);
}

Rat det(const QMat& m) {
    if (m.rows != m.cols) throw DomainError("det: not square");
    long n = m.rows;
    QMat w = m;
    Rat d(1);
    for (long k = 0; k < n; ++k) {
        long piv = -1;
        for (long i = k; i < n; ++i)
            if (w.at(i, k) != 0) { piv = i; break; }
        if (piv < 0) return Rat(0);
        if (piv != k) {
            for (long j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(piv, j));
            d = -d;
        }
        d *= w.at(k, k);
        Rat inv = 1 / w.at(k, k);
        for (long i = k + 1; i < n; ++i) {
            if (w.at(i, k) == 0) continue;
            Rat f = w.at(i, k) * inv;
            for (long j = k; j < n; ++j) w.at(i, j) -= f * w.at(k, j);
        }
    }
    return d;
}

QMat inverse(const QMat& m) {
    if (m.rows != m.cols) throw DomainError("inverse: not square");
    long n = m.rows;
    QMat w = m, r = QMat::identity(n);
    for (long k = 0; k < n; ++k) {
        long piv = -1;
        for (long i = k; i < n; ++i)
            if (w.at(i, k) != 0) { piv = i; break; }
        if (piv < 0) throw DomainError("inverse: singular matrix");
        if (piv != k)
            for (long j = 0; j < n; ++j) {
                std::swap(w.at(k, j), w.at(piv, j));
                std::swap(r.at(k, j), r.at(piv, j));
            }
        Rat inv = 1 / w.at(k, k);
        for (long j = 0; j < n; ++j) { w.at(k, j) *= inv; r.at(k, j) *= inv; }
        for (long i = 0; i < n; ++i) {
            if (i == k || w.at(i, k) == 0) continue;
            Rat f = w.at(i, k);
            for (long j = 0; j < n; ++j) {
                w.at(i, j) -= f * w.at(k, j);
                r.at(i, j) -= f * r.at(k, j);
            }
        }
    }
    return r;
}

std::optional<std::vector<Rat>> solve(const QMat& A, const std::vector<Rat>& b) {
    if (A.rows != static_cast<long>(b.size())) throw DomainError("solve: shape mismatch");
    long n = A.rows, m = A.cols;
    QMat w(n, m + 1);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < m; ++j) w.at(i, j) = A.at(i, j);
        w.at(i, m) = b[i];
    }
    std::vector<long> pivot_col;
    long row = 0;
    for (long col = 0; col < m && row < n; ++col) {
        long piv = -1;
        for (long i = row; i < n; ++i)
            if (w.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (long j = 0; j <= m; ++j) std::swap(w.at(row, j), w.at(piv, j));
        Rat inv = 1 / w.at(row, col);
        for (long j = col; j <= m; ++j) w.at(row, j) *= inv;
        for (long i = 0; i < n; ++i) {
            if (i == row || w.at(i, col) == 0) continue;
            Rat f = w.at(i, col);
            for (long j = col; j <= m; ++j) w.at(i, j) -= f * w.at(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (long i = row; i < n; ++i)
        if (w.at(i, m) != 0) return std::nullopt;
    std::vector<Rat> x(m, Rat(0));
    for (long i = 0; i < row; ++i) x[pivot_col[i]] = w.at(i, m);
    return x;
}

ZMat hnf(const ZMat& m) {
    ZMat w = m;
    long n = w.rows, c = w.cols;
    long row = 0;
    for (long col = 0; col < c && row < n; ++col) {
        // euclidean elimination in this column below `row`
        while (true) {
            long piv = -1;
            for (long i = row; i < n; ++i)
                if (w.at(i, col) != 0 && (piv < 0 || abs(w.at(i, col)) < abs(w.at(piv, col))))
                    piv = i;
            if (piv < 0) break;
            if (piv != row)
                for (long j = 0; j < c; ++j) std::swap(w.at(row, j), w.at(piv, j));
            bool clean = true;
            for (long i = row + 1; i < n; ++i) {
                if (w.at(i, col) == 0) continue;
                Int q = w.at(i, col) / w.at(row, col); // truncated division
                if (q != 0)
                    for (long j = 0; j < c; ++j) w.at(i, j) -= q * w.at(row, j);
                if (w.at(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (w.at(row, col) == 0) continue;
        if (w.at(row, col) < 0)
            for (long j = 0; j < c; ++j) w.at(row, j) = -w.at(row, j);
        // reduce entries above the pivot into [0, pivot)
        for (long i = 0; i < row; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), w.at(i, col).get_mpz_t(), w.at(row, col).get_mpz_t());
            if (q != 0)
                for (long j = 0; j < c; ++j) w.at(i, j) -= q * w.at(row, j);
        }
        ++row;
    }
    ZMat r(row, c);
    for (long i = 0; i < row; ++i)
        for (long j = 0; j < c; ++j) r.at(i, j) = w.at(i, j);
    return r;
}

std::vector<Int> snf(const ZMat& m, ZMat* U, ZMat* V) {
    ZMat w = m;
    long n = w.rows, c = w.cols;
    ZMat u = ZMat::identity(n), v = ZMat::identity(c);
    long k = 0;
    auto row_op = [&](long i, long j, const Int& q) { // row_i -= q * row_j
        for (long t = 0; t < c; ++t) w.at(i, t) -= q * w.at(j, t);
        for (long t = 0; t < n; ++t) u.at(i, t) -= q * u.at(j, t);
    };
    auto col_op = [&](long i, long j, const Int& q) { // col_i -= q * col_j
        for (long t = 0; t < n; ++t) w.at(t, i) -= q * w.at(t, j);
        for (long t = 0; t < c; ++t) v.at(t, i) -= q * v.at(t, j);
    };
    auto row_swap = [&](long i, long j) {
        for (long t = 0; t < c; ++t) std::swap(w.at(i, t), w.at(j, t));
        for (long t = 0; t < n; ++t) std::swap(u.at(i, t), u.at(j, t));
    };
    auto col_swap = [&](long i, long j) {
        for (long t = 0; t < n; ++t) std::swap(w.at(t, i), w.at(t, j));
        for (long t = 0; t < c; ++t) std::swap(v.at(t, i), v.at(t, j));
    };
    long steps = std::min(n, c);
    while (k < steps) {
        // find a nonzero pivot of minimal absolute value in the k.. block
        long pi = -1, pj = -1;
        for (long i = k; i < n; ++i)
            for (long j = k; j < c; ++j)
                if (w.at(i, j) != 0 &&
                    (pi < 0 || abs(w.at(i, j)) < abs(w.at(pi, pj)))) { pi = i; pj = j; }
        if (pi < 0) break;
        if (pi != k) row_swap(pi, k);
        if (pj != k) col_swap(pj, k);
        bool dirty = false;
        for (long i = k + 1; i < n; ++i) {
            if (w.at(i, k) == 0) continue;
            Int q = w.at(i, k) / w.at(k, k);
            row_op(i, k, q);
            if (w.at(i, k) != 0) dirty = true;
        }
        for (long j = k + 1; j < c; ++j) {
            if (w.at(k, j) == 0) continue;
            Int q = w.at(k, j) / w.at(k, k);
            col_op(j, k, q);
            if (w.at(k, j) != 0) dirty = true;
        }
        if (dirty) continue;
        // divisibility fix-up: pivot must divide everything below-right
        bool fixed = true;
        for (long i = k + 1; i < n && fixed; ++i)
            for (long j = k + 1; j < c && fixed; ++j)
                if (w.at(i, j) % w.at(k, k) != 0) {
                    row_op(k, i, Int(-1)); // add row i to row k, restart
                    fixed = false;
                }
        if (!fixed) continue;
        if (w.at(k, k) < 0) { row_op(k, k, Int(2)); /* negate: r -= 2r */ }
        ++k;
    }
    std::vector<Int> d(steps, Int(0));
    for (long i = 0; i < k; ++i) d[i] = w.at(i, i);
    if (U) *U = u;
    if (V) *V = v;
    return d;
}

ZMat lll(const ZMat& basis) {
    long n = basis.rows, m = basis.cols;
    std::vector<std::vector<Rat>> B(n, std::vector<Rat>(m));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j) B[i][j] = Rat(basis.at(i, j));

    auto dot = [&](const std::vector<Rat>& x, const std::vector<Rat>& y) {
        Rat s(0);
        for (long j = 0; j < m; ++j) s += x[j] * y[j];
        return s;
    };

    std::vector<std::vector<Rat>> star = B;
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> norm2(n);

    auto gram_schmidt = [&]() {
        for (long i = 0; i < n; ++i) {
            star[i] = B[i];
            for (long j = 0; j < i; ++j) {
                mu[i][j] = norm2[j] == 0 ? Rat(0) : dot(B[i], star[j]) / norm2[j];
                for (long t = 0; t < m; ++t) star[i][t] -= mu[i][j] * star[j][t];
            }
            norm2[i] = dot(star[i], star[i]);
        }
    };
    gram_schmidt();

    auto size_reduce = [&](long k, long j) {
        Rat q = mu[k][j];
        Int r;
        // nearest integer
        mpz_class num = q.get_num(), den = q.get_den();
        mpz_class top = 2 * num + den;
        mpz_class bot = 2 * den;
        mpz_fdiv_q(r.get_mpz_t(), top.get_mpz_t(), bot.get_mpz_t());
        if (r == 0) return;
        for (long t = 0; t < m; ++t) B[k][t] -= Rat(r) * B[j][t];
        gram_schmidt();
    };

    Rat delta(3, 4);
    long k = 1;
    int guard = 0;
    while (k < n && ++guard < 100000) {
        for (long j = k - 1; j >= 0; --j) size_reduce(k, j);
        Rat lhs = norm2[k];
        Rat rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(B[k], B[k - 1]);
            gram_schmidt();
            k = std::max(1L, k - 1);
        }
    }

    ZMat out(n, m);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j) {
            if (B[i][j].get_den() != 1) throw Error("lll: internal non-integer basis");
            out.at(i, j) = B[i][j].get_num();
        }
    return out;
}

int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

std::vector<PrimePower> factor(Int n) {
    if (n < 0) n = -n;
    if (n <= 1) return {};
    std::vector<PrimePower> out;
    auto strip = [&](const Int& p) {
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.push_back({p, e});
    };
    strip(Int(2));
    strip(Int(3));
    Int p(5);
    int step = 2;
    while (p * p <= n) {
        if (is_probable_prime(n)) break;
        strip(p);
        p += step;
        step = 6 - step;
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

void poly_trim(QPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly poly_mul(const QPoly& f, const QPoly& g) {
    if (f.empty() || g.empty()) return {};
    QPoly r(f.size() + g.size() - 1, Rat(0));
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    }
    poly_trim(r);
    return r;
}

QPoly poly_add(const QPoly& f, const QPoly& g) {
    QPoly r(std::max(f.size(), g.size()), Rat(0));
    for (size_t i = 0; i < f.size(); ++i) r[i] += f[i];
    for (size_t i = 0; i < g.size(); ++i) r[i] += g[i];
    poly_trim(r);
    return r;
}

QPoly poly_scale(const QPoly& f, const Rat& c) {
    QPoly r = f;
    for (auto& x : r) x *= c;
    poly_trim(r);
    return r;
}

QPoly poly_mod(QPoly f, const QPoly& m) {
    if (m.empty() || m.back() != 1) throw DomainError("poly_mod: modulus must be monic");
    poly_trim(f);
    long dm = static_cast<long>(m.size()) - 1;
    while (static_cast<long>(f.size()) - 1 >= dm) {
        Rat c = f.back();
        long shift = static_cast<long>(f.size()) - 1 - dm;
        for (long i = 0; i < dm; ++i) f[shift + i] -= c * m[i];
        f.pop_back();
        poly_trim(f);
        if (f.empty()) break;
    }
    return f;
}

QPoly poly_derivative(const QPoly& f) {
    if (f.size() <= 1) return {};
    QPoly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * Rat(static_cast<long>(i));
    poly_trim(r);
    return r;
}

BigComplex poly_eval(const QPoly& f, const BigComplex& x, long prec) {
    BigComplex acc(0, 0, prec);
    for (size_t i = f.size(); i-- > 0;) {
        acc = acc * x + BigComplex(BigReal(f[i], prec));
    }
    return acc;
}

QPoly cyclotomic(unsigned m) {
    auto mk = [](std::initializer_list<long> cs) {
        QPoly p;
        for (long c : cs) p.emplace_back(c);
        return p;
    };
    switch (m) {
        case 1: return mk({-1, 1});
        case 2: return mk({1, 1});
        case 3: return mk({1, 1, 1});
        case 4: return mk({1, 0, 1});
        case 5: return mk({1, 1, 1, 1, 1});
        case 6: return mk({1, -1, 1});
        case 7: return mk({1, 1, 1, 1, 1, 1, 1});
        case 8: return mk({1, 0, 0, 0, 1});
        case 9: return mk({1, 0, 0, 1, 0, 0, 1});
        case 10: return mk({1, -1, 1, -1, 1});
        case 12: return mk({1, 0, -1, 0, 1});
        case 16: return mk({1, 0, 0, 0, 0, 0, 0, 0, 1});
        default: throw DomainError("cyclotomic: unsupported order " + std::to_string(m));
    }
}

} // namespace starkforge::nt
