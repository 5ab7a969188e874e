#pragma once

// Exact dense linear algebra over Q: fraction-free echelon forms, canonical
// subspaces, characteristic polynomials, rational spectra, Jordan data.

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "mcirr/matrix.hpp"
#include "mcirr/poly.hpp"

namespace mcirr {

struct Echelon {
    Mat reduced;                      // reduced row echelon form, same shape as the input
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
    std::size_t rank() const { return pivots.size(); }
};

namespace detail {

using IntRow = std::vector<Integer>;

// Each row scaled by the lcm of its denominators; the row space is unchanged.
inline std::vector<IntRow> integer_rows(const Mat& m, std::vector<Integer>* scales = nullptr) {
    std::vector<IntRow> a(m.rows(), IntRow(m.cols()));
    if (scales) scales->assign(m.rows(), Integer(1));
    Integer l, f;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            mpz_divexact(f.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
            a[i][j] = m(i, j).get_num() * f;
        }
        if (scales) (*scales)[i] = l;
    }
    return a;
}

}  // namespace detail

/// Reduced row echelon form by fraction-free (Bareiss) Gauss-Jordan
/// elimination on the integer-scaled rows. Every intermediate entry is a
/// minor of the scaled matrix, so all divisions are exact; the rationals
/// are only formed in the final normalization.
inline Echelon rref(const Mat& m) {
    const std::size_t R = m.rows(), C = m.cols();
    auto a = detail::integer_rows(m);
    Integer prev = 1, t;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && a[p][c] == 0) ++p;
        if (p == R) continue;
        std::swap(a[p], a[r]);
        const Integer piv = a[r][c];
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r) continue;
            const Integer f = a[i][c];
            for (std::size_t j = 0; j < C; ++j) {
                if (j == c) continue;
                // a[i][j] = (piv * a[i][j] - f * a[r][j]) / prev
                mpz_mul(t.get_mpz_t(), f.get_mpz_t(), a[r][j].get_mpz_t());
                mpz_mul(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), piv.get_mpz_t());
                mpz_sub(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), t.get_mpz_t());
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    Echelon e{Mat(R, C), pivots};
    // After the last step every pivot entry equals `prev`.
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < C; ++j) {
            if (a[i][j] == 0) continue;
            Scalar& x = e.reduced(i, j);
            x.get_num() = a[i][j];
            x.get_den() = prev;
            x.canonicalize();
        }
    return e;
}

inline std::size_t rank(const Mat& m) { return rref(m).rank(); }

namespace detail {

using SparseRow = std::vector<std::pair<std::size_t, Integer>>;  // sorted by column

// a <- x a - y b, then divided by its content.
inline SparseRow combine(const SparseRow& a, const Integer& x, const SparseRow& b, const Integer& y) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    Integer t, g = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            t = x * a[i].second;
            out.emplace_back(a[i++].first, t);
        } else if (i == a.size() || b[j].first < a[i].first) {
            t = -y * b[j].second;
            out.emplace_back(b[j++].first, t);
        } else {
            t = x * a[i].second - y * b[j].second;
            if (t != 0) out.emplace_back(a[i].first, t);
            ++i, ++j;
        }
    }
    for (const auto& e : out) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g > 1)
        for (auto& e : out) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
    return out;
}

}  // namespace detail

/// Rank by row echelon elimination on sparse integer rows; the same value
/// as rank(m), much faster on the sparse commutator systems.
inline std::size_t sparse_rank(const Mat& m) {
    const std::size_t C = m.cols();
    std::vector<detail::SparseRow> rows;
    {
        const auto ints = detail::integer_rows(m);
        for (const auto& r : ints) {
            detail::SparseRow s;
            for (std::size_t j = 0; j < C; ++j)
                if (r[j] != 0) s.emplace_back(j, r[j]);
            if (!s.empty()) rows.push_back(std::move(s));
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<detail::SparseRow> pivot(C);
    std::size_t r = 0;
    for (auto& row : rows) {
        while (!row.empty()) {
            const std::size_t c = row.front().first;
            if (pivot[c].empty()) {
                pivot[c] = std::move(row);
                ++r;
                break;
            }
            const Integer x = pivot[c].front().second, y = row.front().second;
            row = detail::combine(row, x, pivot[c], y);
        }
        if (r == C) break;
    }
    return r;
}

/// A linear subspace of Q^d in canonical form: the basis columns are the
/// column-reduced echelon form (leftmost pivots), so equal subspaces have
/// bitwise identical representations.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(std::size_t ambient) { return Subspace(ambient); }
    static Subspace full(std::size_t ambient) { return span(Mat::identity(ambient)); }

    /// Span of the columns of `columns`.
    static Subspace span(const Mat& columns) {
        Subspace s(columns.rows());
        if (columns.cols() == 0) return s;
        const Echelon e = rref(columns.transpose());
        s.pivots_ = e.pivots;
        s.basis_ = Mat(columns.rows(), e.rank());
        for (std::size_t k = 0; k < e.rank(); ++k)
            for (std::size_t i = 0; i < columns.rows(); ++i) s.basis_(i, k) = e.reduced(k, i);
        return s;
    }

    static Subspace span(std::size_t ambient, const std::vector<Vec>& vectors) {
        Mat cols(ambient, vectors.size());
        for (std::size_t k = 0; k < vectors.size(); ++k) {
            if (vectors[k].size() != ambient) throw validation_error("span: vector length differs from ambient dimension");
            for (std::size_t i = 0; i < ambient; ++i) cols(i, k) = vectors[k][i];
        }
        return span(cols);
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return pivots_.size(); }
    const Mat& basis() const { return basis_; }
    const std::vector<std::size_t>& pivot_rows() const { return pivots_; }
    Vec vector(std::size_t k) const { return basis_.col(k); }

    /// Coordinates not used as pivots; the coordinate subspace on these rows
    /// is a complement of this subspace.
    std::vector<std::size_t> free_rows() const {
        std::vector<std::size_t> out;
        std::size_t p = 0;
        for (std::size_t i = 0; i < ambient_; ++i) {
            if (p < pivots_.size() && pivots_[p] == i) {
                ++p;
                continue;
            }
            out.push_back(i);
        }
        return out;
    }

    /// v minus its component in this subspace along the free-row complement.
    Vec reduce(Vec v) const {
        if (v.size() != ambient_) throw validation_error("vector length differs from ambient dimension");
        for (std::size_t k = 0; k < pivots_.size(); ++k) {
            const Scalar f = v[pivots_[k]];
            if (sgn(f) == 0) continue;
            for (std::size_t i = 0; i < ambient_; ++i)
                if (sgn(basis_(i, k)) != 0) v[i] -= f * basis_(i, k);
        }
        return v;
    }

    bool contains(const Vec& v) const { return is_zero(reduce(v)); }

    bool contains(const Subspace& other) const {
        for (std::size_t k = 0; k < other.dim(); ++k)
            if (!contains(other.vector(k))) return false;
        return true;
    }

    friend Subspace operator+(const Subspace& a, const Subspace& b) {
        if (a.ambient_ != b.ambient_) throw validation_error("subspace sum: ambient dimensions differ");
        return span(hstack({a.basis_, b.basis_}));
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
    }

private:
    explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(ambient, 0) {}

    std::size_t ambient_ = 0;
    Mat basis_;
    std::vector<std::size_t> pivots_;
};

struct NullspaceResult {
    std::size_t rank;
    Subspace nullspace;
};

/// Rank and right nullspace {v : m v = 0}.
inline NullspaceResult rref_nullspace(const Mat& m) {
    const Echelon e = rref(m);
    const std::size_t C = m.cols();
    std::vector<bool> is_pivot(C, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vec> vs;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        Vec v(C);
        v[f] = 1;
        for (std::size_t k = 0; k < e.rank(); ++k) v[e.pivots[k]] = -e.reduced(k, f);
        vs.push_back(std::move(v));
    }
    return {e.rank(), Subspace::span(C, vs)};
}

inline Subspace nullspace(const Mat& m) { return rref_nullspace(m).nullspace; }

inline Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw validation_error("subspace intersection: ambient dimensions differ");
    if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient_dim());
    // a x = b y  <=>  [a | -b] (x, y) = 0
    const Subspace ker = nullspace(hstack({a.basis(), -b.basis()}));
    std::vector<Vec> vs;
    for (std::size_t k = 0; k < ker.dim(); ++k) {
        Vec xy = ker.vector(k);
        Vec x(xy.begin(), xy.begin() + static_cast<std::ptrdiff_t>(a.dim()));
        vs.push_back(a.basis() * x);
    }
    return Subspace::span(a.ambient_dim(), vs);
}

/// Exact determinant by Bareiss elimination.
inline Scalar determinant(const Mat& m) {
    if (!m.is_square()) throw validation_error("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    std::vector<Integer> scales;
    auto a = detail::integer_rows(m, &scales);
    Scalar scale = 1;
    for (const auto& s : scales) scale *= s;
    Integer prev = 1, t;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_mul(t.get_mpz_t(), a[i][k].get_mpz_t(), a[k][j].get_mpz_t());
                mpz_mul(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), a[k][k].get_mpz_t());
                mpz_sub(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), t.get_mpz_t());
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return Scalar(sign * a[n - 1][n - 1]) / scale;
}

/// Inverse; throws precondition_error when singular.
inline Mat inverse(const Mat& m) {
    if (!m.is_square()) throw validation_error("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    const Echelon e = rref(hstack({m, Mat::identity(n)}));
    if (e.rank() < n || (n > 0 && e.pivots[n - 1] != n - 1)) throw precondition_error("matrix is singular");
    return e.reduced.block(0, n, n, n);
}

/// Matrix of the map X -> A X - X B on row-major vec(X), X of shape
/// rows(A) x rows(B).
inline Mat sylvester_operator(const Mat& A, const Mat& B) {
    const std::size_t p = A.rows(), q = B.rows();
    Mat op(p * q, p * q);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            const std::size_t row = i * q + j;
            for (std::size_t k = 0; k < p; ++k)
                if (sgn(A(i, k)) != 0) op(row, k * q + j) += A(i, k);
            for (std::size_t l = 0; l < q; ++l)
                if (sgn(B(l, j)) != 0) op(row, i * q + l) -= B(l, j);
        }
    return op;
}

/// dim { X : X m = m X }.
inline std::size_t centralizer_dim(const Mat& m) {
    const std::size_t n = m.rows();
    return n * n - sparse_rank(sylvester_operator(m, m));
}

/// char(x) = det(x I - m), via similarity reduction to Hessenberg form.
inline Poly charpoly(const Mat& m) {
    if (!m.is_square()) throw validation_error("characteristic polynomial of a non-square matrix");
    const std::size_t n = m.rows();
    Mat h = m;
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t p = j + 1;
        while (p < n && sgn(h(p, j)) == 0) ++p;
        if (p == n) continue;
        if (p != j + 1) {
            for (std::size_t c = 0; c < n; ++c) std::swap(h(p, c), h(j + 1, c));
            for (std::size_t r = 0; r < n; ++r) std::swap(h(r, p), h(r, j + 1));
        }
        const Scalar piv = h(j + 1, j);
        for (std::size_t i = j + 2; i < n; ++i) {
            if (sgn(h(i, j)) == 0) continue;
            const Scalar f = h(i, j) / piv;
            for (std::size_t c = 0; c < n; ++c) h(i, c) -= f * h(j + 1, c);
            for (std::size_t r = 0; r < n; ++r) h(r, j + 1) += f * h(r, i);
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_{i,k} (prod_{l=i+1}^{k} h_{l,l-1}) p_{i-1}
    std::vector<Poly> p(n + 1);
    p[0] = Poly::constant(1);
    for (std::size_t k = 1; k <= n; ++k) {
        p[k] = Poly::linear_root(h(k - 1, k - 1)) * p[k - 1];
        Scalar t = 1;
        for (std::size_t i = k - 1; i-- > 0;) {
            t *= h(i + 1, i);
            if (sgn(t) == 0) break;
            p[k] = p[k] - (t * h(i, k - 1)) * p[i];
        }
    }
    return p[n];
}

namespace detail {

inline void factor_into(Integer n, std::map<Integer, int>& out);

inline Integer pollard_brent(const Integer& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, g = 1, q = 1, ys;
        const Integer cc = c;
        unsigned long r = 1;
        auto f = [&](const Integer& v) { Integer w = v * v + cc; mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t()); return w; };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(128UL, r - k); ++i) {
                    y = f(y);
                    Integer d = x - y;
                    q = q * abs(d);
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += 128;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                Integer d = x - ys;
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(Integer n, std::map<Integer, int>& out) {
    if (n <= 1) return;
    for (unsigned long p = 2; p < 2000 && Integer(p) * p <= n; ++p) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[Integer(p)];
            n /= p;
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0) {
        ++out[n];
        return;
    }
    const Integer d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

/// Positive divisors of |n| (n != 0), ascending.
inline std::vector<Integer> divisors(const Integer& n) {
    std::map<Integer, int> f;
    detail::factor_into(abs(n), f);
    std::vector<Integer> ds{Integer(1)};
    for (const auto& [p, e] : f) {
        const std::size_t base = ds.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

struct Eigenvalue {
    Scalar value;
    std::size_t multiplicity;
    friend bool operator==(const Eigenvalue&, const Eigenvalue&) = default;
};

struct Spectrum {
    std::vector<Eigenvalue> eigenvalues;  // rational eigenvalues, in canonical order
    bool fully_rational = false;
};

/// Rational roots of p with multiplicities, in canonical order.
inline std::vector<Eigenvalue> rational_roots(Poly p) {
    std::vector<Eigenvalue> out;
    if (p.degree() <= 0) return out;
    std::size_t zeros = 0;
    while (sgn(p.coeff(zeros)) == 0) ++zeros;
    if (zeros > 0) {
        out.push_back({Scalar(0), zeros});
        p = Poly(std::vector<Scalar>(p.coeffs().begin() + static_cast<std::ptrdiff_t>(zeros), p.coeffs().end()));
    }
    if (p.degree() <= 0) return out;
    // primitive integer multiple
    Integer l = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> ic;
    for (const auto& c : p.coeffs()) ic.push_back(Integer(c * l));
    const auto num_divs = divisors(ic.front());
    const auto den_divs = divisors(ic.back());
    std::vector<Scalar> candidates;
    for (const auto& a : num_divs)
        for (const auto& b : den_divs) {
            Scalar q(a, b);
            q.canonicalize();
            candidates.push_back(q);
            candidates.push_back(-q);
        }
    std::sort(candidates.begin(), candidates.end(), canonical_less);
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& c : candidates) {
        if (p.degree() <= 0) break;
        std::size_t mult = 0;
        while (p.degree() > 0 && sgn(p.eval(c)) == 0) {
            p = divmod(p, Poly::linear_root(c)).first;
            ++mult;
        }
        if (mult) out.push_back({c, mult});
    }
    std::sort(out.begin(), out.end(), [](const Eigenvalue& a, const Eigenvalue& b) { return canonical_less(a.value, b.value); });
    return out;
}

inline Spectrum rational_spectrum(const Mat& m) {
    if (!m.is_square()) throw validation_error("spectrum of a non-square matrix");
    Spectrum s;
    s.eigenvalues = rational_roots(charpoly(m));
    std::size_t total = 0;
    for (const auto& e : s.eigenvalues) total += e.multiplicity;
    s.fully_rational = total == m.rows();
    return s;
}

/// Transpose (conjugate) of an integer partition.
inline std::vector<std::size_t> conjugate_partition(std::vector<std::size_t> parts) {
    std::sort(parts.begin(), parts.end(), std::greater<>());
    std::vector<std::size_t> out;
    if (parts.empty()) return out;
    for (std::size_t k = 1; k <= parts.front(); ++k) {
        std::size_t c = 0;
        for (auto p : parts)
            if (p >= k) ++c;
        out.push_back(c);
    }
    return out;
}

/// Jordan block sizes at lambda, descending; empty if lambda is not an eigenvalue.
/// Uses the rank sequence of (m - lambda I)^k.
inline std::vector<std::size_t> jordan_partition(const Mat& m, const Scalar& lambda) {
    if (!m.is_square()) throw validation_error("Jordan partition of a non-square matrix");
    const std::size_t n = m.rows();
    const Mat N = m - Mat::scalar(n, lambda);
    std::vector<std::size_t> ranks{n};
    Mat power = Mat::identity(n);
    while (true) {
        power = power * N;
        const std::size_t r = rank(power);
        if (r == ranks.back()) break;
        ranks.push_back(r);
    }
    // blocks of size >= k: ranks[k-1] - ranks[k]
    std::vector<std::size_t> at_least;
    for (std::size_t k = 1; k < ranks.size(); ++k) at_least.push_back(ranks[k - 1] - ranks[k]);
    std::vector<std::size_t> parts;
    for (std::size_t k = 0; k < at_least.size(); ++k) {
        const std::size_t next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
        for (std::size_t c = 0; c < at_least[k] - next; ++c) parts.push_back(k + 1);
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return parts;
}

/// True iff the minimal polynomial is squarefree: s(m) = 0 for the
/// squarefree part s of the characteristic polynomial.
inline bool is_semisimple(const Mat& m) {
    if (!m.is_square()) throw validation_error("semisimplicity of a non-square matrix");
    const Poly p = charpoly(m);
    const Poly s = divmod(p, gcd(p, p.derivative())).first;
    return s.eval(m).is_zero();
}

}  // namespace mcirr
