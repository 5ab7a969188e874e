#pragma once

// Reference implementations used only by the tests. Each one is written from
// the textbook definition and shares no code with the library's linear algebra.

#include <cstddef>
#include <vector>

#include "mcirr/mcirr.hpp"

namespace oracle {

using mcirr::Mat;
using mcirr::Scalar;
using mcirr::Vec;

// Plain Gauss-Jordan over Q; returns the reduced rows and pivot columns.
struct GJ {
    std::vector<Vec> rows;
    std::vector<std::size_t> pivots;
};

inline GJ gauss_jordan(const Mat& m) {
    GJ g;
    std::vector<Vec> a(m.rows(), Vec(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        const Scalar inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Scalar f = a[i][c];
            for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
        }
        g.pivots.push_back(c);
        ++r;
    }
    a.resize(r);
    g.rows = std::move(a);
    return g;
}

inline std::size_t gj_rank(const Mat& m) { return gauss_jordan(m).pivots.size(); }

inline std::vector<Vec> gj_nullspace(const Mat& m) {
    const GJ g = gauss_jordan(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : g.pivots) is_pivot[p] = true;
    std::vector<Vec> out;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols());
        v[f] = 1;
        for (std::size_t k = 0; k < g.pivots.size(); ++k) v[g.pivots[k]] = -g.rows[k][f];
        out.push_back(std::move(v));
    }
    return out;
}

inline Mat columns(const std::vector<Vec>& vs, std::size_t ambient) {
    Mat m(ambient, vs.size());
    for (std::size_t k = 0; k < vs.size(); ++k)
        for (std::size_t a = 0; a < ambient; ++a) m(a, k) = vs[k][a];
    return m;
}

inline std::size_t span_dim(const std::vector<Vec>& vs, std::size_t ambient) {
    return vs.empty() ? 0 : gj_rank(columns(vs, ambient));
}

inline bool in_span(const std::vector<Vec>& vs, const Vec& v) {
    std::vector<Vec> w = vs;
    w.push_back(v);
    return span_dim(w, v.size()) == span_dim(vs, v.size());
}

// Fraction-free rank: integer elimination by cross multiplication
// (row_i <- a_rc row_i - a_ic row_r) after clearing denominators.
inline std::size_t integer_rank(const Mat& m) {
    std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            if (a[i][c] == 0) continue;
            const mpz_class x = a[r][c], y = a[i][c];
            mpz_class g = 0;
            for (std::size_t j = c; j < m.cols(); ++j) {
                a[i][j] = x * a[i][j] - y * a[r][j];
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a[i][j].get_mpz_t());
            }
            if (g > 1)
                for (auto& e : a[i]) e /= g;
        }
        ++r;
    }
    return r;
}

// Polynomials as coefficient vectors, lowest degree first.
using P = std::vector<Scalar>;

inline P padd(const P& a, const P& b) {
    P c(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) c[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) c[k] += b[k];
    return c;
}

inline P pmul(const P& a, const P& b) {
    if (a.empty() || b.empty()) return {};
    P c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

inline P cofactor_det(const std::vector<std::vector<P>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return {Scalar(1)};
    if (n == 1) return m[0][0];
    P det;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<P>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<P> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[i][j]);
            minor.push_back(std::move(row));
        }
        P term = pmul(m[0][c], cofactor_det(minor));
        if (c % 2)
            for (auto& x : term) x = -x;
        det = padd(det, term);
    }
    return det;
}

// det(x I - A) by Laplace expansion, lowest degree first, trailing zeros trimmed.
inline P charpoly(const Mat& A) {
    const std::size_t n = A.rows();
    std::vector<std::vector<P>> m(n, std::vector<P>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = i == j ? P{-A(i, j), Scalar(1)} : P{-A(i, j)};
    P c = cofactor_det(m);
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

inline Scalar det(const Mat& A) {
    const std::size_t n = A.rows();
    std::vector<std::vector<P>> m(n, std::vector<P>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = P{A(i, j)};
    const P d = cofactor_det(m);
    return d.empty() ? Scalar(0) : d[0];
}

// dim of block upper-triangular Toeplitz C with A C = C A, built by applying
// the commutator to each elementary unknown.
inline std::size_t commutant_dim(const std::vector<Mat>& coeffs) {
    const std::size_t b = coeffs.size(), n = coeffs.front().rows(), N = b * n;
    Mat A(N, N);
    for (std::size_t r = 0; r < b; ++r)
        for (std::size_t c = r; c < b; ++c)
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) A(r * n + x, c * n + y) = coeffs[c - r](x, y);
    const std::size_t unknowns = b * n * n;
    Mat sys(N * N, unknowns);
    for (std::size_t u = 0; u < unknowns; ++u) {
        const std::size_t k = u / (n * n), x = (u % (n * n)) / n, y = u % n;
        Mat C(N, N);
        for (std::size_t r = 0; r + k < b; ++r) C(r * n + x, (r + k) * n + y) = 1;
        const Mat D = A * C - C * A;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) sys(i * N + j, u) = D(i, j);
    }
    return unknowns - gj_rank(sys);
}

inline std::size_t centralizer_dim(const Mat& A) { return commutant_dim({A}); }

// Slot list in the order (0,m0..1),(1,m1..0),...
struct SlotRef {
    std::size_t point, order;
};

inline std::vector<SlotRef> slot_list(const mcirr::Tuple& t) {
    std::vector<SlotRef> out;
    for (std::size_t j = t.infinity.m; j >= 1; --j) out.push_back({0, j});
    for (std::size_t i = 0; i < t.finite.size(); ++i)
        for (std::size_t j = t.finite[i].m + 1; j-- > 0;) out.push_back({i + 1, j});
    return out;
}

inline const Mat& coeff(const mcirr::Tuple& t, SlotRef s) {
    const auto& p = s.point == 0 ? t.infinity : t.finite[s.point - 1];
    return p.coeffs[p.m - s.order];
}

// The convolution matrix for slot (i, j), written out from the u/v formula
// one output block at a time.
inline Mat convolution_matrix(const mcirr::Tuple& t, const Scalar& mu, std::size_t i, std::size_t j) {
    const auto slots = slot_list(t);
    const std::size_t n = t.n, D = n * slots.size();
    Mat out(D, D);
    auto pos = [&](std::size_t pi, std::size_t pj) {
        for (std::size_t k = 0; k < slots.size(); ++k)
            if (slots[k].point == pi && slots[k].order == pj) return k;
        return slots.size();
    };
    for (std::size_t uk = 0; uk < slots.size(); ++uk) {
        const auto [ip, jp] = slots[uk];
        if (ip != i) continue;
        if (jp > j) {
            const std::size_t vk = pos(i, jp - j);
            for (std::size_t a = 0; a < n; ++a) out(uk * n + a, vk * n + a) += mu;
        } else if (jp == j) {
            for (std::size_t vk = 0; vk < slots.size(); ++vk) {
                const Mat& A = coeff(t, slots[vk]);
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b) out(uk * n + a, vk * n + b) += A(a, b);
            }
            if (i != 0) {
                const std::size_t vk = pos(i, 0);
                for (std::size_t a = 0; a < n; ++a) out(uk * n + a, vk * n + a) += mu;
            }
        }
    }
    return out;
}

// K from its definition: vectors supported on one finite point's block that
// the point's block-Toeplitz matrix kills.
inline std::vector<Vec> K_basis(const mcirr::Tuple& t) {
    const auto slots = slot_list(t);
    const std::size_t n = t.n, D = n * slots.size();
    std::vector<Vec> out;
    for (std::size_t i = 1; i <= t.finite.size(); ++i) {
        const auto& p = t.finite[i - 1];
        const std::size_t b = p.m + 1;
        Mat T(b * n, b * n);
        for (std::size_t r = 0; r < b; ++r)
            for (std::size_t c = r; c < b; ++c)
                for (std::size_t x = 0; x < n; ++x)
                    for (std::size_t y = 0; y < n; ++y) T(r * n + x, c * n + y) = p.coeffs[c - r](x, y);
        std::size_t off = 0;
        while (!(slots[off].point == i)) ++off;
        for (const auto& w : gj_nullspace(T)) {
            Vec v(D);
            for (std::size_t a = 0; a < w.size(); ++a) v[off * n + a] = w[a];
            out.push_back(std::move(v));
        }
    }
    return out;
}

// L(0) from its definition: the kernel of the full coefficient row.
inline std::vector<Vec> L0_basis(const mcirr::Tuple& t) {
    const auto slots = slot_list(t);
    const std::size_t n = t.n;
    Mat row(n, n * slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k) row.set_block(0, k * n, coeff(t, slots[k]));
    return gj_nullspace(row);
}

}  // namespace oracle
