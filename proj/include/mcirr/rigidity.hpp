#pragma once

// Commutant dimensions, index of rigidity, irreducibility and simultaneous
// similarity of tuples.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mcirr/convolution.hpp"
#include "mcirr/spectral.hpp"

namespace mcirr {

/// dim of { C upper block-Toeplitz : A C = C A } for the block-Toeplitz
/// matrix with top row coeffs (A_m, ..., A_0). Unknowns C_m, ..., C_0.
inline std::size_t block_commutant_dim(const std::vector<Mat>& coeffs) {
    const std::size_t b = coeffs.size();
    if (b == 0) return 0;
    const std::size_t n = coeffs.front().rows(), nn = n * n;
    std::vector<Mat> sylv;
    for (const auto& A : coeffs) sylv.push_back(sylvester_operator(A, A));
    // equation k: sum_{a=0}^{k} [A_{m-a}, C_{m-k+a}] = 0
    Mat sys(b * nn, b * nn);
    for (std::size_t k = 0; k < b; ++k)
        for (std::size_t a = 0; a <= k; ++a) sys.set_block(k * nn, (k - a) * nn, sylv[a]);
    return b * nn - sparse_rank(sys);
}

/// dim C^(i); point 0 uses the derived residue.
inline std::size_t commutant_dim(const Tuple& t, std::size_t i) {
    validate(t);
    return block_commutant_dim(t.full_coeffs(i));
}

struct RigidityReport {
    std::size_t n = 0, r = 0, M = 0;
    std::vector<std::size_t> commutant_dims;
    std::vector<long> local;  // idx_i = dim C^(i) - (m_i + 1) n^2
    long idx = 0;             // sum dim C^(i) - (M - 1) n^2
    /// idx = sum idx_i + 2 n^2
    bool consistent() const {
        long s = 0;
        for (auto x : local) s += x;
        return idx == s + 2 * static_cast<long>(n * n);
    }
};

inline long local_index(const Tuple& t, std::size_t i) {
    const long nn = static_cast<long>(t.n * t.n);
    return static_cast<long>(commutant_dim(t, i)) - static_cast<long>(t.point(i).m + 1) * nn;
}

inline RigidityReport index(const Tuple& t) {
    validate(t);
    RigidityReport rep;
    rep.n = t.n;
    rep.r = t.r();
    rep.M = t.M();
    const long nn = static_cast<long>(t.n * t.n);
    long total = 0;
    for (std::size_t i = 0; i < t.point_count(); ++i) {
        const std::size_t c = block_commutant_dim(t.full_coeffs(i));
        rep.commutant_dims.push_back(c);
        rep.local.push_back(static_cast<long>(c) - static_cast<long>(t.point(i).m + 1) * nn);
        total += static_cast<long>(c);
    }
    rep.idx = total - static_cast<long>(rep.M - 1) * nn;
    return rep;
}

/// sum_i sum_l (n_l^2 + sum_j n_{l,j}^2) - 2 r n^2, one pattern per point.
inline long index_from_spectral(const std::vector<MultiplicityPattern>& types, std::size_t r, std::size_t n) {
    if (types.size() != r + 1) throw validation_error("index_from_spectral: expected r + 1 = " + std::to_string(r + 1) + " patterns");
    long s = 0;
    for (const auto& p : types) {
        if (p.n() != n) throw validation_error("index_from_spectral: pattern " + to_string(p) + " is not of size " + std::to_string(n));
        s += static_cast<long>(p.commutant_dim());
    }
    return s - 2 * static_cast<long>(r * n * n);
}

inline long index_from_spectral(const std::vector<SpectralType>& types, std::size_t r, std::size_t n) {
    std::vector<MultiplicityPattern> ps;
    for (const auto& t : types) ps.push_back(t.pattern());
    return index_from_spectral(ps, r, n);
}

/// sum_j (n_j^2 + dim Z(A^{[j,j]})) + dim Z(A) - n^2 for the Okubo system
/// (x - T) Psi' = A Psi, with A^{[j,j]} the blocks of A on the eigenspaces of T.
inline long okubo_index(const Mat& T, const Mat& A) {
    if (!T.is_square() || !A.is_square() || T.rows() != A.rows())
        throw validation_error("okubo_index: T and A must be square of equal size");
    const std::size_t n = T.rows();
    if (!is_semisimple(T)) throw precondition_error("okubo_index: T is not semisimple");
    const Spectrum sp = rational_spectrum(T);
    if (!sp.fully_rational) throw precondition_error("okubo_index: T has irrational eigenvalues");
    if (!is_semisimple(A)) throw precondition_error("okubo_index: A is not semisimple");
    std::vector<Mat> bases;
    for (const auto& e : sp.eigenvalues) bases.push_back(nullspace(T - Mat::scalar(n, e.value)).basis());
    const Mat P = hstack(bases);
    const Mat B = inverse(P) * A * P;
    long s = 0;
    std::size_t off = 0;
    for (const auto& e : sp.eigenvalues) {
        const Mat blk = B.block(off, off, e.multiplicity, e.multiplicity);
        if (!is_semisimple(blk))
            throw precondition_error("okubo_index: block of A for eigenvalue " + to_string(e.value) + " of T is not semisimple");
        s += static_cast<long>(e.multiplicity * e.multiplicity + centralizer_dim(blk));
        off += e.multiplicity;
    }
    return s + static_cast<long>(centralizer_dim(A)) - static_cast<long>(n * n);
}

namespace detail {

// Incremental row echelon basis of vectors in Q^d.
class EchelonBuilder {
public:
    explicit EchelonBuilder(std::size_t d) : d_(d) {}

    /// Adds v if independent; returns whether the span grew.
    bool insert(Vec v) {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Scalar f = v[pivots_[k]];
            if (sgn(f) == 0) continue;
            for (std::size_t j = pivots_[k]; j < d_; ++j)
                if (sgn(rows_[k][j]) != 0) v[j] -= f * rows_[k][j];
        }
        std::size_t p = 0;
        while (p < d_ && sgn(v[p]) == 0) ++p;
        if (p == d_) return false;
        const Scalar lead = v[p];
        for (auto& x : v) x /= lead;
        // keep earlier rows reduced at the new pivot
        for (auto& row : rows_) {
            const Scalar f = row[p];
            if (sgn(f) == 0) continue;
            for (std::size_t j = p; j < d_; ++j)
                if (sgn(v[j]) != 0) row[j] -= f * v[j];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

    std::size_t dim() const { return rows_.size(); }

private:
    std::size_t d_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

inline Vec flatten(const Mat& m) {
    Vec v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

}  // namespace detail

/// Dimension of the unital algebra generated by the matrices.
inline std::size_t generated_algebra_dim(const std::vector<Mat>& gens, std::size_t n) {
    detail::EchelonBuilder span(n * n);
    std::vector<Mat> frontier{Mat::identity(n)};
    span.insert(detail::flatten(frontier.front()));
    while (!frontier.empty() && span.dim() < n * n) {
        std::vector<Mat> next;
        for (const auto& w : frontier)
            for (const auto& g : gens) {
                Mat gw = g * w;
                if (span.insert(detail::flatten(gw))) next.push_back(std::move(gw));
                if (span.dim() == n * n) return span.dim();
            }
        frontier = std::move(next);
    }
    return span.dim();
}

/// Absolute irreducibility: the coefficients (with the derived residue)
/// generate the full matrix algebra.
inline bool is_irreducible(const Tuple& t) {
    validate(t);
    std::vector<Mat> gens;
    for (std::size_t i = 0; i < t.point_count(); ++i)
        for (auto& a : t.full_coeffs(i)) gens.push_back(std::move(a));
    return generated_algebra_dim(gens, t.n) == t.n * t.n;
}

/// Basis of { S : S A^(i)_j = B^(i)_j S for all slots }.
inline std::vector<Mat> intertwiners(const Tuple& a, const Tuple& b) {
    validate(a);
    validate(b);
    bool same = a.n == b.n && a.r() == b.r();
    for (std::size_t i = 0; same && i < a.point_count(); ++i) same = a.point(i).m == b.point(i).m;
    if (!same) throw validation_error("are_similar: tuples have different skeletons (n, r, m_i)");
    const std::size_t n = a.n, nn = n * n;
    const auto slots = a.slots();
    Mat sys(slots.size() * nn, nn);
    // B S - S A
    for (std::size_t k = 0; k < slots.size(); ++k) sys.set_block(k * nn, 0, sylvester_operator(b.at(slots[k]), a.at(slots[k])));
    const Subspace ker = nullspace(sys);
    std::vector<Mat> out;
    for (std::size_t k = 0; k < ker.dim(); ++k) {
        const Vec v = ker.vector(k);
        Mat S(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) S(i, j) = v[i * n + j];
        out.push_back(std::move(S));
    }
    return out;
}

struct SimilarityResult {
    std::optional<Mat> S;       // invertible with S A S^{-1} = B
    bool exhaustive = true;     // false when "absent" rests on random probes
    std::size_t space_dim = 0;  // dimension of the intertwiner space
};

/// Searches the intertwiner space for an invertible element: basis
/// elements, then fixed-seed integer combinations, then the grid
/// {0..n}^d. det is a polynomial of degree <= n in each coordinate, so
/// vanishing on the whole grid proves it vanishes identically.
inline SimilarityResult find_similarity(const Tuple& a, const Tuple& b, std::size_t grid_limit = 100000) {
    const auto basis = intertwiners(a, b);
    SimilarityResult res;
    res.space_dim = basis.size();
    const std::size_t n = a.n, d = basis.size();
    if (d == 0) return res;
    if (a == b) {
        res.S = Mat::identity(n);
        return res;
    }
    auto combine = [&](const std::vector<long>& c) {
        Mat S(n, n);
        for (std::size_t k = 0; k < d; ++k)
            if (c[k] != 0) S += basis[k] * Scalar(c[k]);
        return S;
    };
    for (const auto& S : basis)
        if (sgn(determinant(S)) != 0) {
            res.S = S;
            return res;
        }
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<long> coef(-7, 7);
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<long> c(d);
        for (auto& x : c) x = coef(rng);
        Mat S = combine(c);
        if (sgn(determinant(S)) != 0) {
            res.S = std::move(S);
            return res;
        }
    }
    double points = 1;
    for (std::size_t k = 0; k < d; ++k) points *= static_cast<double>(n + 1);
    if (points > static_cast<double>(grid_limit)) {
        res.exhaustive = false;
        return res;
    }
    std::vector<long> c(d, 0);
    while (true) {
        std::size_t k = 0;
        while (k < d && c[k] == static_cast<long>(n)) c[k++] = 0;
        if (k == d) break;
        ++c[k];
        Mat S = combine(c);
        if (sgn(determinant(S)) != 0) {
            res.S = std::move(S);
            return res;
        }
    }
    return res;
}

/// An invertible S with S A^(i)_j S^{-1} = B^(i)_j for every slot, if any.
inline std::optional<Mat> are_similar(const Tuple& a, const Tuple& b) { return find_similarity(a, b).S; }

}  // namespace mcirr
