#pragma once

// Convolution matrices on V' = V^M, the subspaces K, L'(mu), L(mu), and the
// middle convolution as the induced action on V' / (K + L(mu)).

#include <cstddef>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include "mcirr/model.hpp"

namespace mcirr {

struct ConvolvedTuple {
    Tuple base;                 // size n*M, same skeleton, coefficients A~^(i)_j
    Scalar mu;
    std::vector<Slot> block_index;
};

namespace detail {

inline std::size_t slot_position(const std::vector<Slot>& slots, Slot s) {
    for (std::size_t k = 0; k < slots.size(); ++k)
        if (slots[k] == s) return k;
    throw validation_error("slot not present in tuple");
}

/// Upper block-Toeplitz matrix with block (a, b) = coeffs[b - a], where
/// coeffs is A_m, A_{m-1}, ..., A_0 (highest first).
inline Mat block_toeplitz(const std::vector<Mat>& coeffs, std::size_t n) {
    const std::size_t b = coeffs.size();
    Mat T(b * n, b * n);
    for (std::size_t r = 0; r < b; ++r)
        for (std::size_t c = r; c < b; ++c) T.set_block(r * n, c * n, coeffs[c - r]);
    return T;
}

inline Mat full_row(const Tuple& t) {
    std::vector<Mat> row;
    for (const auto& s : t.slots()) row.push_back(t.at(s));
    return hstack(row);
}

}  // namespace detail

/// The matrices A~^(i)_j acting on V' in slot order.
inline ConvolvedTuple convolution_matrices(const Tuple& t, const Scalar& mu) {
    validate(t);
    const std::size_t n = t.n, M = t.M();
    const auto slots = t.slots();
    const Mat row = detail::full_row(t);
    ConvolvedTuple out;
    out.mu = mu;
    out.block_index = slots;
    out.base = t;
    out.base.n = n * M;
    for (const auto& s : slots) {
        Mat At(n * M, n * M);
        const auto& p = t.point(s.point);
        const std::size_t rb = detail::slot_position(slots, s);
        At.set_block(rb * n, 0, row);
        if (s.point != 0) At.add_block(rb * n, detail::slot_position(slots, {s.point, 0}) * n, Mat::scalar(n, mu));
        for (std::size_t jp = s.order + 1; jp <= p.m; ++jp)
            At.set_block(detail::slot_position(slots, {s.point, jp}) * n,
                         detail::slot_position(slots, {s.point, jp - s.order}) * n, Mat::scalar(n, mu));
        out.base.at(s) = std::move(At);
    }
    return out;
}

struct KSubspaces {
    std::vector<Subspace> per_point;  // embedded in V'; per_point[0] is zero
    Subspace combined;
};

/// K^(i): kernel of the block-Toeplitz matrix of point i (i >= 1), embedded
/// at the point's block positions; K^(0) = 0.
inline KSubspaces subspace_K(const Tuple& t) {
    validate(t);
    const std::size_t n = t.n, D = n * t.M();
    const auto slots = t.slots();
    KSubspaces out;
    out.per_point.push_back(Subspace::zero(D));
    std::vector<Vec> all;
    for (std::size_t i = 1; i < t.point_count(); ++i) {
        const auto& p = t.point(i);
        const Subspace ker = nullspace(detail::block_toeplitz(p.coeffs, n));
        const std::size_t off = detail::slot_position(slots, {i, p.m}) * n;
        std::vector<Vec> vs;
        for (std::size_t k = 0; k < ker.dim(); ++k) {
            Vec v(D);
            const Vec local = ker.vector(k);
            for (std::size_t a = 0; a < local.size(); ++a) v[off + a] = local[a];
            vs.push_back(v);
            all.push_back(std::move(v));
        }
        out.per_point.push_back(Subspace::span(D, vs));
    }
    out.combined = Subspace::span(D, all);
    return out;
}

/// L'(mu): v^(i)_j = 0 for i != 0, j != 0, v^(i)_0 = -l for all finite i,
/// and (v^(0)_{m_0}, ..., v^(0)_1, l) in the kernel of the infinity block
/// matrix whose corner is A^(0)_0 - mu I.
inline Subspace subspace_Lprime(const Tuple& t, const Scalar& mu) {
    validate(t);
    const std::size_t n = t.n, D = n * t.M(), m0 = t.infinity.m;
    std::vector<Mat> coeffs = t.full_coeffs(0);
    Mat T = detail::block_toeplitz(coeffs, n);
    T.add_block(0, m0 * n, Mat::scalar(n, -mu));
    const Subspace sol = nullspace(T);
    const auto slots = t.slots();
    std::vector<Vec> vs;
    for (std::size_t k = 0; k < sol.dim(); ++k) {
        const Vec x = sol.vector(k);
        Vec v(D);
        for (std::size_t a = 0; a < m0 * n; ++a) v[a] = x[a];
        for (std::size_t i = 1; i < t.point_count(); ++i) {
            const std::size_t off = detail::slot_position(slots, {i, 0}) * n;
            for (std::size_t a = 0; a < n; ++a) v[off + a] = -x[m0 * n + a];
        }
        vs.push_back(std::move(v));
    }
    return Subspace::span(D, vs);
}

/// L(mu) = L'(mu) for mu != 0; L(0) is the kernel of the full coefficient row.
inline Subspace subspace_L(const Tuple& t, const Scalar& mu) {
    if (sgn(mu) != 0) return subspace_Lprime(t, mu);
    validate(t);
    return nullspace(detail::full_row(t));
}

/// Which coordinate complement of W represents the quotient V'/W.
enum class Complement { leftmost_pivots, rightmost_pivots };

struct MCOutcome {
    Tuple result;
    std::vector<std::size_t> dim_K;  // dim K^(i), i = 0..r
    std::size_t dim_L = 0;
    Mat projection;                  // n~ x nM
    Mat section;                     // nM x n~
    Subspace W;                      // K + L(mu)
};

namespace detail {

// Projection along W onto the coordinate subspace of its free rows, and the
// matching coordinate section.
inline std::pair<Mat, Mat> quotient_maps(const Subspace& W) {
    const std::size_t D = W.ambient_dim();
    const auto free = W.free_rows();
    const auto& piv = W.pivot_rows();
    Mat P(free.size(), D), S(D, free.size());
    for (std::size_t q = 0; q < free.size(); ++q) {
        const std::size_t k = free[q];
        P(q, k) = 1;
        for (std::size_t p = 0; p < piv.size(); ++p)
            if (sgn(W.basis()(k, p)) != 0) P(q, piv[p]) -= W.basis()(k, p);
        S(k, q) = 1;
    }
    return {P, S};
}

inline Mat reverse_rows(const Mat& m) {
    Mat out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(m.rows() - 1 - i, j) = m(i, j);
    return out;
}

inline Mat reverse_cols(const Mat& m) { return reverse_rows(m.transpose()).transpose(); }

}  // namespace detail

/// mc_mu: the action of the convolution matrices on V'/(K + L(mu)), written
/// in the coordinates of a coordinate complement. The skeleton is kept;
/// use strip() to drop vanished coefficients.
inline MCOutcome middle_convolution(const Tuple& t, const Scalar& mu,
                                    Complement complement = Complement::leftmost_pivots) {
    const ConvolvedTuple conv = convolution_matrices(t, mu);
    const KSubspaces K = subspace_K(t);
    const Subspace L = subspace_L(t, mu);
    MCOutcome out;
    for (const auto& k : K.per_point) out.dim_K.push_back(k.dim());
    out.dim_L = L.dim();
    out.W = K.combined + L;
    const std::size_t D = out.W.ambient_dim();
    if (out.W.dim() == D)
        throw precondition_error("middle convolution with mu = " + to_string(mu) + " is zero (K + L(mu) is the whole space)");
    if (complement == Complement::leftmost_pivots) {
        std::tie(out.projection, out.section) = detail::quotient_maps(out.W);
    } else {
        const Subspace Wr = Subspace::span(detail::reverse_rows(out.W.basis()));
        auto [P, S] = detail::quotient_maps(Wr);
        out.projection = detail::reverse_cols(P);
        out.section = detail::reverse_rows(S);
    }
    out.result = conv.base;
    out.result.n = out.section.cols();
    for (const auto& s : conv.block_index) out.result.at(s) = out.projection * conv.base.at(s) * out.section;
    return out;
}

/// n~ = nM - dim K - dim L(mu) for mu != 0 (K and L(mu) meet trivially);
/// for mu = 0 the sum is computed directly.
inline std::size_t predicted_size(const Tuple& t, const Scalar& mu) {
    const std::size_t D = t.n * t.M();
    const KSubspaces K = subspace_K(t);
    if (sgn(mu) != 0) return D - K.combined.dim() - subspace_Lprime(t, mu).dim();
    return D - (K.combined + subspace_L(t, mu)).dim();
}

struct InvarianceReport {
    bool K = true;
    bool L = true;
    bool Lprime = true;
    bool all() const { return K && L && Lprime; }
};

inline bool maps_into(const Mat& A, const Subspace& S) {
    for (std::size_t k = 0; k < S.dim(); ++k)
        if (!S.contains(A * S.vector(k))) return false;
    return true;
}

/// Checks A~ K in K, A~ L(mu) in L(mu) and A~ L'(mu) in L'(mu) for every slot.
inline InvarianceReport check_invariance(const Tuple& t, const Scalar& mu) {
    const ConvolvedTuple conv = convolution_matrices(t, mu);
    const Subspace K = subspace_K(t).combined;
    const Subspace L = subspace_L(t, mu);
    const Subspace Lp = subspace_Lprime(t, mu);
    InvarianceReport rep;
    for (const auto& s : conv.block_index) {
        const Mat& A = conv.base.at(s);
        rep.K = rep.K && maps_into(A, K);
        rep.L = rep.L && maps_into(A, L);
        rep.Lprime = rep.Lprime && maps_into(A, Lp);
    }
    return rep;
}

}  // namespace mcirr
