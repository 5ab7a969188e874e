#pragma once

// Tuples of coefficient matrices for systems
//
//   dY/dz = ( - sum_{j=1}^{m_0} A^(0)_j z^(j-1)
//             + sum_{i=1}^{r} sum_{j=0}^{m_i} A^(i)_j / (z - t_i)^(j+1) ) Y
//
// together with addition, padding, stripping and the named example systems.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mcirr/exactla.hpp"

namespace mcirr {

/// One coefficient slot (i, j): point i (0 = infinity), order j.
struct Slot {
    std::size_t point = 0;
    std::size_t order = 0;
    friend bool operator==(const Slot&, const Slot&) = default;
};

struct SingularPoint {
    std::optional<Scalar> location;  // empty at infinity
    std::size_t m = 0;               // Poincare-rank parameter
    std::vector<Mat> coeffs;         // A_m, A_{m-1}, ..., A_0 (finite) or ..., A_1 (infinity)

    static SingularPoint at_infinity_point(std::vector<Mat> coeffs) {
        return {std::nullopt, coeffs.size(), std::move(coeffs)};
    }
    static SingularPoint finite_point(Scalar t, std::vector<Mat> coeffs) {
        if (coeffs.empty()) throw validation_error("a finite point needs at least A_0");
        const std::size_t m = coeffs.size() - 1;
        return {std::move(t), m, std::move(coeffs)};
    }

    bool at_infinity() const { return !location.has_value(); }
    std::size_t lowest_order() const { return at_infinity() ? 1 : 0; }
    const Mat& coeff(std::size_t j) const { return coeffs.at(m - j); }
    Mat& coeff(std::size_t j) { return coeffs.at(m - j); }
};

struct Tuple {
    std::size_t n = 0;
    SingularPoint infinity;
    std::vector<SingularPoint> finite;

    std::size_t r() const { return finite.size(); }
    std::size_t point_count() const { return finite.size() + 1; }

    /// M = r + sum_i m_i, the number of coefficient slots.
    std::size_t M() const {
        std::size_t total = r() + infinity.m;
        for (const auto& p : finite) total += p.m;
        return total;
    }

    const SingularPoint& point(std::size_t i) const { return i == 0 ? infinity : finite.at(i - 1); }
    SingularPoint& point(std::size_t i) { return i == 0 ? infinity : finite.at(i - 1); }

    /// A^(0)_0 = -(A^(1)_0 + ... + A^(r)_0); never stored.
    Mat residue_at_infinity() const {
        Mat res(n, n);
        for (const auto& p : finite) res -= p.coeff(0);
        return res;
    }

    /// A^(i)_{m_i}, ..., A^(i)_0 for point i, with the derived residue for i = 0.
    std::vector<Mat> full_coeffs(std::size_t i) const {
        std::vector<Mat> out = point(i).coeffs;
        if (i == 0) out.push_back(residue_at_infinity());
        return out;
    }

    /// Slots in block order (0,m_0),...,(0,1),(1,m_1),...,(1,0),...,(r,0).
    std::vector<Slot> slots() const {
        std::vector<Slot> out;
        for (std::size_t i = 0; i < point_count(); ++i) {
            const auto& p = point(i);
            for (std::size_t j = p.m + 1; j-- > p.lowest_order();) out.push_back({i, j});
        }
        return out;
    }

    const Mat& at(Slot s) const { return point(s.point).coeff(s.order); }
    Mat& at(Slot s) { return point(s.point).coeff(s.order); }

    friend bool operator==(const Tuple& a, const Tuple& b) {
        if (a.n != b.n || a.finite.size() != b.finite.size()) return false;
        for (std::size_t i = 0; i < a.point_count(); ++i) {
            const auto& p = a.point(i);
            const auto& q = b.point(i);
            if (p.location != q.location || p.m != q.m || p.coeffs != q.coeffs) return false;
        }
        return true;
    }
};

inline std::string point_name(std::size_t i) { return i == 0 ? "point 0 (infinity)" : "point " + std::to_string(i); }

/// Checks every structural invariant; throws validation_error naming the
/// offending point.
inline void validate(const Tuple& t) {
    if (t.n == 0) throw validation_error("matrix size n must be positive");
    if (!t.infinity.at_infinity()) throw validation_error("point 0 must be the point at infinity");
    for (std::size_t i = 0; i < t.point_count(); ++i) {
        const auto& p = t.point(i);
        if (i > 0 && p.at_infinity()) throw validation_error(point_name(i) + " has no finite location");
        const std::size_t expected = i == 0 ? p.m : p.m + 1;
        if (p.coeffs.size() != expected)
            throw validation_error(point_name(i) + ": expected " + std::to_string(expected) + " coefficient matrices, got " +
                                   std::to_string(p.coeffs.size()));
        for (const auto& a : p.coeffs)
            if (a.rows() != t.n || a.cols() != t.n)
                throw validation_error(point_name(i) + ": coefficient of shape " + std::to_string(a.rows()) + "x" +
                                       std::to_string(a.cols()) + ", expected " + std::to_string(t.n) + "x" +
                                       std::to_string(t.n));
    }
    for (std::size_t a = 0; a < t.finite.size(); ++a)
        for (std::size_t b = a + 1; b < t.finite.size(); ++b)
            if (*t.finite[a].location == *t.finite[b].location)
                throw validation_error("duplicate finite location t = " + to_string(*t.finite[a].location) + " at " +
                                       point_name(a + 1) + " and " + point_name(b + 1));
    if (t.M() == 0) throw validation_error("tuple has no coefficient slots (M = 0)");
}

/// One shift per coefficient slot, in slot order.
struct ShiftVector {
    std::vector<Scalar> values;
};

/// A^(i)_j -> A^(i)_j + mu^(i)_j I for every slot.
inline Tuple addition(const Tuple& t, const ShiftVector& s) {
    const auto slots = t.slots();
    if (s.values.size() != slots.size())
        throw validation_error("shift vector has length " + std::to_string(s.values.size()) + ", expected M = " +
                               std::to_string(slots.size()));
    Tuple out = t;
    for (std::size_t k = 0; k < slots.size(); ++k)
        if (sgn(s.values[k]) != 0) out.at(slots[k]) += Mat::scalar(t.n, s.values[k]);
    return out;
}

/// Treats a point with m_i = 0 as m_i = 1 with a zero leading coefficient.
inline Tuple pad_point(const Tuple& t, std::size_t i) {
    if (t.point(i).m != 0) throw validation_error(point_name(i) + " has m = " + std::to_string(t.point(i).m) + ", only m = 0 can be padded");
    Tuple out = t;
    auto& p = out.point(i);
    p.coeffs.insert(p.coeffs.begin(), Mat(t.n, t.n));
    p.m = 1;
    return out;
}

/// Pads every point with m_i = 0 (including infinity).
inline Tuple pad_all(const Tuple& t) {
    Tuple out = t;
    for (std::size_t i = 0; i < t.point_count(); ++i)
        if (out.point(i).m == 0) out = pad_point(out, i);
    return out;
}

/// Drops zero leading coefficients (lowering m_i) and removes finite points
/// whose coefficients all vanish.
inline Tuple strip(const Tuple& t) {
    Tuple out = t;
    for (std::size_t i = 0; i < out.point_count(); ++i) {
        auto& p = out.point(i);
        while (p.m > 0 && p.coeffs.front().is_zero()) {
            p.coeffs.erase(p.coeffs.begin());
            --p.m;
        }
    }
    std::vector<SingularPoint> kept;
    for (auto& p : out.finite)
        if (!(p.m == 0 && p.coeffs.front().is_zero())) kept.push_back(std::move(p));
    out.finite = std::move(kept);
    return out;
}

/// Points whose coefficients (including the derived residue at infinity)
/// are all scalar; addition can zero them, after which they may be omitted.
inline std::vector<std::size_t> removable_points(const Tuple& t) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.point_count(); ++i) {
        bool scalar = true;
        for (const auto& a : t.full_coeffs(i)) scalar = scalar && a.scalar_value().has_value();
        if (scalar) out.push_back(i);
    }
    return out;
}

/// Conjugates every coefficient: A -> P^{-1} A P.
inline Tuple conjugate(const Tuple& t, const Mat& P) {
    const Mat Pinv = inverse(P);
    Tuple out = t;
    for (const auto& s : t.slots()) out.at(s) = Pinv * t.at(s) * P;
    return out;
}

/// Oshima's normal form L(q; lambda): lambda_s I_{q_s} on the diagonal
/// blocks and the rectangular identities I_{q_s, q_{s+1}} just above them.
inline Mat build_L(const std::vector<std::size_t>& q, const std::vector<Scalar>& lambdas) {
    if (q.size() != lambdas.size()) throw validation_error("build_L: q and lambda have different lengths");
    std::size_t n = 0;
    for (std::size_t s = 0; s < q.size(); ++s) {
        if (q[s] == 0) throw validation_error("build_L: parts of q must be positive");
        if (s > 0 && q[s] > q[s - 1]) throw validation_error("build_L: q must be non-increasing");
        n += q[s];
    }
    Mat L(n, n);
    std::size_t off = 0;
    for (std::size_t s = 0; s < q.size(); ++s) {
        for (std::size_t a = 0; a < q[s]; ++a) L(off + a, off + a) = lambdas[s];
        if (s + 1 < q.size())
            for (std::size_t a = 0; a < q[s + 1]; ++a) L(off + a, off + q[s] + a) = 1;
        off += q[s];
    }
    return L;
}

/// Rank-two system with an irregular point at infinity (m_0 = 1,
/// A^(0)_1 = diag(0, -nu)) and a regular point at 0 whose residue has
/// eigenvalues 0 and -gamma. Reduces to the confluent hypergeometric equation.
inline Tuple hypergeometric_example(const Scalar& nu, const Scalar& gamma, const Scalar& alpha, const Scalar& k) {
    if (sgn(k) == 0) throw validation_error("hypergeometric example: k must be nonzero");
    Tuple t;
    t.n = 2;
    t.infinity = SingularPoint::at_infinity_point({Mat{{0, 0}, {0, -nu}}});
    const Scalar lower = alpha * (gamma - alpha) / k;
    t.finite.push_back(SingularPoint::finite_point(0, {Mat{{-alpha, k}, {lower, alpha - gamma}}}));
    return t;
}

/// Rank-two system with a nilpotent leading coefficient at infinity; its
/// solutions are Bessel functions after z = x^2.
inline Tuple bessel_example(const Scalar& a11, const Scalar& a12, const Scalar& a21, const Scalar& a22) {
    Tuple t;
    t.n = 2;
    t.infinity = SingularPoint::at_infinity_point({Mat{{0, -1}, {0, 0}}});
    t.finite.push_back(SingularPoint::finite_point(0, {Mat{{a11, a12}, {a21, a22}}}));
    return t;
}

/// Birkhoff canonical form dV/dz = (T - (A + I)/z) V, the Laplace dual of
/// the Okubo system (x - T) dPsi/dx = A Psi.
inline Tuple from_okubo(const Mat& T, const Mat& A) {
    if (!T.is_square() || !A.is_square() || T.rows() != A.rows())
        throw validation_error("from_okubo: T and A must be square of equal size");
    if (!is_semisimple(T)) throw precondition_error("from_okubo: T is not semisimple");
    if (!rational_spectrum(T).fully_rational) throw precondition_error("from_okubo: T has irrational eigenvalues");
    const std::size_t n = T.rows();
    Tuple t;
    t.n = n;
    t.infinity = SingularPoint::at_infinity_point({-T});
    t.finite.push_back(SingularPoint::finite_point(0, {-(A + Mat::identity(n))}));
    return t;
}

/// The inverse-Laplace image of the nilpotent Birkhoff system: a single
/// point at 0 with Poincare rank one and a regular point at infinity.
inline Tuple okubo_laplace_example(const Scalar& a11, const Scalar& a12, const Scalar& a21, const Scalar& a22) {
    Tuple t;
    t.n = 2;
    t.infinity = SingularPoint::at_infinity_point({});
    const Mat second{{-a21, -(a22 + 1)}, {0, 0}};
    const Mat first{{-(a11 + 1), -a12}, {-a21, -(a22 + 1)}};
    t.finite.push_back(SingularPoint::finite_point(0, {second, first}));
    return t;
}

}  // namespace mcirr
