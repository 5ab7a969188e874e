#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mcirr/matrix.hpp"

namespace mcirr {

/// Univariate polynomial over Q, coefficients lowest degree first.
/// The zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(const Scalar& s) { return Poly({s}); }
    static Poly x() { return Poly({Scalar(0), Scalar(1)}); }
    /// x - root
    static Poly linear_root(const Scalar& root) { return Poly({-root, Scalar(1)}); }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Scalar(0); }
    const Scalar& leading() const { return c_.back(); }

    Poly monic() const {
        if (is_zero()) return *this;
        Poly p = *this;
        const Scalar lc = leading();
        for (auto& x : p.c_) x /= lc;
        return p;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Scalar> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
        return Poly(std::move(d));
    }

    Scalar eval(const Scalar& x) const {
        Scalar acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Horner evaluation at a square matrix.
    Mat eval(const Mat& m) const {
        const std::size_t n = m.rows();
        Mat acc(n, n);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * m + Mat::scalar(n, *it);
        return acc;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const Scalar& s, const Poly& p) {
        std::vector<Scalar> c = p.c_;
        for (auto& x : c) x *= s;
        return Poly(std::move(c));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Euclidean division; returns (quotient, remainder).
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw validation_error("polynomial division by zero");
        std::vector<Scalar> r = a.c_;
        if (a.degree() < b.degree()) return {Poly(), a};
        std::vector<Scalar> q(a.c_.size() - b.c_.size() + 1);
        for (std::size_t k = q.size(); k-- > 0;) {
            const Scalar f = r[k + b.c_.size() - 1] / b.leading();
            q[k] = f;
            if (sgn(f) == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[k + j] -= f * b.c_[j];
        }
        return {Poly(std::move(q)), Poly(std::move(r))};
    }

    /// Monic gcd (zero if both are zero).
    friend Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = c_.size(); k-- > 0;) {
            if (sgn(c_[k]) == 0) continue;
            Scalar a = c_[k];
            if (!out.empty()) {
                out += sgn(a) < 0 ? " - " : " + ";
                a = abs(a);
            } else if (sgn(a) < 0 && k > 0 && a == -1) {
                out += "-";
                a = 1;
            }
            if (k == 0 || a != 1) out += mcirr::to_string(a);
            if (k > 0) out += (k == 0 || a != 1 ? "*" : "") + var + (k > 1 ? "^" + std::to_string(k) : "");
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }

    std::vector<Scalar> c_;
};

}  // namespace mcirr
