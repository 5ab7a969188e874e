#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <vector>

#include "mcirr/scalar.hpp"

namespace mcirr {

using Vec = std::vector<Scalar>;

/// Dense exact matrix, row-major.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) throw validation_error("ragged matrix literal");
            for (const auto& x : row) data_.push_back(x);
        }
    }

    static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
    static Mat identity(std::size_t n) { return scalar(n, Scalar(1)); }
    static Mat scalar(std::size_t n, const Scalar& s) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
        return m;
    }
    static Mat diagonal(const Vec& d) {
        Mat m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }
    static Mat column(const Vec& v) {
        Mat m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (sgn(x) != 0) return false;
        return true;
    }

    /// The value s when this matrix equals s*I, otherwise empty.
    std::optional<Scalar> scalar_value() const {
        if (!is_square()) return std::nullopt;
        const Scalar s = rows_ ? (*this)(0, 0) : Scalar(0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? s : Scalar(0))) return std::nullopt;
        return s;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Mat b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    void add_block(std::size_t r0, std::size_t c0, const Mat& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) += b(i, j);
    }

    Vec col(std::size_t c) const {
        Vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
        return v;
    }

    Scalar trace() const {
        Scalar t = 0;
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
        return t;
    }

    Mat& operator+=(const Mat& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Mat& operator*=(const Scalar& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator-(Mat a) {
        for (auto& x : a.data_) x = -x;
        return a;
    }
    friend Mat operator*(Mat a, const Scalar& s) { return a *= s; }
    friend Mat operator*(const Scalar& s, Mat a) { return a *= s; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw validation_error("matrix product: inner dimensions differ");
        Mat c(a.rows_, b.cols_);
        Scalar t;
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a(i, k);
                if (sgn(aik) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    t = aik * b(k, j);
                    c(i, j) += t;
                }
            }
        return c;
    }

    friend Vec operator*(const Mat& a, const Vec& v) {
        if (a.cols_ != v.size()) throw validation_error("matrix-vector product: dimension mismatch");
        Vec out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                if (sgn(a(i, k)) != 0) out[i] += a(i, k) * v[k];
        return out;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Mat& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << to_string(m(i, j));
            os << ']';
        }
        return os << ']';
    }

private:
    void require_same_shape(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw validation_error("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

inline Mat hstack(const std::vector<Mat>& parts) {
    if (parts.empty()) return {};
    std::size_t cols = 0;
    for (const auto& p : parts) {
        if (p.rows() != parts.front().rows()) throw validation_error("hstack: row counts differ");
        cols += p.cols();
    }
    Mat out(parts.front().rows(), cols);
    std::size_t c = 0;
    for (const auto& p : parts) {
        out.set_block(0, c, p);
        c += p.cols();
    }
    return out;
}

inline Mat matrix_power(const Mat& m, std::size_t k) {
    Mat out = Mat::identity(m.rows());
    for (std::size_t i = 0; i < k; ++i) out = out * m;
    return out;
}

inline bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

}  // namespace mcirr
