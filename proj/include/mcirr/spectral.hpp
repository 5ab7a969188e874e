#pragma once

// Spectral types of a point with m_i <= 1: eigenspace blocks of A_1 and the
// eigenvalue/Jordan data of A_0 compressed to each block.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "mcirr/model.hpp"

namespace mcirr {

struct InnerEigen {
    Scalar lambda;
    std::size_t multiplicity = 0;           // algebraic multiplicity in the compressed block
    std::vector<std::size_t> partition;     // Jordan block sizes, descending
    /// Contributions n_{l,j} of this eigenvalue to the pattern: the
    /// conjugate of the Jordan partition (a single part when semisimple).
    std::vector<std::size_t> pattern_parts() const { return conjugate_partition(partition); }
};

struct SpectralBlock {
    Scalar d;                 // eigenvalue of A_1
    std::size_t size = 0;     // n_l
    std::vector<InnerEigen> inner;
    Mat basis;                // n x n_l, eigenvectors of A_1 for d
    Mat compressed;           // n_l x n_l, the block A_0^{[l,l]}
};

/// Nested multiplicity pattern (n_1,...,n_k) - ((n_{1,1},...),...), both
/// levels sorted descending.
struct MultiplicityPattern {
    struct Block {
        std::size_t size = 0;
        std::vector<std::size_t> inner;
        friend auto operator<=>(const Block&, const Block&) = default;
    };
    std::vector<Block> blocks;

    std::size_t n() const {
        std::size_t s = 0;
        for (const auto& b : blocks) s += b.size;
        return s;
    }

    void normalize() {
        for (auto& b : blocks) std::sort(b.inner.begin(), b.inner.end(), std::greater<>());
        std::sort(blocks.begin(), blocks.end(), std::greater<>());
    }

    /// A single block with a single inner part: every coefficient is scalar.
    bool is_scalar() const { return blocks.size() == 1 && blocks.front().inner.size() == 1; }

    /// sum_l (n_l^2 + sum_j n_{l,j}^2), the commutant dimension of the pair.
    std::size_t commutant_dim() const {
        std::size_t c = 0;
        for (const auto& b : blocks) {
            c += b.size * b.size;
            for (auto q : b.inner) c += q * q;
        }
        return c;
    }

    std::size_t gcd() const {
        std::size_t g = 0;
        for (const auto& b : blocks) {
            g = std::gcd(g, b.size);
            for (auto q : b.inner) g = std::gcd(g, q);
        }
        return g;
    }

    MultiplicityPattern divided(std::size_t d) const {
        MultiplicityPattern p = *this;
        for (auto& b : p.blocks) {
            b.size /= d;
            for (auto& q : b.inner) q /= d;
        }
        return p;
    }

    MultiplicityPattern scaled(std::size_t d) const {
        MultiplicityPattern p = *this;
        for (auto& b : p.blocks) {
            b.size *= d;
            for (auto& q : b.inner) q *= d;
        }
        return p;
    }

    friend auto operator<=>(const MultiplicityPattern&, const MultiplicityPattern&) = default;
};

namespace detail {

inline std::string join_counts(const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + ")";
}

}  // namespace detail

/// "(2,1)-((1,1),(1))"; a single outer block prints as its inner
/// partition alone, the regular-singular notation.
inline std::string to_string(const MultiplicityPattern& p) {
    if (p.blocks.size() == 1) return detail::join_counts(p.blocks.front().inner);
    std::vector<std::size_t> outer;
    for (const auto& b : p.blocks) outer.push_back(b.size);
    std::string s = detail::join_counts(outer) + "-(";
    for (std::size_t l = 0; l < p.blocks.size(); ++l) s += (l ? "," : "") + detail::join_counts(p.blocks[l].inner);
    return s + ")";
}

/// Inverse of to_string; whitespace is ignored.
inline MultiplicityPattern parse_pattern(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    std::size_t pos = 0;
    auto fail = [&]() -> void { throw parse_error("malformed multiplicity pattern \"" + std::string(text) + "\""); };
    auto counts = [&]() {
        std::vector<std::size_t> out;
        if (pos >= s.size() || s[pos] != '(') fail();
        ++pos;
        while (true) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) fail();
            out.push_back(std::stoul(s.substr(start, pos - start)));
            if (out.back() == 0) fail();
            if (pos < s.size() && s[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < s.size() && s[pos] == ')') {
                ++pos;
                break;
            }
            fail();
        }
        return out;
    };
    MultiplicityPattern p;
    auto first = counts();
    if (pos == s.size()) {
        std::size_t n = 0;
        for (auto q : first) n += q;
        p.blocks.push_back({n, first});
        p.normalize();
        return p;
    }
    if (s.compare(pos, 2, "-(") != 0) fail();
    pos += 2;
    for (std::size_t l = 0; l < first.size(); ++l) {
        if (l > 0) {
            if (pos >= s.size() || s[pos] != ',') fail();
            ++pos;
        }
        auto inner = counts();
        std::size_t sum = 0;
        for (auto q : inner) sum += q;
        if (sum != first[l]) throw parse_error("inner parts of block " + std::to_string(l + 1) + " do not sum to " + std::to_string(first[l]));
        p.blocks.push_back({first[l], inner});
    }
    if (pos + 1 != s.size() || s[pos] != ')') fail();
    p.normalize();
    return p;
}

struct SpectralType {
    std::size_t point = 0;
    std::size_t n = 0;
    std::vector<SpectralBlock> blocks;  // ordered by d in canonical order

    MultiplicityPattern pattern() const {
        MultiplicityPattern p;
        for (const auto& b : blocks) {
            MultiplicityPattern::Block pb{b.size, {}};
            for (const auto& e : b.inner)
                for (auto q : e.pattern_parts()) pb.inner.push_back(q);
            p.blocks.push_back(std::move(pb));
        }
        p.normalize();
        return p;
    }
};

/// Spectral type of a pair (A_1, A_0) with A_1 semisimple.
inline SpectralType spectral_type_of(const Mat& A1, const Mat& A0, std::size_t point = 0) {
    const std::size_t n = A1.rows();
    if (!is_semisimple(A1)) throw precondition_error(point_name(point) + ": leading coefficient A_1 is not semisimple");
    const Spectrum outer = rational_spectrum(A1);
    if (!outer.fully_rational) throw precondition_error(point_name(point) + ": A_1 has irrational eigenvalues");
    std::vector<Mat> bases;
    for (const auto& e : outer.eigenvalues) bases.push_back(nullspace(A1 - Mat::scalar(n, e.value)).basis());
    const Mat P = hstack(bases);
    const Mat B = inverse(P) * A0 * P;
    SpectralType st;
    st.point = point;
    st.n = n;
    std::size_t off = 0;
    for (std::size_t l = 0; l < outer.eigenvalues.size(); ++l) {
        SpectralBlock blk;
        blk.d = outer.eigenvalues[l].value;
        blk.size = outer.eigenvalues[l].multiplicity;
        blk.basis = bases[l];
        blk.compressed = B.block(off, off, blk.size, blk.size);
        const Spectrum in = rational_spectrum(blk.compressed);
        if (!in.fully_rational)
            throw precondition_error(point_name(point) + ": compressed block for eigenvalue " + to_string(blk.d) +
                                     " of A_1 has irrational eigenvalues");
        for (const auto& e : in.eigenvalues) blk.inner.push_back({e.value, e.multiplicity, jordan_partition(blk.compressed, e.value)});
        st.blocks.push_back(std::move(blk));
        off += st.blocks.back().size;
    }
    return st;
}

/// Spectral type of point i; a point with m_i = 0 is read as padded, and
/// the residue at infinity is the derived one.
inline SpectralType spectral_type(const Tuple& t, std::size_t i) {
    const auto& p = t.point(i);
    if (p.m > 1) throw precondition_error(point_name(i) + ": spectral types need m <= 1, got m = " + std::to_string(p.m));
    const auto coeffs = t.full_coeffs(i);
    const Mat A1 = p.m == 1 ? coeffs[0] : Mat(t.n, t.n);
    const Mat& A0 = coeffs.back();
    return spectral_type_of(A1, A0, i);
}

}  // namespace mcirr
