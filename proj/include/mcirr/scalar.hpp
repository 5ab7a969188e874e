#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "mcirr/error.hpp"

namespace mcirr {

/// Exact rational number, always kept in canonical form
/// (coprime numerator/denominator, positive denominator).
using Scalar = mpq_class;
using Integer = mpz_class;

/// Parses "p" or "p/q" with an optional leading sign on the numerator.
/// The value is canonicalized, so "6/4" reads as 3/2.
inline Scalar parse_scalar(std::string_view text) {
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    const std::size_t num_begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == num_begin) throw parse_error("malformed rational \"" + std::string(text) + "\"");
    std::size_t den_begin = text.size();
    if (pos < text.size()) {
        if (text[pos] != '/') throw parse_error("malformed rational \"" + std::string(text) + "\"");
        den_begin = ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == den_begin || pos != text.size())
            throw parse_error("malformed rational \"" + std::string(text) + "\"");
    }
    std::string num(text.substr(0, den_begin == text.size() ? text.size() : den_begin - 1));
    if (!num.empty() && num.front() == '+') num.erase(0, 1);
    Scalar q;
    q.get_num() = Integer(num, 10);
    if (den_begin == text.size()) {
        q.get_den() = 1;
    } else {
        Integer den(std::string(text.substr(den_begin)), 10);
        if (den == 0) throw parse_error("zero denominator in \"" + std::string(text) + "\"");
        q.get_den() = den;
    }
    q.canonicalize();
    return q;
}

/// Canonical text form: "-3/2", "5", "0".
inline std::string to_string(const Scalar& q) { return q.get_str(); }

/// The fixed total order used for every deterministic tie-break:
/// by absolute value first, then by value (so 0 < -1 < 1 < -2 < ...).
inline bool canonical_less(const Scalar& a, const Scalar& b) {
    const int c = cmp(abs(a), abs(b));
    if (c != 0) return c < 0;
    return a < b;
}

}  // namespace mcirr
