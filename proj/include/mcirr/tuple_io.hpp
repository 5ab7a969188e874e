#pragma once

// Tuple files (JSON):
//
//   {"n": 2,
//    "infinity": {"m": 1, "coeffs": {"1": [["0","0"],["0","-1"]]}},
//    "finite": [{"t": "0", "m": 0, "coeffs": {"0": [["-1/3","1"],["1/18","-1/6"]]}}]}
//
// Entries are rational strings "p" or "p/q". Coefficient keys are the
// orders j: 1..m at infinity, 0..m at finite points. Written files list
// coefficients in descending j with canonical rationals.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mcirr/model.hpp"

namespace mcirr {

using ojson = nlohmann::ordered_json;

inline ojson matrix_to_json(const Mat& m) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Scalar scalar_from_json(const ojson& v, const std::string& where) {
    if (v.is_string()) return parse_scalar(v.get<std::string>());
    if (v.is_number_integer()) return Scalar(v.dump());
    throw parse_error(where + ": matrix entries must be rational strings");
}

inline Mat matrix_from_json(const ojson& v, const std::string& where) {
    if (!v.is_array()) throw parse_error(where + ": a matrix must be a list of rows");
    const std::size_t rows = v.size();
    const std::size_t cols = rows ? (v[0].is_array() ? v[0].size() : 0) : 0;
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!v[i].is_array()) throw parse_error(where + ": row " + std::to_string(i) + " is not a list");
        if (v[i].size() != cols) throw validation_error(where + ": ragged matrix (row " + std::to_string(i) + ")");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = scalar_from_json(v[i][j], where);
    }
    return m;
}

inline ojson point_to_json(const SingularPoint& p) {
    ojson o;
    if (!p.at_infinity()) o["t"] = to_string(*p.location);
    o["m"] = p.m;
    ojson coeffs = ojson::object();
    for (std::size_t j = p.m + 1; j-- > p.lowest_order();) coeffs[std::to_string(j)] = matrix_to_json(p.coeff(j));
    o["coeffs"] = std::move(coeffs);
    return o;
}

inline ojson tuple_to_json(const Tuple& t) {
    ojson o;
    o["n"] = t.n;
    o["infinity"] = point_to_json(t.infinity);
    ojson fin = ojson::array();
    for (const auto& p : t.finite) fin.push_back(point_to_json(p));
    o["finite"] = std::move(fin);
    return o;
}

namespace detail {

inline std::size_t count_from_json(const ojson& o, const char* key, const std::string& where) {
    if (!o.contains(key)) throw parse_error(where + ": missing \"" + key + "\"");
    const auto& v = o.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) throw parse_error(where + ": \"" + key + "\" must be a non-negative integer");
    return v.get<std::size_t>();
}

inline SingularPoint point_from_json(const ojson& o, bool infinity, const std::string& where) {
    if (!o.is_object()) throw parse_error(where + " must be an object");
    SingularPoint p;
    if (!infinity) {
        if (!o.contains("t")) throw parse_error(where + ": missing \"t\"");
        const auto& t = o.at("t");
        p.location = t.is_string() ? parse_scalar(t.get<std::string>()) : scalar_from_json(t, where);
    }
    p.m = count_from_json(o, "m", where);
    const ojson coeffs = o.contains("coeffs") ? o.at("coeffs") : ojson::object();
    if (!coeffs.is_object()) throw parse_error(where + ": \"coeffs\" must be an object keyed by order");
    const std::size_t lo = infinity ? 1 : 0;
    const std::size_t expected = infinity ? p.m : p.m + 1;
    if (coeffs.size() != expected)
        throw validation_error(where + ": expected " + std::to_string(expected) + " coefficient matrices, got " +
                               std::to_string(coeffs.size()));
    for (std::size_t j = p.m + 1; j-- > lo;) {
        const std::string key = std::to_string(j);
        if (!coeffs.contains(key)) throw validation_error(where + ": missing coefficient of order " + key);
        p.coeffs.push_back(matrix_from_json(coeffs.at(key), where + " coefficient " + key));
    }
    return p;
}

}  // namespace detail

/// Parses and validates a tuple document.
inline Tuple tuple_from_json(const ojson& o) {
    if (!o.is_object()) throw parse_error("tuple file must be a JSON object");
    Tuple t;
    t.n = detail::count_from_json(o, "n", "tuple");
    if (!o.contains("infinity")) throw parse_error("tuple: missing \"infinity\"");
    t.infinity = detail::point_from_json(o.at("infinity"), true, point_name(0));
    if (o.contains("finite")) {
        const auto& fin = o.at("finite");
        if (!fin.is_array()) throw parse_error("tuple: \"finite\" must be a list");
        for (std::size_t i = 0; i < fin.size(); ++i) t.finite.push_back(detail::point_from_json(fin[i], false, point_name(i + 1)));
    }
    validate(t);
    return t;
}

inline Tuple parse_tuple(const std::string& text) {
    ojson o;
    try {
        o = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    return tuple_from_json(o);
}

inline Tuple read_tuple(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_tuple(ss.str());
}

namespace detail {

inline bool is_flat(const ojson& v) {
    for (const auto& x : v)
        if (x.is_structured()) return false;
    return true;
}

inline void pretty_rec(const ojson& v, std::string& out, std::size_t indent) {
    const std::string pad(indent, ' '), inner(indent + 2, ' ');
    if (v.is_object() && !v.empty()) {
        out += "{\n";
        std::size_t k = 0;
        for (const auto& [key, x] : v.items()) {
            out += inner + ojson(key).dump() + ": ";
            pretty_rec(x, out, indent + 2);
            out += ++k < v.size() ? ",\n" : "\n";
        }
        out += pad + "}";
    } else if (v.is_array() && !v.empty() && !is_flat(v)) {
        out += "[\n";
        for (std::size_t k = 0; k < v.size(); ++k) {
            out += inner;
            pretty_rec(v[k], out, indent + 2);
            out += k + 1 < v.size() ? ",\n" : "\n";
        }
        out += pad + "]";
    } else if (v.is_array()) {
        out += "[";
        for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + v[k].dump();
        out += "]";
    } else {
        out += v.dump();
    }
}

}  // namespace detail

/// JSON text with objects and nested lists broken over lines and flat lists
/// (matrix rows) kept on one line.
inline std::string pretty_json(const ojson& v) {
    std::string out;
    detail::pretty_rec(v, out, 0);
    return out + "\n";
}

inline std::string format_tuple(const Tuple& t) { return pretty_json(tuple_to_json(t)); }

inline void write_tuple(const Tuple& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write " + path);
    out << format_tuple(t);
}

}  // namespace mcirr
