#pragma once

// Command-line front end. run() returns the process exit code:
// 0 success, 1 usage, 2 parse/validation, 3 mathematical precondition.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcirr/reduction.hpp"
#include "mcirr/tuple_io.hpp"

namespace mcirr::cli {

enum Exit : int { ok = 0, usage = 1, invalid = 2, precondition = 3 };

namespace detail {

inline bool is_matrix(const ojson& v) {
    if (!v.is_array() || v.empty()) return false;
    for (const auto& row : v)
        if (!row.is_array() || (!row.empty() && !row[0].is_string())) return false;
    return true;
}

inline std::string scalar_text(const ojson& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline void render(const ojson& v, std::ostream& os, int indent) {
    const std::string pad(static_cast<std::size_t>(indent > 0 ? indent : 0), ' ');
    if (v.is_object()) {
        for (const auto& [k, x] : v.items()) {
            if (x.is_structured() && !(x.is_array() && !x.empty() && !x[0].is_structured()) && !(x.is_array() && x.empty())) {
                os << pad << k << ":\n";
                render(x, os, indent + 2);
            } else {
                os << pad << k << ": ";
                render(x, os, -1);
                os << "\n";
            }
        }
    } else if (is_matrix(v)) {
        for (const auto& row : v) {
            os << pad << "[";
            for (std::size_t j = 0; j < row.size(); ++j) os << (j ? ", " : "") << scalar_text(row[j]);
            os << "]\n";
        }
    } else if (v.is_array()) {
        if (indent < 0 || (!v.empty() && !v[0].is_structured())) {
            os << "[";
            for (std::size_t j = 0; j < v.size(); ++j) os << (j ? ", " : "") << scalar_text(v[j]);
            os << "]";
            if (indent >= 0) os << "\n";
            return;
        }
        for (std::size_t k = 0; k < v.size(); ++k) {
            os << pad << "- [" << k << "]\n";
            render(v[k], os, indent + 2);
        }
    } else {
        if (indent >= 0) os << pad;
        os << scalar_text(v);
        if (indent >= 0) os << "\n";
    }
}

inline Mat parse_matrix_spec(const std::string& spec) {
    std::vector<std::vector<Scalar>> rows;
    std::stringstream rs(spec);
    std::string row;
    while (std::getline(rs, row, ';')) {
        std::vector<Scalar> r;
        std::stringstream cs(row);
        std::string cell;
        while (std::getline(cs, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t"), e = cell.find_last_not_of(" \t");
            r.push_back(parse_scalar(b == std::string::npos ? "" : cell.substr(b, e - b + 1)));
        }
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw parse_error("empty matrix \"" + spec + "\"");
    Mat m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw validation_error("ragged matrix \"" + spec + "\"");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

inline std::vector<Scalar> parse_list(const std::string& spec) {
    std::vector<Scalar> out;
    std::stringstream ss(spec);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t"), e = cell.find_last_not_of(" \t");
        out.push_back(parse_scalar(b == std::string::npos ? "" : cell.substr(b, e - b + 1)));
    }
    return out;
}

inline ojson slots_json(const std::vector<Slot>& slots) {
    ojson a = ojson::array();
    for (const auto& s : slots) a.push_back(ojson::array({s.point, s.order}));
    return a;
}

inline ojson report_json(const RigidityReport& r) {
    ojson o;
    o["n"] = r.n;
    o["r"] = r.r;
    o["M"] = r.M;
    o["commutant_dims"] = r.commutant_dims;
    o["local_indices"] = r.local;
    o["idx"] = r.idx;
    o["consistent"] = r.consistent();
    return o;
}

inline ojson spectral_json(const SpectralType& st) {
    ojson o;
    o["point"] = st.point;
    o["pattern"] = to_string(st.pattern());
    ojson blocks = ojson::array();
    for (const auto& b : st.blocks) {
        ojson bj;
        bj["d"] = to_string(b.d);
        bj["n_l"] = b.size;
        ojson inner = ojson::array();
        for (const auto& e : b.inner) {
            ojson ej;
            ej["lambda"] = to_string(e.lambda);
            ej["multiplicity"] = e.multiplicity;
            ej["jordan"] = e.partition;
            inner.push_back(std::move(ej));
        }
        bj["inner"] = std::move(inner);
        blocks.push_back(std::move(bj));
    }
    o["blocks"] = std::move(blocks);
    return o;
}

inline ojson step_json(const ReductionStep& s) {
    ojson o;
    o["size_before"] = s.size_before;
    o["size_after"] = s.size_after;
    o["mu"] = to_string(s.mu);
    ojson shift = ojson::array();
    for (const auto& x : s.shift.values) shift.push_back(to_string(x));
    o["shift"] = std::move(shift);
    ojson piv = ojson::array();
    for (std::size_t i = 0; i < s.pivots.size(); ++i) {
        const auto& p = s.pivots[i];
        ojson pj;
        pj["point"] = i;
        pj["d"] = to_string(p.d);
        pj["n_l"] = p.n_l;
        pj["lambda"] = to_string(p.lambda);
        pj["n_l1"] = p.n_l1;
        piv.push_back(std::move(pj));
    }
    o["pivots"] = std::move(piv);
    o["removed_points"] = s.removed_points;
    return o;
}

}  // namespace detail

/// Runs the command line; reports go to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Exact middle convolution, addition and rigidity index for linear ODE systems", "mcirr"};
    app.require_subcommand(1);
    std::string format = "human";
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "machine"}));

    std::string file, file_b, mu_text, shift_text, output;
    bool strip_flag = false, trace_flag = false;
    std::string complement = "left";

    auto* idx = app.add_subcommand("idx", "Index of rigidity");
    idx->add_option("FILE", file, "Tuple file")->required();

    auto* conv = app.add_subcommand("conv", "Convolution matrices");
    conv->add_option("FILE", file, "Tuple file")->required();
    conv->add_option("--mu", mu_text, "Parameter mu")->required();

    auto* mc = app.add_subcommand("mc", "Middle convolution");
    mc->add_option("FILE", file, "Tuple file")->required();
    mc->add_option("--mu", mu_text, "Parameter mu")->required();
    mc->add_option("-o,--output", output, "Write the result tuple here");
    mc->add_flag("--strip", strip_flag, "Drop vanished leading coefficients and zero points");
    mc->add_option("--complement", complement, "Quotient complement")->check(CLI::IsMember({"left", "right"}));

    auto* add = app.add_subcommand("add", "Addition");
    add->add_option("FILE", file, "Tuple file")->required();
    add->add_option("--shift", shift_text, "Comma-separated shifts in slot order")->required();
    add->add_option("-o,--output", output, "Write the result tuple here");

    auto* irred = app.add_subcommand("irred", "Irreducibility (Burnside)");
    irred->add_option("FILE", file, "Tuple file")->required();

    auto* spectral = app.add_subcommand("spectral", "Spectral types of all points");
    spectral->add_option("FILE", file, "Tuple file")->required();

    auto* similar = app.add_subcommand("similar", "Simultaneous similarity");
    similar->add_option("A", file, "First tuple file")->required();
    similar->add_option("B", file_b, "Second tuple file")->required();

    auto* red = app.add_subcommand("reduce", "Reduction by addition and middle convolution");
    red->add_option("FILE", file, "Tuple file")->required();
    red->add_flag("--trace", trace_flag, "Include every step");

    std::size_t er = 1, enmax = 4;
    auto* en = app.add_subcommand("enumerate", "Terminal idx = 0 patterns");
    en->add_option("--r", er, "Number of finite points")->required();
    en->add_option("--nmax", enmax, "Largest matrix size")->required();

    std::string fname;
    std::string nu = "1", gamma = "1/2", alpha = "1/3", kk = "1";
    std::string a11 = "1", a12 = "0", a21 = "1", a22 = "1";
    std::string T_text = "0,0;0,1", A_text = "-1/2,1;1,-1/3";
    auto* fx = app.add_subcommand("fixtures", "Emit a named example tuple");
    fx->add_option("NAME", fname, "hypergeometric | bessel | okubo | laplace-bessel")
        ->required()
        ->check(CLI::IsMember({"hypergeometric", "bessel", "okubo", "laplace-bessel"}));
    fx->add_option("--nu", nu);
    fx->add_option("--gamma", gamma);
    fx->add_option("--alpha", alpha);
    fx->add_option("--k", kk);
    fx->add_option("--a11", a11);
    fx->add_option("--a12", a12);
    fx->add_option("--a21", a21);
    fx->add_option("--a22", a22);
    fx->add_option("--T", T_text, "Rows separated by ';', entries by ','");
    fx->add_option("--A", A_text, "Rows separated by ';', entries by ','");
    fx->add_option("-o,--output", output, "Write the tuple here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage;
    }

    const bool machine = format == "machine";
    auto emit = [&](const ojson& report) {
        if (machine)
            out << pretty_json(report);
        else
            detail::render(report, out, 0);
    };

    try {
        ojson rep;
        int code = ok;
        if (*idx) {
            rep = detail::report_json(index(read_tuple(file)));
        } else if (*conv) {
            const Tuple t = read_tuple(file);
            const ConvolvedTuple c = convolution_matrices(t, parse_scalar(mu_text));
            rep["mu"] = to_string(c.mu);
            rep["size"] = c.base.n;
            rep["block_index"] = detail::slots_json(c.block_index);
            rep["tuple"] = tuple_to_json(c.base);
        } else if (*mc) {
            const Tuple t = read_tuple(file);
            const Scalar mu = parse_scalar(mu_text);
            MCOutcome res = middle_convolution(t, mu, complement == "left" ? Complement::leftmost_pivots : Complement::rightmost_pivots);
            if (strip_flag) res.result = strip(res.result);
            rep["mu"] = to_string(mu);
            rep["n_tilde"] = res.result.n;
            rep["dim_K"] = res.dim_K;
            rep["dim_L"] = res.dim_L;
            rep["result"] = tuple_to_json(res.result);
            if (!output.empty()) write_tuple(res.result, output);
        } else if (*add) {
            const Tuple t = read_tuple(file);
            const Tuple s = addition(t, ShiftVector{detail::parse_list(shift_text)});
            rep["result"] = tuple_to_json(s);
            if (!output.empty()) write_tuple(s, output);
        } else if (*irred) {
            const Tuple t = read_tuple(file);
            std::vector<Mat> gens;
            for (std::size_t i = 0; i < t.point_count(); ++i)
                for (auto& a : t.full_coeffs(i)) gens.push_back(std::move(a));
            const std::size_t dim = generated_algebra_dim(gens, t.n);
            rep["irreducible"] = dim == t.n * t.n;
            rep["algebra_dim"] = dim;
            rep["full_dim"] = t.n * t.n;
        } else if (*spectral) {
            const Tuple t = read_tuple(file);
            ojson pts = ojson::array();
            for (std::size_t i = 0; i < t.point_count(); ++i) pts.push_back(detail::spectral_json(spectral_type(t, i)));
            rep["points"] = std::move(pts);
        } else if (*similar) {
            const Tuple a = read_tuple(file), b = read_tuple(file_b);
            const SimilarityResult s = find_similarity(a, b);
            rep["similar"] = s.S.has_value();
            rep["intertwiner_space_dim"] = s.space_dim;
            rep["exhaustive"] = s.exhaustive;
            if (s.S) rep["S"] = matrix_to_json(*s.S);
        } else if (*red) {
            const ReductionTrace tr = reduce(read_tuple(file));
            rep["verdict"] = to_string(tr.verdict);
            rep["detail"] = tr.detail;
            ojson sizes = ojson::array();
            if (!tr.steps.empty()) sizes.push_back(tr.steps.front().size_before);
            for (const auto& s : tr.steps) sizes.push_back(s.size_after);
            rep["sizes"] = std::move(sizes);
            if (!tr.patterns.empty()) {
                ojson pats = ojson::array();
                for (const auto& p : tr.patterns) pats.push_back(to_string(p));
                rep["terminal_patterns"] = std::move(pats);
            }
            if (trace_flag) {
                ojson steps = ojson::array();
                for (const auto& s : tr.steps) steps.push_back(detail::step_json(s));
                rep["steps"] = std::move(steps);
                rep["terminal"] = tuple_to_json(tr.terminal);
            }
            if (tr.verdict == Verdict::assumption_violated) code = precondition;
        } else if (*en) {
            ojson list = ojson::array();
            for (const auto& tp : enumerate_terminals(er, enmax)) {
                ojson e;
                e["n"] = tp.n();
                e["d"] = tp.d;
                e["pattern"] = to_string(tp);
                e["catalog"] = classify_terminal(tp).value_or("Uncataloged");
                e["realizability"] = "unknown";
                list.push_back(std::move(e));
            }
            rep["r"] = er;
            rep["n_max"] = enmax;
            rep["patterns"] = std::move(list);
        } else if (*fx) {
            Tuple t;
            if (fname == "hypergeometric")
                t = hypergeometric_example(parse_scalar(nu), parse_scalar(gamma), parse_scalar(alpha), parse_scalar(kk));
            else if (fname == "bessel")
                t = bessel_example(parse_scalar(a11), parse_scalar(a12), parse_scalar(a21), parse_scalar(a22));
            else if (fname == "okubo")
                t = from_okubo(detail::parse_matrix_spec(T_text), detail::parse_matrix_spec(A_text));
            else
                t = okubo_laplace_example(parse_scalar(a11), parse_scalar(a12), parse_scalar(a21), parse_scalar(a22));
            validate(t);
            if (!output.empty()) write_tuple(t, output);
            out << format_tuple(t);
            return ok;
        }
        emit(rep);
        return code;
    } catch (const precondition_error& e) {
        err << "precondition violated: " << e.what() << "\n";
        return precondition;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return invalid;
    } catch (const validation_error& e) {
        err << "invalid input: " << e.what() << "\n";
        return invalid;
    }
}

}  // namespace mcirr::cli
