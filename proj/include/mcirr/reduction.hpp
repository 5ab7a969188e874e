#pragma once

// Katz-style reduction by addition and middle convolution for tuples with
// m_i <= 1 and semisimple leading coefficients, the idx = 0 terminal
// catalog, and an independent enumerator of terminal patterns.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mcirr/rigidity.hpp"

namespace mcirr {

/// Multiplicity patterns of the points of a terminal tuple, scalar points
/// dropped, divided by their common gcd d and sorted.
struct TerminalPattern {
    std::vector<MultiplicityPattern> points;
    std::size_t d = 1;
    bool realizability_known = false;

    std::size_t n() const { return points.empty() ? 0 : points.front().n() * d; }
    std::size_t r() const { return points.empty() ? 0 : points.size() - 1; }

    static TerminalPattern normalize(std::vector<MultiplicityPattern> pts) {
        TerminalPattern tp;
        for (auto& p : pts) {
            p.normalize();
            if (!p.is_scalar()) tp.points.push_back(std::move(p));
        }
        std::size_t g = 0;
        for (const auto& p : tp.points) g = std::gcd(g, p.gcd());
        tp.d = g == 0 ? 1 : g;
        for (auto& p : tp.points) p = p.divided(tp.d);
        std::sort(tp.points.begin(), tp.points.end(), std::greater<>());
        return tp;
    }

    friend bool operator==(const TerminalPattern& a, const TerminalPattern& b) { return a.points == b.points && a.d == b.d; }
    friend bool operator<(const TerminalPattern& a, const TerminalPattern& b) {
        if (a.n() != b.n()) return a.n() < b.n();
        if (a.d != b.d) return a.d < b.d;
        return a.points < b.points;
    }
};

inline std::string to_string(const TerminalPattern& tp) {
    std::string s = "{";
    for (std::size_t i = 0; i < tp.points.size(); ++i) s += (i ? ", " : "") + to_string(tp.points[i]);
    return s + "}";
}

struct CatalogEntry {
    std::string group;  // "Four singularities", ...
    std::size_t index;  // position within the group, from 1
    TerminalPattern pattern;  // d = 1

    std::string label(std::size_t d) const {
        return group + " #" + std::to_string(index) + " " + to_string(pattern) + ", d=" + std::to_string(d);
    }
};

/// The idx = 0 terminal patterns with unit d.
inline const std::vector<CatalogEntry>& terminal_catalog() {
    static const std::vector<CatalogEntry> cat = [] {
        const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> groups = {
            {"Four singularities", {{"(1,1)", "(1,1)", "(1,1)", "(1,1)"}}},
            {"Three singularities",
             {{"(1,1,1)", "(1,1,1)", "(1,1,1)"},
              {"(2,2)", "(1,1,1,1)", "(1,1,1,1)"},
              {"(3,3)", "(2,2,2)", "(1,1,1,1,1,1)"},
              {"(1,1)-((1),(1))", "(1,1)", "(1,1)"}}},
            {"Two singularities",
             {{"(1,1)-((1),(1))", "(1,1)-((1),(1))"},
              {"(1,1,1)-((1),(1),(1))", "(1,1,1)"},
              {"(1,1,1,1)-((1),(1),(1),(1))", "(2,2)"},
              {"(2,2)-((1,1),(1,1))", "(1,1,1,1)"},
              {"(3,2)-((1,1,1),(2))", "(1,1,1,1,1)"},
              {"(2,2,2)-((1,1),(1,1),(1,1))", "(3,3)"},
              {"(3,3,2)-((1,1,1),(1,1,1),(2))", "(4,4)"},
              {"(5,4,3)-((1,1,1,1,1),(2,2),(3))", "(6,6)"},
              {"(5,4)-((1,1,1,1,1),(2,2))", "(3,3,3)"},
              {"(3,3)-((1,1,1),(1,1,1))", "(2,2,2)"},
              {"(5,3)-((1,1,1,1,1),(3))", "(2,2,2,2)"},
              {"(4,3)-((2,2),(3))", "(1,1,1,1,1,1,1)"}}},
        };
        std::vector<CatalogEntry> out;
        for (const auto& [group, entries] : groups)
            for (std::size_t k = 0; k < entries.size(); ++k) {
                std::vector<MultiplicityPattern> pts;
                for (const auto& s : entries[k]) pts.push_back(parse_pattern(s));
                out.push_back({group, k + 1, TerminalPattern::normalize(pts)});
            }
        return out;
    }();
    return cat;
}

/// Catalog label of a terminal pattern, or empty when uncataloged.
inline std::optional<std::string> classify_terminal(const std::vector<MultiplicityPattern>& points) {
    const TerminalPattern tp = TerminalPattern::normalize(points);
    for (const auto& e : terminal_catalog())
        if (e.pattern.points == tp.points) return e.label(tp.d);
    return std::nullopt;
}

inline std::optional<std::string> classify_terminal(const TerminalPattern& tp) {
    std::vector<MultiplicityPattern> pts;
    for (const auto& p : tp.points) pts.push_back(p.scaled(tp.d));
    return classify_terminal(pts);
}

namespace detail {

inline void patterns_rec(std::size_t remaining, std::vector<MultiplicityPattern::Block>& cur,
                         const std::vector<std::vector<std::vector<std::size_t>>>& parts,
                         std::vector<MultiplicityPattern>& out) {
    if (remaining == 0) {
        MultiplicityPattern p;
        p.blocks = cur;
        out.push_back(std::move(p));
        return;
    }
    // blocks in non-increasing (size, inner) order
    const std::size_t max_size = cur.empty() ? remaining : std::min(remaining, cur.back().size);
    for (std::size_t s = max_size; s >= 1; --s)
        for (const auto& lam : parts[s]) {
            if (!cur.empty() && s == cur.back().size && lam > cur.back().inner) continue;
            cur.push_back({s, lam});
            patterns_rec(remaining - s, cur, parts, out);
            cur.pop_back();
        }
}

inline void partitions_rec(std::size_t remaining, std::size_t max_part, std::vector<std::size_t>& cur,
                           std::vector<std::vector<std::size_t>>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(remaining - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// Integer partitions of n, descending parts, in reverse lexicographic order.
inline std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    detail::partitions_rec(n, n, cur, out);
    return out;
}

/// Every multiplicity pattern of size n (each exactly once, normalized).
inline std::vector<MultiplicityPattern> all_patterns(std::size_t n) {
    std::vector<std::vector<std::vector<std::size_t>>> parts(n + 1);
    for (std::size_t s = 1; s <= n; ++s) parts[s] = partitions(s);
    std::vector<MultiplicityPattern> out;
    std::vector<MultiplicityPattern::Block> cur;
    detail::patterns_rec(n, cur, parts, out);
    return out;
}

/// max_l (n_l + n_{l,1}).
inline std::size_t pivot_weight(const MultiplicityPattern& p) {
    std::size_t s = 0;
    for (const auto& b : p.blocks) s = std::max(s, b.size + b.inner.front());
    return s;
}

/// Patterns of r + 1 points, sizes up to n_max, with idx = 0 and
/// sum_i max_l (n_l + n_{l,1}) = 2 r n, no scalar point, and equal inner
/// parts in the maximizing block. Since commutant_dim <= n * pivot_weight
/// for every pattern, idx = 0 together with the weight condition forces
/// equality pointwise; only such "tight" patterns are combined.
inline std::vector<TerminalPattern> enumerate_terminals(std::size_t r, std::size_t n_max) {
    if (r < 1) throw validation_error("enumerate_terminals: r must be at least 1");
    if (n_max > 12) throw validation_error("enumerate_terminals: n_max must be at most 12");
    std::set<TerminalPattern> found;
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::vector<MultiplicityPattern> tight;
        for (auto& p : all_patterns(n))
            if (!p.is_scalar() && p.commutant_dim() == n * pivot_weight(p)) tight.push_back(std::move(p));
        // multisets of r + 1 tight patterns, indices non-decreasing
        std::vector<std::size_t> idx(r + 1, 0);
        const std::size_t T = tight.size();
        if (T == 0) continue;
        while (true) {
            std::size_t weight = 0;
            long cdim = 0;
            std::vector<MultiplicityPattern> pts;
            for (auto k : idx) {
                weight += pivot_weight(tight[k]);
                cdim += static_cast<long>(tight[k].commutant_dim());
                pts.push_back(tight[k]);
            }
            const long idx0 = cdim - 2 * static_cast<long>(r * n * n);
            if (weight == 2 * r * n && idx0 == 0) {
                bool equal_inner = true;
                for (const auto& p : pts)
                    for (const auto& b : p.blocks)
                        if (b.size + b.inner.front() == pivot_weight(p))
                            equal_inner = equal_inner && std::all_of(b.inner.begin(), b.inner.end(),
                                                                     [&](std::size_t q) { return q == b.inner.front(); });
                if (equal_inner) found.insert(TerminalPattern::normalize(pts));
            }
            std::size_t k = r + 1;
            while (k > 0 && idx[k - 1] == T - 1) --k;
            if (k == 0) break;
            const std::size_t v = ++idx[k - 1];
            for (std::size_t j = k; j <= r; ++j) idx[j] = v;
        }
    }
    return {found.begin(), found.end()};
}

struct Pivot {
    std::size_t block = 0;     // l, index into the spectral type's blocks
    Scalar d;                  // eigenvalue of A_1
    std::size_t n_l = 0;
    Scalar lambda;             // eigenvalue of the compressed block
    std::size_t n_l1 = 0;      // its geometric multiplicity
};

/// Per point, the block maximizing (n_l^2 + sum_j n_{l,j}^2) / n_l (ties:
/// larger n_l + n_{l,1}, then earlier block), and inside it the eigenvalue
/// of largest geometric multiplicity (ties: canonical order).
inline std::vector<Pivot> choose_pivot(const Tuple& t) {
    std::vector<Pivot> out;
    for (std::size_t i = 0; i < t.point_count(); ++i) {
        if (t.point(i).m != 1) throw precondition_error(point_name(i) + ": choose_pivot needs m = 1 (pad first)");
        const SpectralType st = spectral_type(t, i);
        std::optional<Pivot> best;
        std::size_t best_num = 0;  // ratio numerator, denominator best->n_l
        for (std::size_t l = 0; l < st.blocks.size(); ++l) {
            const auto& b = st.blocks[l];
            std::size_t num = b.size * b.size;
            Pivot cand{l, b.d, b.size, Scalar(0), 0};
            for (const auto& e : b.inner) {
                const auto parts = e.pattern_parts();
                for (auto q : parts) num += q * q;
                const std::size_t g = parts.front();
                if (g > cand.n_l1 || (g == cand.n_l1 && canonical_less(e.lambda, cand.lambda))) {
                    cand.n_l1 = g;
                    cand.lambda = e.lambda;
                }
            }
            bool better = !best;
            if (best) {
                const std::size_t lhs = num * best->n_l, rhs = best_num * b.size;
                better = lhs > rhs || (lhs == rhs && b.size + cand.n_l1 > best->n_l + best->n_l1);
            }
            if (better) {
                best = cand;
                best_num = num;
            }
        }
        out.push_back(*best);
    }
    return out;
}

struct ReductionStep {
    std::vector<Pivot> pivots;
    ShiftVector shift;              // on the padded tuple
    Scalar mu;
    std::size_t size_before = 0, size_after = 0;
    std::vector<std::size_t> removed_points;  // scalar finite points dropped after mc
};

struct StepOutcome {
    bool terminal = false;          // no addition + mc lowers the size
    Tuple next;                     // the reduced tuple, or the padded input when terminal
    ReductionStep step;
};

namespace detail {

// Zero every all-scalar finite point by addition and drop it; zero the
// polynomial part at infinity when it is scalar. Returns removed indices.
inline std::vector<std::size_t> drop_scalar_points(Tuple& t) {
    std::vector<std::size_t> removed;
    if (t.n <= 1) return removed;
    std::vector<SingularPoint> kept;
    for (std::size_t i = 1; i < t.point_count(); ++i) {
        bool scalar = true;
        for (const auto& a : t.point(i).coeffs) scalar = scalar && a.scalar_value().has_value();
        if (scalar && t.r() > 1) {
            removed.push_back(i);
            continue;
        }
        kept.push_back(t.point(i));
    }
    // never remove every finite point
    if (kept.empty() && !removed.empty()) {
        kept.push_back(t.point(removed.back()));
        removed.pop_back();
    }
    t.finite = std::move(kept);
    bool inf_scalar = t.infinity.m > 0;
    for (const auto& a : t.infinity.coeffs) inf_scalar = inf_scalar && a.scalar_value().has_value();
    if (inf_scalar)
        for (auto& a : t.infinity.coeffs) a = Mat(t.n, t.n);
    t = strip(t);
    return removed;
}

}  // namespace detail

/// One addition + middle convolution step.
inline StepOutcome reduce_step(const Tuple& input) {
    validate(input);
    for (std::size_t i = 0; i < input.point_count(); ++i)
        if (input.point(i).m > 1)
            throw assumption_violated(point_name(i) + " has m = " + std::to_string(input.point(i).m) + " > 1");
    const Tuple t = pad_all(input);
    if (!is_irreducible(t)) throw assumption_violated("tuple is reducible");
    std::vector<Pivot> piv;
    try {
        piv = choose_pivot(t);
    } catch (const precondition_error& e) {
        throw assumption_violated(e.what());
    }
    StepOutcome out;
    out.step.pivots = piv;
    out.step.size_before = t.n;
    const auto slots = t.slots();
    out.step.shift.values.assign(slots.size(), Scalar(0));
    std::size_t weight = 0;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto& s = slots[k];
        const Pivot& p = piv[s.point];
        out.step.shift.values[k] = s.order == 1 ? Scalar(-p.d) : Scalar(-p.lambda);
    }
    for (const auto& p : piv) weight += p.n_l + p.n_l1;
    const std::size_t n = t.n, r = t.r();
    if (weight <= 2 * r * n) {
        out.terminal = true;
        out.next = t;
        out.step.size_after = n;
        return out;
    }
    const Tuple shifted = addition(t, out.step.shift);
    const std::size_t predicted = (2 * r + 1) * n - weight;
    // mu: eigenvalue of the shifted compressed block at infinity with the largest L'(mu)
    const SpectralType inf = spectral_type(shifted, 0);
    const SpectralBlock* blk = nullptr;
    for (const auto& b : inf.blocks)
        if (sgn(b.d) == 0) blk = &b;
    if (!blk) throw assumption_violated("no kernel block at infinity after the shift");
    std::optional<Scalar> mu;
    std::size_t best = 0;
    for (const auto& e : blk->inner) {
        const std::size_t dl = subspace_Lprime(shifted, e.lambda).dim();
        if (!mu || dl > best || (dl == best && canonical_less(e.lambda, *mu))) {
            mu = e.lambda;
            best = dl;
        }
    }
    if (sgn(*mu) == 0) throw assumption_violated("the size-lowering parameter is mu = 0, which forces reducibility");
    out.step.mu = *mu;
    MCOutcome mc = middle_convolution(shifted, *mu);
    if (mc.result.n != predicted)
        throw assumption_violated("middle convolution produced size " + std::to_string(mc.result.n) + ", expected " +
                                  std::to_string(predicted));
    out.next = strip(mc.result);
    out.step.removed_points = detail::drop_scalar_points(out.next);
    out.step.size_after = out.next.n;
    return out;
}

enum class Verdict { reduced_to_rank_one, terminal, assumption_violated };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::reduced_to_rank_one: return "ReducedToRankOne";
        case Verdict::terminal: return "Terminal";
        case Verdict::assumption_violated: return "AssumptionViolated";
    }
    return "";
}

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    Tuple terminal;
    Verdict verdict = Verdict::assumption_violated;
    std::string detail;                         // catalog label, "Uncataloged", or the violated assumption
    std::vector<MultiplicityPattern> patterns;  // terminal patterns per point (Terminal only)
};

/// Repeats reduce_step until rank one, a terminal tuple, or a failed assumption.
inline ReductionTrace reduce(const Tuple& input) {
    ReductionTrace trace;
    Tuple t = input;
    trace.terminal = t;
    try {
        while (t.n > 1) {
            StepOutcome s = reduce_step(t);
            if (s.terminal) {
                trace.terminal = s.next;
                trace.verdict = Verdict::terminal;
                for (std::size_t i = 0; i < s.next.point_count(); ++i) trace.patterns.push_back(spectral_type(s.next, i).pattern());
                trace.detail = classify_terminal(trace.patterns).value_or("Uncataloged");
                return trace;
            }
            if (s.step.size_after >= s.step.size_before) throw assumption_violated("size did not decrease");
            trace.steps.push_back(s.step);
            t = std::move(s.next);
            trace.terminal = t;
        }
        trace.verdict = Verdict::reduced_to_rank_one;
    } catch (const precondition_error& e) {
        trace.verdict = Verdict::assumption_violated;
        trace.detail = e.what();
    }
    return trace;
}

}  // namespace mcirr
