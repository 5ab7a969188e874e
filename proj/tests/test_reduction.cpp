#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace mcirr;

TEST_CASE("catalog entries have index zero and unit gcd") {
    const auto& cat = terminal_catalog();
    REQUIRE(cat.size() == 17);
    for (const auto& e : cat) {
        CHECK(e.pattern.d == 1);
        const std::size_t n = e.pattern.points.front().n(), r = e.pattern.points.size() - 1;
        CHECK(index_from_spectral(e.pattern.points, r, n) == 0);
    }
    CHECK(cat.front().label(1) == "Four singularities #1 {(1,1), (1,1), (1,1), (1,1)}, d=1");
}

TEST_CASE("classification normalizes scalar points and gcd") {
    const std::vector<MultiplicityPattern> pts{parse_pattern("(2,2)"), parse_pattern("(4)"), parse_pattern("(2,2)"),
                                               parse_pattern("(2,2)"), parse_pattern("(2,2)")};
    CHECK(classify_terminal(pts) == std::optional<std::string>("Four singularities #1 {(1,1), (1,1), (1,1), (1,1)}, d=2"));
    CHECK(!classify_terminal(std::vector<MultiplicityPattern>{parse_pattern("(2,1)"), parse_pattern("(2,1)")}).has_value());
}

TEST_CASE("partitions and patterns are counted correctly") {
    CHECK(partitions(5).size() == 7);
    CHECK(partitions(8).size() == 22);
    // patterns of size 2: (2), (1,1), (2)-... single block forms plus (1,1)-((1),(1))
    const auto p2 = all_patterns(2);
    CHECK(p2.size() == 3);
    std::set<MultiplicityPattern> uniq(p2.begin(), p2.end());
    CHECK(uniq.size() == p2.size());
}

TEST_CASE("enumeration at small size is a subset of the catalog") {
    const auto found = enumerate_terminals(3, 4);
    for (const auto& tp : found) CHECK(classify_terminal(tp).has_value());
    CHECK(!found.empty());
    CHECK_THROWS(enumerate_terminals(0, 4));
    CHECK_THROWS(enumerate_terminals(1, 13));
}

TEST_CASE("pivot choice on the worked example") {
    const Tuple t = pad_all(hypergeometric_example(1, Scalar(1, 2), Scalar(1, 3), 1));
    const auto piv = choose_pivot(t);
    REQUIRE(piv.size() == 2);
    CHECK(piv[0].d == 0);
    CHECK(piv[0].lambda == Scalar(1, 3));
    CHECK(piv[0].n_l == 1);
    CHECK(piv[1].d == 0);
    CHECK(piv[1].n_l == 2);
    CHECK(piv[1].lambda == 0);
}

TEST_CASE("reduction of the worked example") {
    const ReductionTrace tr = reduce(hypergeometric_example(1, Scalar(1, 2), Scalar(1, 3), 1));
    CHECK(tr.verdict == Verdict::reduced_to_rank_one);
    REQUIRE(tr.steps.size() == 1);
    CHECK(tr.steps[0].size_before == 2);
    CHECK(tr.steps[0].size_after == 1);
    CHECK(tr.steps[0].mu == Scalar(1, 3));
    CHECK(tr.terminal.n == 1);
}

TEST_CASE("reduction reports violated assumptions") {
    const ReductionTrace b = reduce(bessel_example(1, 0, 1, 1));
    CHECK(b.verdict == Verdict::assumption_violated);
    CHECK(b.detail.find("semisimple") != std::string::npos);
    const ReductionTrace red = reduce(hypergeometric_example(1, Scalar(1, 2), 0, 1));
    CHECK(red.verdict == Verdict::assumption_violated);
    CHECK(red.detail.find("reducible") != std::string::npos);
    Tuple m2 = hypergeometric_example(1, Scalar(1, 2), Scalar(1, 3), 1);
    m2.infinity = SingularPoint::at_infinity_point({Mat::diagonal({0, 1}), Mat::diagonal({0, -1})});
    CHECK(reduce(m2).verdict == Verdict::assumption_violated);
}

TEST_CASE("a generic four-point Fuchsian system of rank two is terminal") {
    gen::Rng rng(61);
    auto rational_eigs = [](const Mat& m) { return rational_spectrum(m).fully_rational && rational_spectrum(m).eigenvalues.size() == 2; };
    std::optional<Tuple> found;
    for (int attempt = 0; attempt < 5000 && !found; ++attempt) {
        Tuple t;
        t.n = 2;
        t.infinity = SingularPoint::at_infinity_point({});
        for (int i = 0; i < 3; ++i) t.finite.push_back(SingularPoint::finite_point(i, {gen::matrix(rng, 2)}));
        bool ok = true;
        for (std::size_t i = 0; i < 4 && ok; ++i) ok = rational_eigs(t.full_coeffs(i).back());
        if (ok && is_irreducible(t)) found = t;
    }
    REQUIRE(found.has_value());
    CHECK(index(*found).idx == 0);
    const ReductionTrace tr = reduce(*found);
    CHECK(tr.verdict == Verdict::terminal);
    CHECK(tr.steps.empty());
    CHECK(tr.detail == "Four singularities #1 {(1,1), (1,1), (1,1), (1,1)}, d=1");
}
