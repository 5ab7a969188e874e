#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace mcirr;

TEST_CASE("parse_scalar reads canonical rationals and rejects junk") {
    CHECK(parse_scalar("6/4") == Scalar(3, 2));
    CHECK(parse_scalar("-7") == Scalar(-7));
    CHECK(parse_scalar("+2/3") == Scalar(2, 3));
    CHECK(to_string(parse_scalar("-10/4")) == "-5/2");
    CHECK_THROWS_AS(parse_scalar("1/0"), parse_error);
    CHECK_THROWS_AS(parse_scalar("1.5"), parse_error);
    CHECK_THROWS_AS(parse_scalar(""), parse_error);
    CHECK_THROWS_AS(parse_scalar("1/"), parse_error);
    CHECK_THROWS_AS(parse_scalar("a"), parse_error);
}

TEST_CASE("canonical order sorts by absolute value, negatives first on ties") {
    std::vector<Scalar> v{Scalar(2), Scalar(-1), Scalar(0), Scalar(1), Scalar(1, 2), Scalar(-2)};
    std::sort(v.begin(), v.end(), canonical_less);
    const std::vector<Scalar> want{Scalar(0), Scalar(1, 2), Scalar(-1), Scalar(1), Scalar(-2), Scalar(2)};
    CHECK(v == want);
}

TEST_CASE("rank and nullspace agree with Gauss-Jordan and fraction-free oracles") {
    gen::Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t R = gen::uniform(rng, 1, 6), C = gen::uniform(rng, 1, 6), k = gen::uniform(rng, 0, 3);
        // low rank by construction: product of R x k and k x C
        Mat a(R, k), b(k, C);
        for (std::size_t i = 0; i < R; ++i)
            for (std::size_t j = 0; j < k; ++j) a(i, j) = gen::rational(rng);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < C; ++j) b(i, j) = gen::rational(rng);
        const Mat m = k ? a * b : Mat(R, C);
        const std::size_t r = rank(m);
        CHECK(r == oracle::gj_rank(m));
        CHECK(r == oracle::integer_rank(m));
        CHECK(r == sparse_rank(m));
        CHECK(r <= k);
        const Subspace ker = nullspace(m);
        CHECK(ker.dim() == C - r);
        for (std::size_t q = 0; q < ker.dim(); ++q) CHECK(is_zero(m * ker.vector(q)));
        for (const auto& v : oracle::gj_nullspace(m)) CHECK(ker.contains(v));
    }
}

TEST_CASE("subspace representation is canonical") {
    gen::Rng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t D = gen::uniform(rng, 2, 6), k = gen::uniform(rng, 1, D);
        Mat cols(D, k);
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t j = 0; j < k; ++j) cols(i, j) = gen::rational(rng);
        const Subspace a = Subspace::span(cols);
        // another spanning set: columns mixed by an invertible matrix
        const Subspace b = Subspace::span(cols * gen::invertible(rng, k));
        CHECK(a == b);
        CHECK(a.contains(b));
        CHECK(a.free_rows().size() + a.dim() == D);
        CHECK((a + b) == a);
        const Subspace i = intersect(a, Subspace::full(D));
        CHECK(i == a);
    }
}

TEST_CASE("intersection dimension matches the dimension formula") {
    gen::Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t D = 5;
        Mat x(D, 3), y(D, 3);
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                x(i, j) = gen::rational(rng);
                y(i, j) = gen::rational(rng);
            }
        y.set_block(0, 0, x.block(0, 0, D, 1));  // share a vector
        const Subspace a = Subspace::span(x), b = Subspace::span(y);
        CHECK(intersect(a, b).dim() == a.dim() + b.dim() - (a + b).dim());
        CHECK(intersect(a, b).dim() >= 1);
    }
}

TEST_CASE("determinant, inverse and characteristic polynomial match cofactor expansion") {
    gen::Rng rng(14);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = gen::uniform(rng, 1, 5);
        const Mat m = gen::matrix(rng, n);
        CHECK(determinant(m) == oracle::det(m));
        const auto cp = oracle::charpoly(m);
        CHECK(charpoly(m).coeffs() == cp);
        if (determinant(m) != 0) CHECK(m * inverse(m) == Mat::identity(n));
        else CHECK_THROWS(inverse(m));
    }
}

TEST_CASE("centralizer dimension matches the brute-force commutator") {
    gen::Rng rng(15);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = gen::uniform(rng, 1, 4);
        const Mat m = trial % 2 ? gen::matrix(rng, n) : gen::semisimple(rng, gen::small_spectrum(rng, n));
        CHECK(centralizer_dim(m) == oracle::centralizer_dim(m));
    }
}

TEST_CASE("sylvester operator is X -> A X - X B on row-major vec") {
    gen::Rng rng(16);
    const Mat A = gen::matrix(rng, 3), B = gen::matrix(rng, 2), X{{1, 2}, {3, 4}, {5, 6}};
    const Mat S = sylvester_operator(A, B);
    Vec x;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) x.push_back(X(i, j));
    const Vec y = S * x;
    const Mat Y = A * X - X * B;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(y[i * 2 + j] == Y(i, j));
}

TEST_CASE("rational spectrum, Jordan partitions and semisimplicity") {
    // J_2(1) + J_1(1) + J_1(-1/2), conjugated
    Mat J{{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, Scalar(-1, 2)}};
    gen::Rng rng(17);
    const Mat m = gen::conjugated(J, gen::invertible(rng, 4));
    const Spectrum sp = rational_spectrum(m);
    REQUIRE(sp.fully_rational);
    REQUIRE(sp.eigenvalues.size() == 2);
    CHECK(sp.eigenvalues[0].value == Scalar(-1, 2));
    CHECK(sp.eigenvalues[1].multiplicity == 3);
    CHECK(jordan_partition(m, 1) == std::vector<std::size_t>{2, 1});
    CHECK(jordan_partition(m, 5).empty());
    CHECK(!is_semisimple(m));
    CHECK(is_semisimple(gen::semisimple(rng, {1, 1, 2, 0})));
    // x^2 - 2: semisimple, irrational
    const Mat r{{0, 2}, {1, 0}};
    CHECK(is_semisimple(r));
    CHECK(!rational_spectrum(r).fully_rational);
    CHECK(conjugate_partition({3, 1}) == std::vector<std::size_t>{2, 1, 1});
    CHECK(conjugate_partition({2, 2}) == std::vector<std::size_t>{2, 2});
}

TEST_CASE("rational roots of polynomials with large coefficients") {
    // (x - 7/3)(x + 1001)(x - 1/6)^2
    Poly p = Poly::linear_root(Scalar(7, 3)) * Poly::linear_root(-1001) * Poly::linear_root(Scalar(1, 6)) *
             Poly::linear_root(Scalar(1, 6)) * Poly({1, 0, 1});
    const auto roots = rational_roots(p);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].value == Scalar(1, 6));
    CHECK(roots[0].multiplicity == 2);
    CHECK(roots[1].value == Scalar(7, 3));
    CHECK(roots[2].value == -1001);
}
