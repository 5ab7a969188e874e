#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace mcirr;

TEST_CASE("commutant dimensions match the brute-force commutant") {
    gen::Rng rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        const Tuple t = gen::tuple(rng, 3, 2, 2);
        const RigidityReport rep = index(t);
        long total = 0;
        for (std::size_t i = 0; i < t.point_count(); ++i) {
            const std::size_t c = oracle::commutant_dim(t.full_coeffs(i));
            CHECK(rep.commutant_dims[i] == c);
            total += static_cast<long>(c);
        }
        CHECK(rep.idx == total - static_cast<long>((t.M() - 1) * t.n * t.n));
        CHECK(rep.consistent());
    }
}

TEST_CASE("worked example index") {
    const RigidityReport rep = index(hypergeometric_example(1, Scalar(1, 2), Scalar(1, 3), 1));
    CHECK(rep.commutant_dims == std::vector<std::size_t>{4, 2});
    CHECK(rep.idx == 2);
    CHECK(index(bessel_example(1, 0, 1, 1)).idx == 2);
}

TEST_CASE("index from spectral types agrees with the commutant count") {
    gen::Rng rng(52);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const Tuple t = gen::semisimple_tuple(rng, gen::uniform(rng, 1, 4), gen::uniform(rng, 1, 2), gen::rational(rng));
        const Tuple p = pad_all(t);
        std::vector<SpectralType> types;
        try {
            for (std::size_t i = 0; i < p.point_count(); ++i) types.push_back(spectral_type(p, i));
        } catch (const precondition_error&) {
            continue;
        }
        CHECK(index_from_spectral(types, p.r(), p.n) == index(t).idx);
        CHECK(index(p).idx == index(t).idx);
        ++checked;
    }
    CHECK(checked >= 5);
    CHECK_THROWS_AS(index_from_spectral(std::vector<MultiplicityPattern>{parse_pattern("(1,1)")}, 1, 2), validation_error);
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible(hypergeometric_example(1, Scalar(1, 2), Scalar(1, 3), 1)));
    // k = 0 would decouple; alpha = 0 makes e_1 invariant
    CHECK(!is_irreducible(hypergeometric_example(1, Scalar(1, 2), 0, 1)));
    gen::Rng rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        Tuple t = gen::tuple(rng, 4, 2, 1);
        if (t.n < 2) continue;
        // common invariant line e_0, then hide it by conjugation
        for (const auto& s : t.slots())
            for (std::size_t k = 1; k < t.n; ++k) t.at(s)(k, 0) = 0;
        CHECK(!is_irreducible(conjugate(t, gen::invertible(rng, t.n))));
    }
    CHECK(generated_algebra_dim({Mat{{1, 0}, {0, 0}}}, 2) == 2);
}

TEST_CASE("simultaneous similarity") {
    gen::Rng rng(54);
    for (int trial = 0; trial < 20; ++trial) {
        const Tuple a = gen::tuple(rng, 4, 2, 1);
        const Mat P = gen::invertible(rng, a.n);
        const Tuple b = conjugate(a, P);
        const auto S = are_similar(a, b);
        REQUIRE(S.has_value());
        CHECK(determinant(*S) != 0);
        for (const auto& s : a.slots()) CHECK(*S * a.at(s) == b.at(s) * *S);
    }
    const Tuple a = hypergeometric_example(1, Scalar(1, 2), Scalar(1, 3), 1);
    const Tuple b = hypergeometric_example(1, Scalar(1, 2), Scalar(1, 5), 1);
    const SimilarityResult res = find_similarity(a, b);
    CHECK(!res.S.has_value());
    CHECK(res.exhaustive);
    CHECK_THROWS_AS(are_similar(a, pad_all(a)), validation_error);
}

TEST_CASE("Okubo index") {
    const Mat T{{0, 0}, {0, 1}}, A{{Scalar(-1, 2), 1}, {1, Scalar(-1, 3)}};
    CHECK(okubo_index(T, A) == index(from_okubo(T, A)).idx);
    CHECK_THROWS_AS(okubo_index(Mat{{0, 1}, {0, 0}}, A), precondition_error);
}
