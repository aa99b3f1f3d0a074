#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "support/generators.hpp"
#include "ucs/common.hpp"
#include "ucs/ucc.hpp"

using namespace ucs;
using ucc::UccCodebookPair;
using ucc::UccParams;

TEST_SUITE_BEGIN("ucc");

TEST_CASE("rate formulas") {
    const auto r1 = ucc::rates(UccParams{2, 2, 1, 1, 1, 1, 1});
    CHECK(r1.s1 == doctest::Approx(1.0));
    CHECK(r1.r1 == doctest::Approx(0.5));

    const auto r2 = ucc::rates(UccParams{4, 2, 1, 0, 0, 1, 1});
    CHECK(r2.r1 == 0.0);
    CHECK(r2.r2 == 0.0);

    const auto r3 = ucc::rates(UccParams{3, 3, 1, 2, 2, 1, 1});
    CHECK(r3.s1 == doctest::Approx(std::log2(3.0)));
    CHECK(r3.r1 == doctest::Approx(2.0 / 3.0 * std::log2(3.0)));
}

TEST_CASE("fine rate minus bin rate is the coarse rate exactly") {
    for (unsigned k : {0u, 1u, 2u})
        for (unsigned n : {2u, 4u, 5u}) {
            const UccParams params{n, 2, k, 1, 2, 2, 4};
            const auto r = ucc::rates(params);
            const double coarse = static_cast<double>(k) / n;
            CHECK(r.s1 - r.r1 == doctest::Approx(coarse).epsilon(1e-12));
            CHECK(r.s2 - r.r2 == doctest::Approx(coarse).epsilon(1e-12));
        }
}

TEST_CASE("sampling is deterministic in the seed") {
    const UccParams params{3, 2, 1, 1, 2, 2, 2};
    const auto a = ucc::sample_codebooks(99, params);
    const auto b = ucc::sample_codebooks(99, params);
    CHECK(a.generator() == b.generator());
    for (std::uint64_t mu = 0; mu < 2; ++mu)
        for (std::uint64_t m = 0; m < 2; ++m) CHECK(a.shift(1, mu, m) == b.shift(1, mu, m));
    const auto c = ucc::sample_codebooks(100, params);
    CHECK(a.generator() != c.generator()); // overwhelmingly likely for 3 random bits
}

TEST_CASE("codeword with zero coarse index is the shift itself") {
    const UccParams params{4, 3, 2, 1, 1, 1, 1};
    const auto pair = ucc::sample_codebooks(4, params);
    CHECK(pair.codeword(1, 0, 1, 0) == pair.shift(1, 0, 1));
    CHECK(pair.codeword(2, 0, 2, 0) == pair.shift(2, 0, 2));
}

TEST_CASE("codeword differences land in the row space") {
    const UccParams params{4, 2, 2, 1, 1, 1, 1};
    const auto pair = ucc::sample_codebooks(7, params);
    // codeword(a + a') - codeword(a') = aG
    for (std::uint64_t a = 0; a < 4; ++a)
        for (std::uint64_t ap = 0; ap < 4; ++ap) {
            std::vector<std::uint32_t> da, dap;
            ff::index_vector(a, 2, 2, da);
            ff::index_vector(ap, 2, 2, dap);
            const ff::FieldVector va(da, 2), vap(dap, 2);
            const std::uint64_t sum = prob::WordSpace{2, 2}.encode((va + vap).entries());
            const auto lhs = pair.codeword(1, sum, 0, 0) - pair.codeword(1, ap, 0, 0);
            CHECK(lhs == ff::mat_vec_mul(va, pair.generator()));
        }
}

TEST_CASE("codeword matches its position in the coset enumeration") {
    const UccParams params{5, 3, 2, 1, 1, 1, 1};
    const auto pair = ucc::sample_codebooks(12, params);
    const auto coset = ff::coset_enumerate(pair.generator(), pair.shift(1, 0, 2));
    for (std::uint64_t a = 0; a < coset.size(); ++a)
        CHECK(pair.codeword(1, a, 2, 0) == coset[a]);
}

TEST_CASE("bins are cosets and the composite code has p^(k+l) words") {
    const UccParams params{4, 2, 1, 2, 1, 1, 1};
    const auto pair = ucc::sample_codebooks(3, params);
    std::size_t total = 0;
    for (std::uint64_t m = 0; m < params.bin_count(1); ++m) {
        const auto bin = pair.bin_of(1, m, 0);
        CHECK(bin == ff::coset_enumerate(pair.generator(), pair.shift(1, 0, m)));
        total += bin.size();
    }
    CHECK(total == params.composite_count(1));
}

TEST_CASE("k = 0 bins are singleton shifts") {
    const UccParams params{3, 2, 0, 1, 1, 1, 1};
    const auto pair = ucc::sample_codebooks(8, params);
    const auto bin = pair.bin_of(1, 1, 0);
    REQUIRE(bin.size() == 1);
    CHECK(bin[0] == pair.shift(1, 0, 1));
}

TEST_CASE("bins with shift difference outside the row space are disjoint") {
    // G = [1 1 1 1]: row space {0000, 1111}
    const ff::FieldMatrix g(1, 4, {1, 1, 1, 1}, 2);
    const UccParams params{4, 2, 1, 1, 1, 1, 1};
    std::vector<std::vector<ff::FieldVector>> h1{{ff::FieldVector({0, 0, 0, 0}, 2),
                                                  ff::FieldVector({1, 0, 0, 0}, 2)}};
    std::vector<std::vector<ff::FieldVector>> h2{{ff::FieldVector({0, 0, 0, 0}, 2),
                                                  ff::FieldVector({0, 0, 0, 1}, 2)}};
    const UccCodebookPair pair(params, g, h1, h2);
    const auto bin0 = pair.bin_of(1, 0, 0);
    const auto bin1 = pair.bin_of(1, 1, 0);
    std::set<std::vector<std::uint32_t>> s0, s1;
    for (const auto& w : bin0) s0.insert(w.entries());
    for (const auto& w : bin1) s1.insert(w.entries());
    for (const auto& w : s0) CHECK(s1.count(w) == 0);
}

TEST_CASE("codebook json round trip") {
    const UccParams params{3, 3, 1, 1, 2, 2, 1};
    const auto pair = ucc::sample_codebooks(17, params);
    const auto j = ucc::codebooks_to_json(pair);
    const auto back = ucc::codebooks_from_json(j);
    CHECK(back.generator() == pair.generator());
    for (std::uint64_t mu = 0; mu < 2; ++mu)
        for (std::uint64_t m = 0; m < 3; ++m) CHECK(back.shift(1, mu, m) == pair.shift(1, mu, m));
    CHECK(back.shift(2, 0, 0) == pair.shift(2, 0, 0));
}

TEST_CASE("index bounds are enforced") {
    const UccParams params{3, 2, 1, 1, 1, 1, 1};
    const auto pair = ucc::sample_codebooks(5, params);
    CHECK_THROWS_AS(pair.codeword(1, 2, 0, 0), std::out_of_range);
    CHECK_THROWS_AS(pair.codeword(1, 0, 2, 0), std::out_of_range);
    CHECK_THROWS_AS(pair.codeword(1, 0, 0, 1), std::out_of_range);
    const UccParams zero_n{0, 2, 0, 0, 0, 1, 1};
    CHECK_THROWS_AS(zero_n.validate(), std::invalid_argument);
    const UccParams composite_p{2, 4, 0, 0, 0, 1, 1};
    CHECK_THROWS_AS(composite_p.validate(), std::invalid_argument);
}

TEST_CASE("codeword marginal is uniform (chi-squared, reduced draw count)") {
    const UccParams params{2, 2, 1, 1, 1, 1, 1};
    const std::size_t draws = 20000;
    std::vector<std::uint64_t> counts(4, 0);
    for (std::size_t s = 1; s <= draws; ++s) {
        const auto pair = ucc::sample_codebooks(s, params);
        const auto w = pair.codeword(1, 1, 1, 0);
        counts[prob::WordSpace{2, 2}.encode(w.entries())]++;
    }
    const double stat = testgen::chi_squared_uniform(counts, static_cast<double>(draws));
    CHECK(stat < testgen::chi_squared_5sigma(3.0));
}

TEST_CASE("distinct codewords of one codebook are pairwise uniform (reduced)") {
    const UccParams params{2, 2, 1, 1, 1, 1, 1};
    const std::size_t draws = 20000;
    std::vector<std::uint64_t> diff_a(16, 0), diff_m(16, 0);
    const prob::WordSpace ws{2, 2};
    for (std::size_t s = 1; s <= draws; ++s) {
        const auto pair = ucc::sample_codebooks(s, params);
        const auto w00 = ws.encode(pair.codeword(1, 0, 0, 0).entries());
        const auto w10 = ws.encode(pair.codeword(1, 1, 0, 0).entries());
        const auto w01 = ws.encode(pair.codeword(1, 0, 1, 0).entries());
        diff_a[w00 * 4 + w10]++;
        diff_m[w00 * 4 + w01]++;
    }
    const double threshold = testgen::chi_squared_5sigma(15.0);
    CHECK(testgen::chi_squared_uniform(diff_a, static_cast<double>(draws)) < threshold);
    CHECK(testgen::chi_squared_uniform(diff_m, static_cast<double>(draws)) < threshold);
}

TEST_SUITE_END();
