#include <doctest.h>

#include "support/generators.hpp"
#include "ucs/common.hpp"
#include "ucs/typicality.hpp"

using namespace ucs;
using prob::JointPmf;
using prob::Pmf;
using prob::TypicalSet;

TEST_SUITE_BEGIN("typicality");

TEST_CASE("exact empirical match is typical for every delta") {
    const Pmf p({"0", "1"}, {0.5, 0.5});
    const std::vector<std::uint32_t> word{0, 1, 0, 1};
    for (double delta : {0.01, 0.1, 0.5, 1.0}) CHECK(prob::typical(word, p, delta));
}

TEST_CASE("fair coin blocklength two at delta one half") {
    const TypicalSet set(Pmf::bernoulli(0.5), 2, 0.5);
    const auto members = set.enumerate();
    REQUIRE(members.size() == 2);
    CHECK(members[0] == std::vector<std::uint32_t>{0, 1});
    CHECK(members[1] == std::vector<std::uint32_t>{1, 0});
}

TEST_CASE("symbols with zero probability exclude the word") {
    const Pmf p({"a", "b", "c"}, {0.5, 0.5, 0.0});
    const std::vector<std::uint32_t> with_c{0, 1, 2, 0};
    CHECK_FALSE(prob::typical(with_c, p, 0.9));
    const std::vector<std::uint32_t> without_c{0, 1, 0, 1};
    CHECK(prob::typical(without_c, p, 0.9));
}

TEST_CASE("enumeration equals predicate filter of the product space") {
    DetRng rng(13);
    const Pmf p = testgen::random_pmf(rng, 3);
    const TypicalSet set(p, 4, 0.6);
    const auto members = set.enumerate();
    prob::WordSpace ws{3, 4};
    std::size_t count = 0;
    std::vector<std::uint32_t> w;
    for (std::uint64_t i = 0; i < ws.size(); ++i) {
        ws.decode(i, w);
        if (set.contains(w)) ++count;
    }
    CHECK(members.size() == count);
}

TEST_CASE("typical mass grows with blocklength for Bern(0.3)") {
    const Pmf p = Pmf::bernoulli(0.3);
    double prev = -1.0;
    for (unsigned n : {4u, 8u, 12u}) {
        const double mass = TypicalSet(p, n, 0.5).mass();
        CHECK(mass > prev);
        prev = mass;
    }
    CHECK(prev > 0.5);
}

TEST_CASE("conditional typicality tests the joint empirical frequency") {
    // X uniform, W = X over F_2: only perfectly aligned pairs are typical
    const JointPmf p_xw({{"0", "1"}, {"0", "1"}}, {0.5, 0.0, 0.0, 0.5});
    const std::vector<std::uint32_t> x{0, 1, 0, 1};
    CHECK(prob::cond_typical(x, x, p_xw, 0.3));
    const std::vector<std::uint32_t> w{0, 1, 1, 1};
    CHECK_FALSE(prob::cond_typical(x, w, p_xw, 0.3));
}

TEST_CASE("conditional enumeration tracks the conditioning word") {
    // W = X + Bern(0.25) over F_2, X fixed to 0101
    std::vector<double> table = {0.5 * 0.75, 0.5 * 0.25, 0.5 * 0.25, 0.5 * 0.75};
    const JointPmf p_xw({{"0", "1"}, {"0", "1"}}, table);
    const std::vector<std::uint32_t> x{0, 1, 0, 1};
    const TypicalSet set(p_xw, x, 1.0);
    const auto members = set.enumerate();
    CHECK(!members.empty());
    for (const auto& w : members) CHECK(prob::cond_typical(x, w, p_xw, 1.0));
    // conditional mass equals the sum of p(w|x) over members
    CHECK(set.mass() == doctest::Approx([&] {
        double m = 0.0;
        for (const auto& w : members) {
            double v = 1.0;
            for (std::size_t t = 0; t < x.size(); ++t) {
                const double joint = table[x[t] * 2 + w[t]];
                v *= joint / 0.5;
            }
            m += v;
        }
        return m;
    }()).epsilon(1e-12));
}

TEST_CASE("membership is deterministic and validates arguments") {
    const Pmf p = Pmf::bernoulli(0.4);
    const TypicalSet set(p, 3, 0.5);
    const std::vector<std::uint32_t> w{0, 1, 0};
    CHECK(set.contains(w) == set.contains(w));
    CHECK_THROWS_AS(set.contains(std::vector<std::uint32_t>{0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(TypicalSet(p, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TypicalSet(p, 0, 0.5), std::invalid_argument);
}

TEST_SUITE_END();
