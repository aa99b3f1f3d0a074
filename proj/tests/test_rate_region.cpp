#include <doctest.h>

#include <cmath>

#include "support/generators.hpp"
#include "ucs/common.hpp"
#include "ucs/rate_region.hpp"

using namespace ucs;
using region::AuxPmf;
using region::LinearInequalitySystem;

namespace {

// Aux joint with constant W1, W2 and independent Y (all constants vanish).
AuxPmf constant_w_aux() {
    std::vector<prob::Alphabet> alphas = {{"q0"}, {"0", "1"}, {"0", "1"},
                                          {"0", "1"}, {"0", "1"}, {"0", "1"}};
    std::vector<double> table(32, 0.0);
    // dims Q W1 W2 X1 X2 Y, row-major, Y fastest; sources and output all fair
    for (std::size_t x1 = 0; x1 < 2; ++x1)
        for (std::size_t x2 = 0; x2 < 2; ++x2)
            for (std::size_t y = 0; y < 2; ++y) table[x1 * 4 + x2 * 2 + y] = 0.125;
    return AuxPmf(prob::JointPmf(std::move(alphas), std::move(table)), 2);
}

double max_beta_constant(const region::BetaConstants& c) {
    return std::max({c.r1, c.r2, c.r1c, c.r2c, c.sum});
}

} // namespace

TEST_SUITE_BEGIN("rate_region");

TEST_CASE("fme textbook elimination") {
    // {x + y <= 1, y >= 0} eliminating y leaves {x <= 1}
    LinearInequalitySystem sys({"x", "y"});
    sys.add_le({1, 1}, 1.0);
    sys.add_ge({0, 1}, 0.0);
    const auto projected = region::fme_eliminate(sys, {"y"});
    REQUIRE(projected.vars() == std::vector<std::string>{"x"});
    REQUIRE(projected.rows().size() == 1);
    CHECK(projected.rows()[0].coeff[0] == doctest::Approx(-1.0));
    CHECK(projected.rows()[0].constant == doctest::Approx(-1.0));
    const double inside[] = {0.5}, outside[] = {1.5};
    CHECK(projected.contains(inside));
    CHECK_FALSE(projected.contains(outside));
}

TEST_CASE("eliminating an absent variable keeps the system") {
    LinearInequalitySystem sys({"x", "y"});
    sys.add_ge({1, 0}, 2.0);
    sys.add_ge({0, 1}, 3.0);
    const auto projected = region::fme_eliminate(sys, {"y"});
    const double pt_in[] = {2.5}, pt_out[] = {1.5};
    CHECK(projected.contains(pt_in));
    CHECK_FALSE(projected.contains(pt_out));
}

TEST_CASE("min sum rate on simple systems") {
    LinearInequalitySystem sys({"R1", "R2", "C"});
    sys.add_ge({1, 0, 0}, 1.0);
    sys.add_ge({0, 1, 0}, 1.0);
    sys.add_ge({0, 0, 1}, 0.0);
    const auto lp = region::min_sum_rate(sys);
    CHECK(lp.value == doctest::Approx(2.0).epsilon(1e-9));

    LinearInequalitySystem infeasible({"R1", "R2", "C"});
    infeasible.add_ge({1, 0, 0}, 2.0);
    infeasible.add_le({1, 0, 0}, 1.0);
    CHECK_THROWS_AS(region::min_sum_rate(infeasible), std::runtime_error);
}

TEST_CASE("markov chain verification") {
    DetRng rng(3);
    // product joint: every chain holds
    const prob::JointPmf prod({{"0", "1"}, {"0", "1"}, {"0", "1"}},
                              [] {
                                  std::vector<double> t;
                                  for (double a : {0.3, 0.7})
                                      for (double b : {0.6, 0.4})
                                          for (double c : {0.2, 0.8}) t.push_back(a * b * c);
                                  return t;
                              }());
    const std::size_t a[] = {0}, b[] = {1}, c[] = {2};
    CHECK(region::markov_verify(prod, a, b, c).holds);

    // A = B = C fully correlated: chain holds (C is a function of B)
    std::vector<double> diag(8, 0.0);
    diag[0] = 0.5;
    diag[7] = 0.5;
    const prob::JointPmf corr({{"0", "1"}, {"0", "1"}, {"0", "1"}}, diag);
    CHECK(region::markov_verify(corr, a, b, c).holds);

    // C = A fair coin, B independent: A - B - C fails
    std::vector<double> bad(8, 0.0);
    for (std::size_t av = 0; av < 2; ++av)
        for (std::size_t bv = 0; bv < 2; ++bv) bad[av * 4 + bv * 2 + av] = 0.25;
    const auto rep = region::markov_verify(prob::JointPmf({{"0", "1"}, {"0", "1"}, {"0", "1"}}, bad),
                                           a, b, c);
    CHECK_FALSE(rep.holds);
    CHECK(rep.max_deviation == doctest::Approx(0.5));
}

TEST_CASE("bsc convolution") {
    CHECK(region::bsc_convolve(0.3, 0.0) == doctest::Approx(0.3));
    CHECK(region::bsc_convolve(0.3, 0.5) == doctest::Approx(0.5));
    CHECK(region::bsc_convolve(0.1, 0.1) == doctest::Approx(0.18));
    CHECK_THROWS_AS(region::bsc_convolve(-0.1, 0.2), std::invalid_argument);
}

TEST_CASE("constant auxiliaries give the nonnegative octant") {
    const AuxPmf aux = constant_w_aux();
    const auto c = region::beta_constants(aux);
    CHECK(max_beta_constant(c) == doctest::Approx(0.0).epsilon(1e-12));
    const auto sys = region::beta_region(aux);
    const double origin[] = {0.0, 0.0, 0.0};
    CHECK(sys.contains(origin));
    CHECK(region::min_sum_rate(sys).value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("sum constant dominates nothing negative") {
    DetRng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const AuxPmf aux = testgen::random_admissible_aux(rng, 2, 1, 2, 2, 2);
        CHECK(region::beta_constants(aux).sum >= -1e-12);
    }
}

TEST_CASE("two-source aux construction and marginal reproduction") {
    const AuxPmf aux = region::example1_aux(0.1, 0.1, 0.03, 0.04);
    CHECK(aux.chains_verified());
    // marginal over (X1, X2, Y) must be the doubly symmetric source with
    // output noise q: P(Y != X1 + X2) = 0.1
    const prob::JointPmf target = aux.target();
    for (std::size_t x1 = 0; x1 < 2; ++x1)
        for (std::size_t x2 = 0; x2 < 2; ++x2)
            for (std::size_t y = 0; y < 2; ++y) {
                const double px = x1 == x2 ? 0.45 : 0.05;
                const double py = ((x1 + x2) % 2 == y) ? 0.9 : 0.1;
                const std::size_t idx[] = {x1, x2, y};
                CHECK(target.prob(idx) == doctest::Approx(px * py).epsilon(1e-12));
            }
}

TEST_CASE("two-source aux boundary and infeasibility") {
    // theta-bar equal to q gives a noiseless output channel
    const double theta = (1.0 - std::sqrt(1.0 - 2.0 * 0.1)) / 2.0;
    const AuxPmf boundary = region::example1_aux(0.1, 0.1, theta, theta);
    CHECK(boundary.chains_verified());
    // Y must equal Z deterministically: H(Y | W1 W2) = H(Z | W1 W2) = 0
    const std::size_t y[] = {AuxPmf::kY}, ws[] = {AuxPmf::kW1, AuxPmf::kW2};
    CHECK(prob::conditional_entropy(boundary.joint(), y, ws) ==
          doctest::Approx(0.0).epsilon(1e-9));

    CHECK_THROWS_AS(region::example1_aux(0.1, 0.1, 0.2, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(region::example1_aux(0.1, 0.0, 0.01, 0.0), std::invalid_argument);
}

TEST_CASE("identity test channels at q = 0 recover the binary-entropy region") {
    const AuxPmf aux = region::example1_aux(0.1, 0.0, 0.0, 0.0);
    const auto sys = region::beta_region(aux);
    const double hb = prob::binary_entropy(0.1);
    const double corner[] = {hb, hb, 0.0};
    CHECK(sys.contains(corner, 1e-6));
    const auto lp = region::min_sum_rate(sys);
    CHECK(lp.value == doctest::Approx(2.0 * hb).epsilon(1e-9));
}

TEST_CASE("region constants match closed forms for the two-source family") {
    const double p = 0.1, q = 0.1, th1 = 0.02, th2 = 0.035;
    const AuxPmf aux = region::example1_aux(p, q, th1, th2);
    const auto c = region::beta_constants(aux);
    const auto hb = [](double t) { return prob::binary_entropy(t); };

    const double theta_bar = region::bsc_convolve(th1, th2);
    const double czw = region::bsc_convolve(p, theta_bar);          // W1 vs W2 flip
    const double q_prime = (q - theta_bar) / (1.0 - 2.0 * theta_bar); // Y vs Z flip
    const double y_vs_xsum = region::bsc_convolve(theta_bar, q_prime);

    // I(Z;W_i) = 0 for this family, so every constant reduces to
    // binary entropies of composed flip probabilities:
    //   I(X1;W1|W2)   = h(czw) - h(th1)
    //   I(X;W1|W2)    = h(czw) - h(th1)           (W1 - X1 - X2 chain)
    //   I(Y;W1|X)     = h(y vs x-sum) - h(conv(th2, q'))
    //   I(Y;W1W2|X)   = h(y vs x-sum) - h(q')
    const double i_xw1 = hb(czw) - hb(th1);
    const double i_xw2 = hb(czw) - hb(th2);
    const double i_yw1 = hb(y_vs_xsum) - hb(region::bsc_convolve(th2, q_prime));
    const double i_yw2 = hb(y_vs_xsum) - hb(region::bsc_convolve(th1, q_prime));
    const double i_yw12 = hb(y_vs_xsum) - hb(q_prime);

    CHECK(c.r1 == doctest::Approx(i_xw1).epsilon(1e-9));
    CHECK(c.r2 == doctest::Approx(i_xw2).epsilon(1e-9));
    CHECK(c.r1c == doctest::Approx(i_xw1 + i_yw1).epsilon(1e-9));
    CHECK(c.r2c == doctest::Approx(i_xw2 + i_yw2).epsilon(1e-9));
    CHECK(c.sum == doctest::Approx(i_xw1 + i_xw2 + i_yw12).epsilon(1e-9));

    // I(Z;W2|Q) vanishes: Z = (X1+X2) + noise is independent of W2
    const auto& j = aux.with_z();
    const std::size_t z[] = {6}, w2[] = {AuxPmf::kW2}, qd[] = {AuxPmf::kQ};
    CHECK(prob::mutual_information(j, z, w2, qd) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("relabeling both W alphabets leaves the constants unchanged") {
    DetRng rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        const AuxPmf aux = testgen::random_admissible_aux(rng, 2, 2, 2, 2, 2);
        // swap 0 <-> 1 on both W1 and W2 (the map w -> w + 1 over F_2)
        const auto& j = aux.joint();
        std::vector<double> flipped(j.table_size());
        std::vector<std::size_t> idx;
        for (std::size_t f = 0; f < j.table_size(); ++f) {
            j.decode_index(f, idx);
            idx[AuxPmf::kW1] ^= 1;
            idx[AuxPmf::kW2] ^= 1;
            flipped[j.flat_index(idx)] = j.probs()[f];
        }
        const AuxPmf relabeled(prob::JointPmf(j.alphabets(), flipped), 2);
        const auto a = region::beta_constants(aux);
        const auto b = region::beta_constants(relabeled);
        CHECK(a.r1 == doctest::Approx(b.r1).epsilon(1e-9));
        CHECK(a.r2 == doctest::Approx(b.r2).epsilon(1e-9));
        CHECK(a.r1c == doctest::Approx(b.r1c).epsilon(1e-9));
        CHECK(a.r2c == doctest::Approx(b.r2c).epsilon(1e-9));
        CHECK(a.sum == doctest::Approx(b.sum).epsilon(1e-9));
    }
}

TEST_CASE("long-form membership constraints") {
    const AuxPmf aux = constant_w_aux();
    const auto sys = region::long_form_region(aux);
    // with constant W the covering constants are log p - 0 = 1... compute:
    const auto c = region::long_form_constants(aux);
    // vars R1 R2 C S1 S2 C1 C2
    const double ok[] = {0.5, 0.5, 0.0, c.s1 + 0.5, c.s2 + 0.5, 0.0, 0.0};
    CHECK(sys.contains(ok, 1e-9));
    // S1 - R1 != S2 - R2 is rejected by the equality rows
    const double skew[] = {0.5, 0.6, 0.0, c.s1 + 0.5, c.s2 + 0.5, 0.0, 0.0};
    CHECK_FALSE(sys.contains(skew, 1e-9));
    // C = 0 forces C1 = C2 = 0
    const double c_used[] = {0.5, 0.5, 0.0, c.s1 + 0.5, c.s2 + 0.5, 0.1, 0.0};
    CHECK_FALSE(sys.contains(c_used, 1e-9));
}

TEST_CASE("projected long form equals the direct region on random auxiliaries") {
    DetRng rng(4242);
    int mismatches = 0;
    for (int trial = 0; trial < 12; ++trial) {
        const std::uint32_t p = trial < 9 ? 2 : 3;
        const AuxPmf aux = testgen::random_admissible_aux(rng, p, 1 + trial % 2, p, p,
                                                          2 + trial % 2);
        const auto beta = region::beta_region(aux);
        const auto projected =
            region::fme_eliminate(region::long_form_region(aux), {"S1", "S2", "C1", "C2"});
        double box = 1.0;
        for (const auto& row : beta.rows()) box = std::max(box, row.constant + 1.0);
        for (int i = 0; i < 4000; ++i) {
            const double pt[] = {rng.uniform_unit() * 1.5 * box, rng.uniform_unit() * 1.5 * box,
                                 rng.uniform_unit() * 1.5 * box};
            const double sa = beta.min_slack(pt);
            const double sb = projected.min_slack(pt);
            if ((sa > 1e-9 && sb < -1e-9) || (sb > 1e-9 && sa < -1e-9)) ++mismatches;
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("structured minimum for the symmetric two-source family") {
    const auto res = region::example1_structured_min(0.1, 0.1, 600);
    CHECK(res.min_sum <= 0.9596 + 1e-3);
    CHECK(res.min_sum < 1.3965);
    CHECK(res.min_sum <= 2.0 * prob::binary_entropy(0.1) + 1e-9); // theta = 0 is feasible
    CHECK(res.sweep.size() >= 600);
    // q = 0 collapses the sweep to the identity channels
    const auto res0 = region::example1_structured_min(0.1, 0.0, 600);
    CHECK(res0.argmin_theta == 0.0);
    CHECK(res0.min_sum == doctest::Approx(2.0 * prob::binary_entropy(0.1)).epsilon(1e-9));
}

TEST_CASE("unstructured sum bound evaluations") {
    const AuxPmf aux = region::example1_aux(0.1, 0.1, 0.0, 0.0);
    CHECK(region::unstructured_sum_bound(aux) ==
          doctest::Approx(1.0 + prob::binary_entropy(0.1)).epsilon(1e-9));
    const auto res = region::example1_unstructured_sum_min(0.1, 0.1, 600);
    CHECK(res.min_sum <= 1.3965 + 1e-3);
    // q = 0 forces theta = 0
    const auto res0 = region::example1_unstructured_sum_min(0.2, 0.0, 600);
    CHECK(res0.min_sum == doctest::Approx(1.0 + prob::binary_entropy(0.2)).epsilon(1e-9));
}

TEST_CASE("vertex-enumeration minimum agrees with a dense grid search") {
    const AuxPmf aux = region::example1_aux(0.1, 0.1, 0.0, 0.0);
    const auto sys = region::beta_region(aux);
    const double lp_min = region::min_sum_rate(sys).value;

    const double step = 0.01;
    double grid_min = std::numeric_limits<double>::infinity();
    for (double r1 = 0.0; r1 <= 1.2; r1 += step)
        for (double r2 = 0.0; r2 <= 1.2; r2 += step)
            for (double c = 0.0; c <= 1.2; c += step) {
                const double pt[] = {r1, r2, c};
                if (sys.contains(pt, 1e-9)) grid_min = std::min(grid_min, r1 + r2 + c);
            }
    CHECK(grid_min >= lp_min - 1e-9);
    CHECK(grid_min <= lp_min + 3.0 * step);
}

TEST_CASE("adding a constraint never lowers the minimum") {
    DetRng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const AuxPmf aux = testgen::random_admissible_aux(rng, 2, 1, 2, 2, 2);
        auto sys = region::beta_region(aux);
        const double base = region::min_sum_rate(sys).value;
        sys.add_ge({1, 1, 1}, base + 0.25);
        CHECK(region::min_sum_rate(sys).value >= base - 1e-9);
    }
}

TEST_CASE("aux validation rejects broken inputs") {
    // non-residue W alphabet
    std::vector<prob::Alphabet> alphas = {{"q0"}, {"a", "b"}, {"0", "1"},
                                          {"0", "1"}, {"0", "1"}, {"0", "1"}};
    std::vector<double> table(64, 1.0 / 64.0);
    CHECK_THROWS_AS(AuxPmf(prob::JointPmf(alphas, table), 2), std::invalid_argument);

    // cardinality violation |W| > |X|
    std::vector<prob::Alphabet> big_w = {{"q0"}, {"0", "1", "2"}, {"0", "1", "2"},
                                         {"0", "1"}, {"0", "1"}, {"0", "1"}};
    std::vector<double> table3(std::size_t{1} * 3 * 3 * 2 * 2 * 2, 1.0 / 72.0);
    CHECK_THROWS_AS(AuxPmf(prob::JointPmf(big_w, table3), 3), std::invalid_argument);

    // chain violation: W1 depends on X2 given (Q, X1)
    DetRng rng(9);
    const auto joint = testgen::random_joint(rng, {1, 2, 2, 2, 2, 2});
    std::vector<prob::Alphabet> alphas2 = joint.alphabets();
    alphas2[1] = prob::residue_alphabet(2);
    alphas2[2] = prob::residue_alphabet(2);
    const AuxPmf aux(prob::JointPmf(alphas2, joint.probs()), 2);
    CHECK_FALSE(aux.chains_verified());
    CHECK_THROWS_AS(region::beta_region(aux), std::invalid_argument);
}

TEST_SUITE_END();
