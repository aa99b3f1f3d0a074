#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ucs/pmf.hpp"

namespace ucs::prob {

// Robust (letter) typicality: x^n is delta-typical for p iff
// |freq(a) - p(a)| <= delta * p(a) for every a. Symbols with p(a) = 0
// must not appear.
bool typical(std::span<const std::uint32_t> word, std::span<const double> probs, double delta);
bool typical(std::span<const std::uint32_t> word, const Pmf& p, double delta);

// Conditional variant: w^n is delta-typical for W given x^n iff the joint
// empirical frequency of the pairs (x_t, w_t) passes the same test against
// the two-variable joint p_xw.
bool cond_typical(std::span<const std::uint32_t> x_word,
                  std::span<const std::uint32_t> w_word,
                  const JointPmf& p_xw, double delta);

// Either a marginal set T_delta(X) or a conditional set T_delta(W | x^n).
class TypicalSet {
public:
    TypicalSet(Pmf base, unsigned n, double delta);
    TypicalSet(JointPmf p_xw, std::vector<std::uint32_t> x_word, double delta);

    unsigned blocklength() const { return n_; }
    double delta() const { return delta_; }
    std::size_t letter_count() const;

    bool contains(std::span<const std::uint32_t> word) const;

    // All members, in lexicographic word order. Guarded by the budget.
    std::vector<std::vector<std::uint32_t>> enumerate() const;

    // Probability mass of the set under the base (or conditional) law.
    double mass() const;

private:
    std::optional<Pmf> base_;
    std::optional<JointPmf> p_xw_;
    std::vector<std::uint32_t> x_word_;
    unsigned n_;
    double delta_;
};

} // namespace ucs::prob
