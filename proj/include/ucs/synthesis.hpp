#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ucs/pmf.hpp"
#include "ucs/typicality.hpp"
#include "ucs/ucc.hpp"

namespace ucs::synth {

// Distributed synthesis instance: target joint p_{X1 X2 Y}, per-encoder test
// channels into F_p, output channel on Z = W1 + W2, typicality width delta,
// normalizer slack eta, and the code parameters.
class SynthesisProblem {
public:
    SynthesisProblem(prob::JointPmf target, prob::CondPmf chan_w1, prob::CondPmf chan_w2,
                     prob::CondPmf chan_y_given_z, double delta, double eta,
                     ucc::UccParams params);

    // Builds the target as the joint induced by the channels; always
    // admissible by construction.
    static SynthesisProblem from_channels(const prob::JointPmf& p_x1x2,
                                          prob::CondPmf chan_w1, prob::CondPmf chan_w2,
                                          prob::CondPmf chan_y_given_z,
                                          double delta, double eta, ucc::UccParams params);

    // Largest deviation of the channel-induced joint from the target.
    double admissibility_gap() const;
    void require_admissible(double tol = 1e-6) const;

    const prob::JointPmf& target() const { return target_; }
    const ucc::UccParams& params() const { return params_; }
    double delta() const { return delta_; }
    double delta_hat() const { return delta_ * static_cast<double>(params_.p); }
    double eta() const { return eta_; }

    std::size_t x1_letters() const { return x1_.size(); }
    std::size_t x2_letters() const { return x2_.size(); }
    std::size_t y_letters() const { return y_.size(); }

    const prob::Pmf& p_x1() const { return x1_marg_; }
    const prob::Pmf& p_x2() const { return x2_marg_; }
    const prob::Pmf& p_y() const { return y_marg_; }
    const prob::Pmf& p_z() const { return z_marg_; }
    const prob::JointPmf& p_x1x2() const { return x12_; }
    const prob::JointPmf& p_x1w1() const { return x1w1_; }
    const prob::JointPmf& p_x2w2() const { return x2w2_; }
    const prob::CondPmf& chan_w(int side) const { return side == 1 ? chan_w1_ : chan_w2_; }
    const prob::CondPmf& chan_y() const { return chan_y_; }

private:
    prob::JointPmf target_;
    prob::CondPmf chan_w1_, chan_w2_, chan_y_;
    double delta_, eta_;
    ucc::UccParams params_;

    prob::Alphabet x1_, x2_, y_;
    prob::Pmf x1_marg_, x2_marg_, y_marg_, z_marg_;
    prob::JointPmf x12_, x1w1_, x2w2_;
};

// Message index layout: bins 0 .. p^l - 1, then the reject symbol.
struct MessageSpace {
    std::uint64_t bins = 1;
    std::uint64_t reject() const { return bins; }
    std::uint64_t size() const { return bins + 1; }
};

// Randomized-encoder weight E(a, m | x^n). Zero for atypical x^n.
double encoder_weight(const SynthesisProblem& problem, const ucc::UccCodebookPair& pair,
                      int side, std::uint64_t a_index, std::uint64_t m_index,
                      std::uint64_t mu, std::span<const std::uint32_t> x_word);

// s^{(mu)}(x^n): total weight mass over all (a, m).
double overflow_mass(const SynthesisProblem& problem, const ucc::UccCodebookPair& pair,
                     int side, std::uint64_t mu, std::span<const std::uint32_t> x_word);

// Row over bins plus the reject symbol (last entry).
std::vector<double> build_encoder_pmf(const SynthesisProblem& problem,
                                      const ucc::UccCodebookPair& pair,
                                      int side, std::uint64_t mu,
                                      std::span<const std::uint32_t> x_word);

// Coarse indices whose summed-shift codeword is delta-hat typical for Z.
std::vector<std::uint64_t> decoder_ambiguity_set(const SynthesisProblem& problem,
                                                 const ucc::UccCodebookPair& pair,
                                                 std::uint64_t mu1, std::uint64_t mu2,
                                                 std::uint64_t m1, std::uint64_t m2);

// Decoded Z-word, or empty when the decoder emits the failure word w0
// (reject message, empty or non-singleton ambiguity set).
std::optional<std::vector<std::uint32_t>> decode(const SynthesisProblem& problem,
                                                 const ucc::UccCodebookPair& pair,
                                                 std::uint64_t mu1, std::uint64_t mu2,
                                                 std::uint64_t m1, std::uint64_t m2);

// Exact induced joint over (x1^n, x2^n, y^n), averaged over the common
// randomness. On w0 the decoder emits y^n from the product of the target
// Y-marginal.
prob::JointPmf induced_joint_exact(const SynthesisProblem& problem,
                                   const ucc::UccCodebookPair& pair);

// Total variation between the n-fold target product and the induced joint.
double synthesis_tv(const SynthesisProblem& problem, const ucc::UccCodebookPair& pair);

struct ProtocolSample {
    std::vector<std::uint32_t> x1, x2, y;
};

std::vector<ProtocolSample> simulate_samples(const SynthesisProblem& problem,
                                             const ucc::UccCodebookPair& pair,
                                             std::uint64_t seed, std::size_t count);

// Source- and ensemble-averaged probability of encoder overflow s > 1.
double overflow_probability(const SynthesisProblem& problem, const ucc::UccParams& params,
                            const std::vector<std::uint64_t>& seeds, int side,
                            unsigned jobs = 1);

// Frequency of a non-singleton decoder ambiguity set among protocol
// executions in which both messages are non-reject.
double ambiguity_probability(const SynthesisProblem& problem, const ucc::UccParams& params,
                             const std::vector<std::uint64_t>& seeds,
                             std::size_t executions_per_seed = 2000, unsigned jobs = 1);

} // namespace ucs::synth
