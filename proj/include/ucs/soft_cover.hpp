#pragma once

#include <cstdint>
#include <vector>

#include "ucs/pmf.hpp"

namespace ucs::softcover {

// Importance-reweighted covering instance: codewords are sampled from q_X
// on an extended alphabet, while the approximated output law comes from a
// target joint p_XY whose X-marginal must be absolutely continuous w.r.t. q.
class ChangeOfMeasureInstance {
public:
    // p_xy is a two-variable joint over (X, Y); X may be a subset of the
    // q alphabet, in which case the extension symbols carry zero p-mass.
    ChangeOfMeasureInstance(prob::JointPmf p_xy, prob::Pmf q_x, double rate, unsigned n);

    const prob::JointPmf& p_xy() const { return p_xy_; }
    const prob::Pmf& q_x() const { return q_x_; }
    const prob::Pmf& p_x() const { return p_x_; }
    double rate() const { return rate_; }
    unsigned blocklength() const { return n_; }
    std::uint64_t codebook_size() const; // ceil(2^{nR})

    std::size_t x_letters() const { return q_x_.size(); }
    std::size_t y_letters() const { return p_xy_.dim_size(1); }
    // p(y|x) row for an X letter; extension letters have no row (p(x) = 0).
    const std::vector<double>& y_given_x(std::size_t x) const { return rows_[x]; }

    // Exact n-fold output law p^n_Y as a flat table over Y^n.
    std::vector<double> output_product() const;

private:
    prob::JointPmf p_xy_;
    prob::Pmf q_x_;
    prob::Pmf p_x_;
    prob::Pmf p_y_;
    std::vector<std::vector<double>> rows_;
    double rate_;
    unsigned n_;
};

// Per-trial exact total variation values for one codebook ensemble.
struct SoftCoverReport {
    std::vector<double> tv;     // 1/2-normalized TV per trial
    std::vector<double> mass;   // total mass of the (unnormalized) mixture
    double mean_tv = 0.0;
    double q10 = 0.0, median = 0.0, q90 = 0.0;
    double mean_l1 = 0.0;       // sum-of-absolute convention (2 * TV)
    double threshold = 0.0;     // rate at which the ensemble mean TV vanishes

    void finalize(double threshold_rate);
};

// R* = I_p(X;Y) - H_p(X) + H_q(X), equivalently H_q(X) - H_p(X|Y).
double threshold_rate(const prob::JointPmf& p_xy, const prob::Pmf& q_x);

// (1/M) sum_m ratio(m) p^n_{Y|X}(. | X^n(m)) with ratio = p^n_X / q^n_X.
// The result is a nonnegative table that is normalized only in ensemble
// expectation; its total mass is returned alongside.
struct MixtureResult {
    std::vector<double> table; // over Y^n
    double mass = 0.0;
};
MixtureResult approx_output_pmf(const ChangeOfMeasureInstance& inst,
                                const std::vector<std::vector<std::uint32_t>>& codebook);

std::vector<std::vector<std::uint32_t>> sample_iid_codebook(const ChangeOfMeasureInstance& inst,
                                                            std::uint64_t seed);

// Random coset {aG + B : a in F_p^k} with uniform G, B. Requires the
// extended alphabet to be the residues of F_p and q uniform. The codebook
// has p^k entries; k is chosen so the rate is as close as possible to R.
struct CosetCodebook {
    std::vector<std::vector<std::uint32_t>> words;
    unsigned k = 0;
};
CosetCodebook sample_coset_codebook(const ChangeOfMeasureInstance& inst, std::uint64_t seed,
                                    bool force_full_rank = false);

SoftCoverReport ensemble_mean_tv(const ChangeOfMeasureInstance& inst,
                                 const std::vector<std::uint64_t>& seeds,
                                 unsigned jobs = 1);

// Side-by-side comparison of the IID sampler with the pairwise-independent
// coset sampler at matched rates.
struct PairwiseComparison {
    SoftCoverReport iid;
    SoftCoverReport coset;
    unsigned coset_k = 0;
    std::uint64_t coset_size = 0;
};
PairwiseComparison iid_vs_pairwise(const ChangeOfMeasureInstance& inst,
                                   const std::vector<std::uint64_t>& seeds,
                                   bool force_full_rank = false, unsigned jobs = 1);

} // namespace ucs::softcover
