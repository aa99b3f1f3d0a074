#include "ucs/soft_cover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ucs/common.hpp"
#include "ucs/field.hpp"

namespace ucs::softcover {

ChangeOfMeasureInstance::ChangeOfMeasureInstance(prob::JointPmf p_xy, prob::Pmf q_x,
                                                 double rate, unsigned n)
    : p_xy_(std::move(p_xy)), q_x_(std::move(q_x)),
      p_x_(p_xy_.marginal_pmf(0)), p_y_(p_xy_.marginal_pmf(1)),
      rate_(rate), n_(n) {
    if (p_xy_.dims() != 2) throw std::invalid_argument("instance needs a two-variable joint");
    if (n_ == 0) throw std::invalid_argument("blocklength must be >= 1");
    if (rate_ < 0.0) throw std::invalid_argument("rate must be nonnegative");

    // The p-alphabet must be a prefix of the extended alphabet; extension
    // symbols carry zero p-mass.
    const auto& px_syms = p_xy_.alphabets()[0];
    if (px_syms.size() > q_x_.size())
        throw std::invalid_argument("extended alphabet smaller than target alphabet");
    for (std::size_t i = 0; i < px_syms.size(); ++i)
        if (px_syms[i] != q_x_.symbols()[i])
            throw std::invalid_argument("target alphabet must be a prefix of the extended alphabet");

    // absolute continuity: q(x) = 0 forces p(x) = 0
    for (std::size_t i = 0; i < px_syms.size(); ++i)
        if (q_x_.prob(i) == 0.0 && p_x_.prob(i) > 0.0)
            throw std::invalid_argument("p_X not absolutely continuous w.r.t. q_X");

    rows_.assign(q_x_.size(), std::vector<double>(y_letters(), 0.0));
    for (std::size_t x = 0; x < px_syms.size(); ++x) {
        if (p_x_.prob(x) == 0.0) continue;
        for (std::size_t y = 0; y < y_letters(); ++y) {
            std::size_t idx[] = {x, y};
            rows_[x][y] = p_xy_.prob(idx) / p_x_.prob(x);
        }
    }
}

std::uint64_t ChangeOfMeasureInstance::codebook_size() const {
    const double m = std::exp2(static_cast<double>(n_) * rate_);
    if (m > 1e12) throw BudgetError("codebook size 2^(nR) too large");
    return static_cast<std::uint64_t>(std::ceil(m - 1e-9));
}

std::vector<double> ChangeOfMeasureInstance::output_product() const {
    prob::WordSpace ws{y_letters(), n_};
    const std::uint64_t total = ws.size();
    std::vector<double> out(total, 0.0);
    std::vector<std::uint32_t> w;
    for (std::uint64_t i = 0; i < total; ++i) {
        ws.decode(i, w);
        double v = 1.0;
        for (auto c : w) v *= p_y_.prob(c);
        out[i] = v;
    }
    return out;
}

void SoftCoverReport::finalize(double threshold_rate) {
    threshold = threshold_rate;
    if (tv.empty()) return;
    std::vector<double> sorted = tv;
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    for (double v : sorted) sum += v;
    mean_tv = sum / static_cast<double>(sorted.size());
    mean_l1 = 2.0 * mean_tv;
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(sorted.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        const double f = pos - static_cast<double>(lo);
        return sorted[lo] * (1.0 - f) + sorted[hi] * f;
    };
    q10 = quantile(0.10);
    median = quantile(0.50);
    q90 = quantile(0.90);
}

double threshold_rate(const prob::JointPmf& p_xy, const prob::Pmf& q_x) {
    if (p_xy.dims() != 2) throw std::invalid_argument("threshold_rate needs a two-variable joint");
    const std::size_t a[] = {0}, b[] = {1};
    const double i_xy = prob::mutual_information(p_xy, a, b);
    const double h_p = prob::entropy(p_xy.marginal_pmf(0));
    const double h_q = prob::entropy(q_x);
    return i_xy - h_p + h_q;
}

MixtureResult approx_output_pmf(const ChangeOfMeasureInstance& inst,
                                const std::vector<std::vector<std::uint32_t>>& codebook) {
    if (codebook.empty()) throw std::invalid_argument("empty codebook");
    const unsigned n = inst.blocklength();
    prob::WordSpace ws{inst.y_letters(), n};
    const std::uint64_t y_total = ws.size();

    MixtureResult res;
    res.table.assign(y_total, 0.0);
    const double inv_m = 1.0 / static_cast<double>(codebook.size());

    std::vector<std::uint32_t> y;
    for (const auto& x : codebook) {
        if (x.size() != n) throw std::invalid_argument("codeword length mismatch");
        double ratio = 1.0;
        for (auto c : x) {
            if (inst.q_x().prob(c) == 0.0)
                throw std::domain_error("codeword letter has zero sampling probability");
            const double px = c < inst.p_x().size() ? inst.p_x().prob(c) : 0.0;
            ratio *= px / inst.q_x().prob(c);
        }
        if (ratio == 0.0) continue;
        const double weight = inv_m * ratio;
        for (std::uint64_t yi = 0; yi < y_total; ++yi) {
            ws.decode(yi, y);
            double v = 1.0;
            for (unsigned t = 0; t < n && v != 0.0; ++t) v *= inst.y_given_x(x[t])[y[t]];
            res.table[yi] += weight * v;
        }
    }
    for (double v : res.table) res.mass += v;
    return res;
}

std::vector<std::vector<std::uint32_t>> sample_iid_codebook(const ChangeOfMeasureInstance& inst,
                                                            std::uint64_t seed) {
    DetRng rng(seed);
    const auto cum = inst.q_x().cumulative();
    const std::uint64_t m = inst.codebook_size();
    std::vector<std::vector<std::uint32_t>> words(m, std::vector<std::uint32_t>(inst.blocklength()));
    for (auto& w : words)
        for (auto& c : w) c = static_cast<std::uint32_t>(rng.sample_cdf(cum));
    return words;
}

CosetCodebook sample_coset_codebook(const ChangeOfMeasureInstance& inst, std::uint64_t seed,
                                    bool force_full_rank) {
    const std::size_t q = inst.x_letters();
    if (q > 0xFFFFFFFFull || !ff::is_prime(static_cast<std::uint32_t>(q)))
        throw std::invalid_argument("coset mode requires a prime extended alphabet size");
    const std::uint32_t p = static_cast<std::uint32_t>(q);
    for (std::size_t i = 0; i < q; ++i)
        if (std::abs(inst.q_x().prob(i) - 1.0 / static_cast<double>(q)) > 1e-12)
            throw std::invalid_argument("coset mode requires uniform q_X");

    const unsigned n = inst.blocklength();
    const double logp = std::log2(static_cast<double>(p));
    unsigned k = static_cast<unsigned>(std::llround(inst.rate() * n / logp));
    k = std::min(k, n);

    DetRng rng(seed);
    CosetCodebook out;
    out.k = k;
    for (;;) {
        std::vector<std::uint32_t> g_entries(static_cast<std::size_t>(k) * n);
        for (auto& e : g_entries) e = rng.uniform_residue(p);
        ff::FieldMatrix g(k, n, std::move(g_entries), p);
        if (force_full_rank && ff::mat_rank(g) < k) continue;
        std::vector<std::uint32_t> b_entries(n);
        for (auto& e : b_entries) e = rng.uniform_residue(p);
        auto words = ff::coset_enumerate(g, ff::FieldVector(std::move(b_entries), p));
        out.words.reserve(words.size());
        for (auto& w : words) out.words.push_back(w.entries());
        return out;
    }
}

namespace {

SoftCoverReport run_trials(const ChangeOfMeasureInstance& inst,
                           const std::vector<std::uint64_t>& seeds,
                           bool coset_mode, bool force_full_rank, unsigned jobs) {
    const std::vector<double> target = inst.output_product();
    SoftCoverReport rep;
    rep.tv.assign(seeds.size(), 0.0);
    rep.mass.assign(seeds.size(), 0.0);
    parallel_for(jobs, seeds.size(), [&](std::size_t i) {
        std::vector<std::vector<std::uint32_t>> codebook;
        if (coset_mode)
            codebook = sample_coset_codebook(inst, seeds[i], force_full_rank).words;
        else
            codebook = sample_iid_codebook(inst, seeds[i]);
        MixtureResult mix = approx_output_pmf(inst, codebook);
        rep.tv[i] = prob::total_variation(std::span<const double>(target),
                                          std::span<const double>(mix.table));
        rep.mass[i] = mix.mass;
    });
    rep.finalize(threshold_rate(inst.p_xy(), inst.q_x()));
    return rep;
}

} // namespace

SoftCoverReport ensemble_mean_tv(const ChangeOfMeasureInstance& inst,
                                 const std::vector<std::uint64_t>& seeds, unsigned jobs) {
    return run_trials(inst, seeds, false, false, jobs);
}

PairwiseComparison iid_vs_pairwise(const ChangeOfMeasureInstance& inst,
                                   const std::vector<std::uint64_t>& seeds,
                                   bool force_full_rank, unsigned jobs) {
    PairwiseComparison cmp;
    cmp.iid = run_trials(inst, seeds, false, false, jobs);
    cmp.coset = run_trials(inst, seeds, true, force_full_rank, jobs);
    CosetCodebook probe = sample_coset_codebook(inst, seeds.empty() ? 0 : seeds[0], force_full_rank);
    cmp.coset_k = probe.k;
    cmp.coset_size = probe.words.size();
    return cmp;
}

} // namespace ucs::softcover
