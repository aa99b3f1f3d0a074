#include "ucs/synthesis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "ucs/common.hpp"
#include "ucs/field.hpp"

namespace ucs::synth {

namespace {

prob::JointPmf channel_induced_joint(const prob::JointPmf& p_x1x2,
                                     const prob::CondPmf& chan_w1, const prob::CondPmf& chan_w2,
                                     const prob::CondPmf& chan_y) {
    const std::size_t nx1 = p_x1x2.dim_size(0), nx2 = p_x1x2.dim_size(1);
    const std::size_t nw = chan_w1.output_size();
    const std::size_t ny = chan_y.output_size();
    std::vector<double> table(nx1 * nx2 * ny, 0.0);
    for (std::size_t x1 = 0; x1 < nx1; ++x1)
        for (std::size_t x2 = 0; x2 < nx2; ++x2) {
            std::size_t idx[] = {x1, x2};
            const double px = p_x1x2.prob(idx);
            if (px == 0.0) continue;
            for (std::size_t w1 = 0; w1 < nw; ++w1)
                for (std::size_t w2 = 0; w2 < nw; ++w2) {
                    const double pw = chan_w1.prob(x1, w1) * chan_w2.prob(x2, w2);
                    if (pw == 0.0) continue;
                    const std::size_t z = (w1 + w2) % nw;
                    for (std::size_t y = 0; y < ny; ++y)
                        table[(x1 * nx2 + x2) * ny + y] += px * pw * chan_y.prob(z, y);
                }
        }
    return prob::JointPmf({p_x1x2.alphabets()[0], p_x1x2.alphabets()[1], chan_y.output()},
                          std::move(table));
}

prob::Pmf sum_channel_marginal(const prob::JointPmf& p_x1x2,
                               const prob::CondPmf& chan_w1, const prob::CondPmf& chan_w2,
                               std::uint32_t p) {
    std::vector<double> pz(p, 0.0);
    for (std::size_t x1 = 0; x1 < p_x1x2.dim_size(0); ++x1)
        for (std::size_t x2 = 0; x2 < p_x1x2.dim_size(1); ++x2) {
            std::size_t idx[] = {x1, x2};
            const double px = p_x1x2.prob(idx);
            if (px == 0.0) continue;
            for (std::size_t w1 = 0; w1 < p; ++w1)
                for (std::size_t w2 = 0; w2 < p; ++w2)
                    pz[(w1 + w2) % p] += px * chan_w1.prob(x1, w1) * chan_w2.prob(x2, w2);
        }
    return prob::Pmf(prob::residue_alphabet(p), std::move(pz));
}

prob::JointPmf letter_joint(const prob::Pmf& px, const prob::CondPmf& chan) {
    std::vector<double> table(px.size() * chan.output_size(), 0.0);
    for (std::size_t x = 0; x < px.size(); ++x)
        for (std::size_t w = 0; w < chan.output_size(); ++w)
            table[x * chan.output_size() + w] = px.prob(x) * chan.prob(x, w);
    return prob::JointPmf({px.symbols(), chan.output()}, std::move(table));
}

} // namespace

SynthesisProblem::SynthesisProblem(prob::JointPmf target, prob::CondPmf chan_w1,
                                   prob::CondPmf chan_w2, prob::CondPmf chan_y_given_z,
                                   double delta, double eta, ucc::UccParams params)
    : target_(std::move(target)), chan_w1_(std::move(chan_w1)), chan_w2_(std::move(chan_w2)),
      chan_y_(std::move(chan_y_given_z)), delta_(delta), eta_(eta), params_(params),
      x1_(target_.alphabets()[0]), x2_(target_.alphabets()[1]), y_(target_.alphabets()[2]),
      x1_marg_(target_.marginal_pmf(0)), x2_marg_(target_.marginal_pmf(1)),
      y_marg_(target_.marginal_pmf(2)),
      z_marg_(prob::Pmf::uniform(prob::residue_alphabet(params.p))),
      x12_([&] {
          const std::size_t keep[] = {0, 1};
          return target_.marginal(keep);
      }()),
      x1w1_(letter_joint(x1_marg_, chan_w1_)),
      x2w2_(letter_joint(x2_marg_, chan_w2_)) {
    params_.validate();
    if (target_.dims() != 3) throw std::invalid_argument("target must be a three-variable joint");
    if (delta_ <= 0.0) throw std::invalid_argument("delta must be positive");
    if (eta_ <= 0.0) throw std::invalid_argument("eta must be positive");
    prob::require_residue_alphabet(chan_w1_.output(), params_.p, "W1 alphabet");
    prob::require_residue_alphabet(chan_w2_.output(), params_.p, "W2 alphabet");
    prob::require_residue_alphabet(chan_y_.input(), params_.p, "Z alphabet");
    if (chan_w1_.input() != x1_ || chan_w2_.input() != x2_)
        throw std::invalid_argument("test channel input alphabets must match the source alphabets");
    if (chan_y_.output() != y_)
        throw std::invalid_argument("output channel alphabet must match the target Y alphabet");
    z_marg_ = sum_channel_marginal(x12_, chan_w1_, chan_w2_, params_.p);
}

SynthesisProblem SynthesisProblem::from_channels(const prob::JointPmf& p_x1x2,
                                                 prob::CondPmf chan_w1, prob::CondPmf chan_w2,
                                                 prob::CondPmf chan_y_given_z,
                                                 double delta, double eta,
                                                 ucc::UccParams params) {
    prob::JointPmf target = channel_induced_joint(p_x1x2, chan_w1, chan_w2, chan_y_given_z);
    return SynthesisProblem(std::move(target), std::move(chan_w1), std::move(chan_w2),
                            std::move(chan_y_given_z), delta, eta, params);
}

double SynthesisProblem::admissibility_gap() const {
    const prob::JointPmf induced = channel_induced_joint(x12_, chan_w1_, chan_w2_, chan_y_);
    double gap = 0.0;
    for (std::size_t f = 0; f < target_.table_size(); ++f)
        gap = std::max(gap, std::abs(induced.probs()[f] - target_.probs()[f]));
    return gap;
}

void SynthesisProblem::require_admissible(double tol) const {
    const double gap = admissibility_gap();
    if (gap > tol)
        throw std::invalid_argument("channels do not reproduce the target joint: gap " +
                                    std::to_string(gap));
}

namespace {

// Codewords of one (side, mu) table, indexed a * bins + m.
std::vector<std::vector<std::uint32_t>> composite_codewords(const ucc::UccCodebookPair& pair,
                                                            int side, std::uint64_t mu) {
    const auto& params = pair.params();
    const std::uint64_t coarse = params.coarse_count();
    const std::uint64_t bins = params.bin_count(side);
    std::vector<std::vector<std::uint32_t>> words;
    words.reserve(coarse * bins);
    for (std::uint64_t a = 0; a < coarse; ++a)
        for (std::uint64_t m = 0; m < bins; ++m)
            words.push_back(pair.codeword(side, a, m, mu).entries());
    return words;
}

double word_channel_prob(const prob::CondPmf& chan, std::span<const std::uint32_t> x,
                         std::span<const std::uint32_t> w) {
    double v = 1.0;
    for (std::size_t t = 0; t < x.size() && v != 0.0; ++t) v *= chan.prob(x[t], w[t]);
    return v;
}

struct EncoderScratch {
    const SynthesisProblem& problem;
    int side;
    const prob::Pmf& p_x;
    const prob::JointPmf& p_xw;
    const prob::CondPmf& chan;
    double scale; // p^{n-k-l} / (1 + eta)

    EncoderScratch(const SynthesisProblem& prob_, int side_)
        : problem(prob_), side(side_),
          p_x(side_ == 1 ? prob_.p_x1() : prob_.p_x2()),
          p_xw(side_ == 1 ? prob_.p_x1w1() : prob_.p_x2w2()),
          chan(prob_.chan_w(side_)) {
        const auto& params = prob_.params();
        const int exponent = static_cast<int>(params.n) -
                             static_cast<int>(params.k + (side_ == 1 ? params.l1 : params.l2));
        scale = std::pow(static_cast<double>(params.p), exponent) / (1.0 + prob_.eta());
    }

    // Bin sums plus reject mass; `words` indexed a * bins + m.
    std::vector<double> row(std::span<const std::uint32_t> x_word,
                            const std::vector<std::vector<std::uint32_t>>& words) const {
        const auto& params = problem.params();
        const std::uint64_t coarse = params.coarse_count();
        const std::uint64_t bins = params.bin_count(side);
        std::vector<double> out(bins + 1, 0.0);
        if (!prob::typical(x_word, p_x, problem.delta())) {
            out[bins] = 1.0;
            return out;
        }
        double s = 0.0;
        for (std::uint64_t a = 0; a < coarse; ++a)
            for (std::uint64_t m = 0; m < bins; ++m) {
                const auto& w = words[a * bins + m];
                if (!prob::cond_typical(x_word, w, p_xw, problem.delta())) continue;
                const double pw = word_channel_prob(chan, x_word, w);
                if (pw == 0.0) continue;
                const double e = scale * pw;
                out[m] += e;
                s += e;
            }
        if (s > 1.0) {
            std::fill(out.begin(), out.end(), 0.0);
            out[bins] = 1.0;
        } else {
            out[bins] = 1.0 - s;
        }
        return out;
    }

    double mass(std::span<const std::uint32_t> x_word,
                const std::vector<std::vector<std::uint32_t>>& words) const {
        const auto& params = problem.params();
        const std::uint64_t coarse = params.coarse_count();
        const std::uint64_t bins = params.bin_count(side);
        if (!prob::typical(x_word, p_x, problem.delta())) return 0.0;
        double s = 0.0;
        for (std::uint64_t a = 0; a < coarse; ++a)
            for (std::uint64_t m = 0; m < bins; ++m) {
                const auto& w = words[a * bins + m];
                if (!prob::cond_typical(x_word, w, p_xw, problem.delta())) continue;
                s += scale * word_channel_prob(chan, x_word, w);
            }
        return s;
    }
};

} // namespace

double encoder_weight(const SynthesisProblem& problem, const ucc::UccCodebookPair& pair,
                      int side, std::uint64_t a_index, std::uint64_t m_index,
                      std::uint64_t mu, std::span<const std::uint32_t> x_word) {
    EncoderScratch enc(problem, side);
    if (!prob::typical(x_word, enc.p_x, problem.delta())) return 0.0;
    const auto w = pair.codeword(side, a_index, m_index, mu).entries();
    if (!prob::cond_typical(x_word, w, enc.p_xw, problem.delta())) return 0.0;
    return enc.scale * word_channel_prob(enc.chan, x_word, w);
}

double overflow_mass(const SynthesisProblem& problem, const ucc::UccCodebookPair& pair,
                     int side, std::uint64_t mu, std::span<const std::uint32_t> x_word) {
    EncoderScratch enc(problem, side);
    return enc.mass(x_word, composite_codewords(pair, side, mu));
}

std::vector<double> build_encoder_pmf(const SynthesisProblem& problem,
                                      const ucc::UccCodebookPair& pair,
                                      int side, std::uint64_t mu,
                                      std::span<const std::uint32_t> x_word) {
    EncoderScratch enc(problem, side);
    return enc.row(x_word, composite_codewords(pair, side, mu));
}

std::vector<std::uint64_t> decoder_ambiguity_set(const SynthesisProblem& problem,
                                                 const ucc::UccCodebookPair& pair,
                                                 std::uint64_t mu1, std::uint64_t mu2,
                                                 std::uint64_t m1, std::uint64_t m2) {
    const auto& params = problem.params();
    if (m1 >= params.bin_count(1) || m2 >= params.bin_count(2))
        throw std::invalid_argument("decoder needs bin indices, not the reject symbol");
    const ff::FieldVector shift = pair.shift(1, mu1, m1) + pair.shift(2, mu2, m2);
    const std::uint64_t coarse = params.coarse_count();
    std::vector<std::uint64_t> hits;
    std::vector<std::uint32_t> digits;
    const double dhat = problem.delta_hat();
    for (std::uint64_t a = 0; a < coarse; ++a) {
        ff::index_vector(a, params.p, params.k, digits);
        const ff::FieldVector word =
            params.k == 0 ? shift
                          : ff::mat_vec_mul(ff::FieldVector(digits, params.p), pair.generator()) + shift;
        if (prob::typical(word.entries(), problem.p_z(), dhat)) hits.push_back(a);
    }
    return hits;
}

std::optional<std::vector<std::uint32_t>> decode(const SynthesisProblem& problem,
                                                 const ucc::UccCodebookPair& pair,
                                                 std::uint64_t mu1, std::uint64_t mu2,
                                                 std::uint64_t m1, std::uint64_t m2) {
    const auto& params = problem.params();
    if (m1 >= params.bin_count(1) || m2 >= params.bin_count(2)) return std::nullopt;
    const auto hits = decoder_ambiguity_set(problem, pair, mu1, mu2, m1, m2);
    if (hits.size() != 1) return std::nullopt;
    const ff::FieldVector shift = pair.shift(1, mu1, m1) + pair.shift(2, mu2, m2);
    if (params.k == 0) return shift.entries();
    std::vector<std::uint32_t> digits;
    ff::index_vector(hits[0], params.p, params.k, digits);
    return (ff::mat_vec_mul(ff::FieldVector(digits, params.p), pair.generator()) + shift).entries();
}

namespace {

struct ExactEngine {
    const SynthesisProblem& problem;
    const ucc::UccCodebookPair& pair;
    unsigned n;
    prob::WordSpace ws_x1, ws_x2, ws_y, ws_z;
    std::uint64_t t1, t2, ty, tz;
    MessageSpace msgs1, msgs2;

    // y-output rows per decoded z-word, plus the failure row (last).
    std::vector<std::vector<double>> y_rows;
    // decode lookup value: z-word index, or tz for the failure word
    std::vector<std::uint64_t> decode_lut;
    // encoder rows [mu][x index * msgs + m]
    std::vector<std::vector<double>> enc1, enc2;

    ExactEngine(const SynthesisProblem& prob_, const ucc::UccCodebookPair& pair_)
        : problem(prob_), pair(pair_), n(prob_.params().n),
          ws_x1{prob_.x1_letters(), n}, ws_x2{prob_.x2_letters(), n},
          ws_y{prob_.y_letters(), n}, ws_z{prob_.params().p, n} {
        const auto& params = problem.params();
        t1 = ws_x1.size();
        t2 = ws_x2.size();
        ty = ws_y.size();
        tz = ws_z.size();
        msgs1.bins = params.bin_count(1);
        msgs2.bins = params.bin_count(2);

        if (t1 > kEnumerationBudget / t2 || t1 * t2 > kEnumerationBudget / ty)
            throw BudgetError("exact joint table exceeds the enumeration budget");
        if (tz + 1 > kEnumerationBudget / ty)
            throw BudgetError("output-row table exceeds the enumeration budget");
        const std::uint64_t mu_pairs = params.n1 * params.n2;
        const std::uint64_t msg_pairs = msgs1.size() * msgs2.size();
        if (mu_pairs > kEnumerationBudget / msg_pairs ||
            t1 * t2 > kEnumerationBudget / (mu_pairs * msg_pairs))
            throw BudgetError("message tableau exceeds the enumeration budget");

        build_y_rows();
        build_decode_lut();
        enc1 = build_encoder_rows(1);
        enc2 = build_encoder_rows(2);
    }

    void build_y_rows() {
        y_rows.assign(tz + 1, std::vector<double>(ty, 0.0));
        std::vector<std::uint32_t> zw, yw;
        for (std::uint64_t zi = 0; zi < tz; ++zi) {
            ws_z.decode(zi, zw);
            for (std::uint64_t yi = 0; yi < ty; ++yi) {
                ws_y.decode(yi, yw);
                double v = 1.0;
                for (unsigned t = 0; t < n && v != 0.0; ++t)
                    v *= problem.chan_y().prob(zw[t], yw[t]);
                y_rows[zi][yi] = v;
            }
        }
        for (std::uint64_t yi = 0; yi < ty; ++yi) {
            ws_y.decode(yi, yw);
            double v = 1.0;
            for (auto c : yw) v *= problem.p_y().prob(c);
            y_rows[tz][yi] = v;
        }
    }

    void build_decode_lut() {
        const auto& params = problem.params();
        const std::uint64_t mu_pairs = params.n1 * params.n2;
        decode_lut.assign(mu_pairs * msgs1.size() * msgs2.size(), tz);
        for (std::uint64_t mu1 = 0; mu1 < params.n1; ++mu1)
            for (std::uint64_t mu2 = 0; mu2 < params.n2; ++mu2)
                for (std::uint64_t m1 = 0; m1 < msgs1.size(); ++m1)
                    for (std::uint64_t m2 = 0; m2 < msgs2.size(); ++m2) {
                        const std::uint64_t idx =
                            ((mu1 * params.n2 + mu2) * msgs1.size() + m1) * msgs2.size() + m2;
                        if (m1 == msgs1.reject() || m2 == msgs2.reject()) continue;
                        auto z = decode(problem, pair, mu1, mu2, m1, m2);
                        if (z) decode_lut[idx] = ws_z.encode(*z);
                    }
    }

    std::vector<std::vector<double>> build_encoder_rows(int side) {
        const auto& params = problem.params();
        const std::uint64_t mu_count = side == 1 ? params.n1 : params.n2;
        const std::uint64_t tx = side == 1 ? t1 : t2;
        const MessageSpace& msgs = side == 1 ? msgs1 : msgs2;
        if (mu_count > kEnumerationBudget / (tx * msgs.size()))
            throw BudgetError("encoder table exceeds the enumeration budget");
        EncoderScratch enc(problem, side);
        const prob::WordSpace& ws = side == 1 ? ws_x1 : ws_x2;
        std::vector<std::vector<double>> rows(mu_count);
        std::vector<std::uint32_t> xw;
        for (std::uint64_t mu = 0; mu < mu_count; ++mu) {
            const auto words = composite_codewords(pair, side, mu);
            rows[mu].assign(tx * msgs.size(), 0.0);
            for (std::uint64_t xi = 0; xi < tx; ++xi) {
                ws.decode(xi, xw);
                const auto row = enc.row(xw, words);
                std::copy(row.begin(), row.end(), rows[mu].begin() + xi * msgs.size());
            }
        }
        return rows;
    }

    prob::JointPmf run() const {
        const auto& params = problem.params();
        const double inv_mu = 1.0 / static_cast<double>(params.n1 * params.n2);
        std::vector<double> out(t1 * t2 * ty, 0.0);
        std::vector<std::uint32_t> x1w, x2w;
        const std::size_t m1s = msgs1.size(), m2s = msgs2.size();
        for (std::uint64_t i1 = 0; i1 < t1; ++i1) {
            ws_x1.decode(i1, x1w);
            for (std::uint64_t i2 = 0; i2 < t2; ++i2) {
                ws_x2.decode(i2, x2w);
                double px = 1.0;
                for (unsigned t = 0; t < n && px != 0.0; ++t) {
                    std::size_t idx[] = {x1w[t], x2w[t]};
                    px *= problem.p_x1x2().prob(idx);
                }
                if (px == 0.0) continue;
                double* cell = out.data() + (i1 * t2 + i2) * ty;
                for (std::uint64_t mu1 = 0; mu1 < params.n1; ++mu1) {
                    const double* r1 = enc1[mu1].data() + i1 * m1s;
                    for (std::uint64_t mu2 = 0; mu2 < params.n2; ++mu2) {
                        const double* r2 = enc2[mu2].data() + i2 * m2s;
                        const std::uint64_t lut_base = (mu1 * params.n2 + mu2) * m1s * m2s;
                        for (std::size_t m1 = 0; m1 < m1s; ++m1) {
                            if (r1[m1] == 0.0) continue;
                            const double c1 = px * inv_mu * r1[m1];
                            for (std::size_t m2 = 0; m2 < m2s; ++m2) {
                                if (r2[m2] == 0.0) continue;
                                const double coeff = c1 * r2[m2];
                                const double* yr =
                                    y_rows[decode_lut[lut_base + m1 * m2s + m2]].data();
                                for (std::uint64_t yi = 0; yi < ty; ++yi)
                                    cell[yi] += coeff * yr[yi];
                            }
                        }
                    }
                }
            }
        }

        std::vector<std::uint32_t> w;
        auto words_of = [&](const prob::WordSpace& ws, const prob::Alphabet& letters) {
            prob::Alphabet a;
            a.reserve(ws.size());
            for (std::uint64_t i = 0; i < ws.size(); ++i) {
                ws.decode(i, w);
                a.push_back(prob::word_name(letters, w));
            }
            return a;
        };
        std::vector<prob::Alphabet> alphas;
        alphas.push_back(words_of(ws_x1, problem.target().alphabets()[0]));
        alphas.push_back(words_of(ws_x2, problem.target().alphabets()[1]));
        alphas.push_back(words_of(ws_y, problem.target().alphabets()[2]));
        return prob::JointPmf(std::move(alphas), std::move(out));
    }
};

} // namespace

prob::JointPmf induced_joint_exact(const SynthesisProblem& problem,
                                   const ucc::UccCodebookPair& pair) {
    return ExactEngine(problem, pair).run();
}

double synthesis_tv(const SynthesisProblem& problem, const ucc::UccCodebookPair& pair) {
    const prob::JointPmf induced = induced_joint_exact(problem, pair);
    const prob::JointPmf target_n = prob::iid_extend(problem.target(), problem.params().n);
    return prob::total_variation(std::span<const double>(target_n.probs()),
                                 std::span<const double>(induced.probs()));
}

namespace {

// Per-codebook sampler with lazy encoder-row and decode caches, shared by
// simulate_samples and the Monte Carlo diagnostics.
struct ProtocolSampler {
    const SynthesisProblem& problem;
    const ucc::UccCodebookPair& pair;
    prob::WordSpace ws_x1, ws_x2;
    std::vector<double> cum_x12;
    std::vector<std::vector<double>> cum_y; // per z letter
    std::vector<double> cum_y_marg;
    EncoderScratch enc1, enc2;
    std::vector<std::vector<std::vector<std::uint32_t>>> words1, words2; // per mu
    std::unordered_map<std::uint64_t, std::vector<double>> row_cache1, row_cache2;
    std::unordered_map<std::uint64_t, std::optional<std::vector<std::uint32_t>>> decode_cache;
    std::unordered_map<std::uint64_t, bool> ambiguity_cache;

    ProtocolSampler(const SynthesisProblem& prob_, const ucc::UccCodebookPair& pair_)
        : problem(prob_), pair(pair_),
          ws_x1{prob_.x1_letters(), prob_.params().n},
          ws_x2{prob_.x2_letters(), prob_.params().n},
          enc1(prob_, 1), enc2(prob_, 2) {
        const auto& p12 = problem.p_x1x2();
        cum_x12.resize(p12.table_size());
        double acc = 0.0;
        for (std::size_t i = 0; i < p12.table_size(); ++i) {
            acc += p12.probs()[i];
            cum_x12[i] = acc;
        }
        cum_x12.back() = 1.0;
        cum_y.resize(problem.params().p);
        for (std::uint32_t z = 0; z < problem.params().p; ++z) {
            const auto& row = problem.chan_y().row(z);
            cum_y[z].resize(row.size());
            double a = 0.0;
            for (std::size_t i = 0; i < row.size(); ++i) {
                a += row[i];
                cum_y[z][i] = a;
            }
            cum_y[z].back() = 1.0;
        }
        cum_y_marg = problem.p_y().cumulative();
        const auto& params = problem.params();
        words1.resize(params.n1);
        for (std::uint64_t mu = 0; mu < params.n1; ++mu)
            words1[mu] = composite_codewords(pair, 1, mu);
        words2.resize(params.n2);
        for (std::uint64_t mu = 0; mu < params.n2; ++mu)
            words2[mu] = composite_codewords(pair, 2, mu);
    }

    const std::vector<double>& encoder_cum(int side, std::uint64_t mu, std::uint64_t x_index,
                                           std::span<const std::uint32_t> x_word) {
        auto& cache = side == 1 ? row_cache1 : row_cache2;
        const std::uint64_t tx = side == 1 ? ws_x1.size() : ws_x2.size();
        const std::uint64_t key = mu * tx + x_index;
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const EncoderScratch& enc = side == 1 ? enc1 : enc2;
        auto row = enc.row(x_word, (side == 1 ? words1 : words2)[mu]);
        double acc = 0.0;
        for (auto& v : row) {
            acc += v;
            v = acc;
        }
        row.back() = 1.0;
        return cache.emplace(key, std::move(row)).first->second;
    }

    std::uint64_t message_key(std::uint64_t mu1, std::uint64_t mu2,
                              std::uint64_t m1, std::uint64_t m2) const {
        const auto& params = problem.params();
        const std::uint64_t b1 = params.bin_count(1) + 1, b2 = params.bin_count(2) + 1;
        return ((mu1 * params.n2 + mu2) * b1 + m1) * b2 + m2;
    }

    const std::optional<std::vector<std::uint32_t>>& decoded(std::uint64_t mu1, std::uint64_t mu2,
                                                             std::uint64_t m1, std::uint64_t m2) {
        const std::uint64_t key = message_key(mu1, mu2, m1, m2);
        auto it = decode_cache.find(key);
        if (it != decode_cache.end()) return it->second;
        return decode_cache.emplace(key, decode(problem, pair, mu1, mu2, m1, m2)).first->second;
    }

    bool ambiguous(std::uint64_t mu1, std::uint64_t mu2, std::uint64_t m1, std::uint64_t m2) {
        const std::uint64_t key = message_key(mu1, mu2, m1, m2);
        auto it = ambiguity_cache.find(key);
        if (it != ambiguity_cache.end()) return it->second;
        const bool bad = decoder_ambiguity_set(problem, pair, mu1, mu2, m1, m2).size() != 1;
        return ambiguity_cache.emplace(key, bad).first->second;
    }

    struct Draw {
        std::vector<std::uint32_t> x1, x2;
        std::uint64_t mu1, mu2, m1, m2;
        bool rejected;
    };

    Draw draw_messages(DetRng& rng) {
        const auto& params = problem.params();
        Draw d;
        d.mu1 = rng.uniform_residue(static_cast<std::uint32_t>(params.n1));
        d.mu2 = rng.uniform_residue(static_cast<std::uint32_t>(params.n2));
        const unsigned n = params.n;
        d.x1.resize(n);
        d.x2.resize(n);
        const std::size_t nx2 = problem.x2_letters();
        for (unsigned t = 0; t < n; ++t) {
            const std::size_t cell = rng.sample_cdf(cum_x12);
            d.x1[t] = static_cast<std::uint32_t>(cell / nx2);
            d.x2[t] = static_cast<std::uint32_t>(cell % nx2);
        }
        const std::uint64_t i1 = ws_x1.encode(d.x1), i2 = ws_x2.encode(d.x2);
        d.m1 = rng.sample_cdf(encoder_cum(1, d.mu1, i1, d.x1));
        d.m2 = rng.sample_cdf(encoder_cum(2, d.mu2, i2, d.x2));
        d.rejected = d.m1 == params.bin_count(1) || d.m2 == params.bin_count(2);
        return d;
    }

    ProtocolSample finish_sample(DetRng& rng, Draw& d) {
        ProtocolSample s;
        s.x1 = std::move(d.x1);
        s.x2 = std::move(d.x2);
        const unsigned n = problem.params().n;
        s.y.resize(n);
        const std::optional<std::vector<std::uint32_t>>* z = nullptr;
        if (!d.rejected) z = &decoded(d.mu1, d.mu2, d.m1, d.m2);
        if (z != nullptr && z->has_value()) {
            const auto& zw = **z;
            for (unsigned t = 0; t < n; ++t)
                s.y[t] = static_cast<std::uint32_t>(rng.sample_cdf(cum_y[zw[t]]));
        } else {
            for (unsigned t = 0; t < n; ++t)
                s.y[t] = static_cast<std::uint32_t>(rng.sample_cdf(cum_y_marg));
        }
        return s;
    }
};

bool same_params(const ucc::UccParams& a, const ucc::UccParams& b) {
    return a.n == b.n && a.p == b.p && a.k == b.k && a.l1 == b.l1 && a.l2 == b.l2 &&
           a.n1 == b.n1 && a.n2 == b.n2;
}

SynthesisProblem with_params(const SynthesisProblem& problem, const ucc::UccParams& params) {
    if (same_params(params, problem.params())) return problem;
    return SynthesisProblem(problem.target(), problem.chan_w(1), problem.chan_w(2),
                            problem.chan_y(), problem.delta(), problem.eta(), params);
}

} // namespace

std::vector<ProtocolSample> simulate_samples(const SynthesisProblem& problem,
                                             const ucc::UccCodebookPair& pair,
                                             std::uint64_t seed, std::size_t count) {
    ProtocolSampler sampler(problem, pair);
    DetRng rng(seed);
    std::vector<ProtocolSample> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        auto d = sampler.draw_messages(rng);
        out.push_back(sampler.finish_sample(rng, d));
    }
    return out;
}

double overflow_probability(const SynthesisProblem& problem, const ucc::UccParams& params,
                            const std::vector<std::uint64_t>& seeds, int side,
                            unsigned jobs) {
    if (seeds.empty()) throw std::invalid_argument("overflow_probability needs seeds");
    const SynthesisProblem local = with_params(problem, params);

    const prob::WordSpace ws{side == 1 ? local.x1_letters() : local.x2_letters(), params.n};
    const std::uint64_t tx = ws.size();
    const prob::Pmf& px = side == 1 ? local.p_x1() : local.p_x2();

    std::vector<double> per_seed(seeds.size(), 0.0);
    parallel_for(jobs, seeds.size(), [&](std::size_t si) {
        const auto pair = ucc::sample_codebooks(seeds[si], params);
        EncoderScratch enc(local, side);
        const std::uint64_t mu_count = side == 1 ? params.n1 : params.n2;
        double total = 0.0;
        std::vector<std::uint32_t> xw;
        for (std::uint64_t mu = 0; mu < mu_count; ++mu) {
            const auto words = composite_codewords(pair, side, mu);
            for (std::uint64_t xi = 0; xi < tx; ++xi) {
                ws.decode(xi, xw);
                double pxw = 1.0;
                for (auto c : xw) pxw *= px.prob(c);
                if (pxw == 0.0) continue;
                if (enc.mass(xw, words) > 1.0) total += pxw;
            }
        }
        per_seed[si] = total / static_cast<double>(mu_count);
    });
    double mean = 0.0;
    for (double v : per_seed) mean += v;
    return mean / static_cast<double>(seeds.size());
}

double ambiguity_probability(const SynthesisProblem& problem, const ucc::UccParams& params,
                             const std::vector<std::uint64_t>& seeds,
                             std::size_t executions_per_seed, unsigned jobs) {
    if (seeds.empty()) throw std::invalid_argument("ambiguity_probability needs seeds");
    const SynthesisProblem local = with_params(problem, params);

    std::vector<std::uint64_t> bad(seeds.size(), 0), qualifying(seeds.size(), 0);
    parallel_for(jobs, seeds.size(), [&](std::size_t si) {
        const auto pair = ucc::sample_codebooks(seeds[si], params);
        ProtocolSampler sampler(local, pair);
        DetRng rng(derive_seed(seeds[si], 0x414D4249ull));
        for (std::size_t e = 0; e < executions_per_seed; ++e) {
            auto d = sampler.draw_messages(rng);
            if (d.rejected) continue;
            ++qualifying[si];
            if (sampler.ambiguous(d.mu1, d.mu2, d.m1, d.m2)) ++bad[si];
        }
    });
    std::uint64_t bad_total = 0, qual_total = 0;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        bad_total += bad[i];
        qual_total += qualifying[i];
    }
    if (qual_total == 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(bad_total) / static_cast<double>(qual_total);
}

} // namespace ucs::synth
