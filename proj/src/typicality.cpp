#include "ucs/typicality.hpp"

#include <cmath>
#include <stdexcept>

namespace ucs::prob {

namespace {

// Slack absorbs float noise at interval endpoints so membership is stable.
constexpr double kEdgeTol = 1e-12;

bool counts_typical(std::span<const std::size_t> counts, std::span<const double> probs,
                    std::size_t n, double delta) {
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double freq = static_cast<double>(counts[i]) / static_cast<double>(n);
        if (std::abs(freq - probs[i]) > delta * probs[i] + kEdgeTol) return false;
    }
    return true;
}

} // namespace

bool typical(std::span<const std::uint32_t> word, std::span<const double> probs, double delta) {
    if (delta <= 0.0) throw std::invalid_argument("typicality delta must be positive");
    if (word.empty()) throw std::invalid_argument("empty word");
    std::vector<std::size_t> counts(probs.size(), 0);
    for (auto c : word) {
        if (c >= probs.size()) throw std::out_of_range("word letter outside alphabet");
        ++counts[c];
    }
    return counts_typical(counts, probs, word.size(), delta);
}

bool typical(std::span<const std::uint32_t> word, const Pmf& p, double delta) {
    return typical(word, std::span<const double>(p.probs()), delta);
}

bool cond_typical(std::span<const std::uint32_t> x_word,
                  std::span<const std::uint32_t> w_word,
                  const JointPmf& p_xw, double delta) {
    if (delta <= 0.0) throw std::invalid_argument("typicality delta must be positive");
    if (p_xw.dims() != 2) throw std::invalid_argument("cond_typical needs a two-variable joint");
    if (x_word.size() != w_word.size() || x_word.empty())
        throw std::invalid_argument("word length mismatch");
    const std::size_t nx = p_xw.dim_size(0), nw = p_xw.dim_size(1);
    std::vector<std::size_t> counts(nx * nw, 0);
    for (std::size_t t = 0; t < x_word.size(); ++t) {
        if (x_word[t] >= nx || w_word[t] >= nw) throw std::out_of_range("letter outside alphabet");
        ++counts[x_word[t] * nw + w_word[t]];
    }
    return counts_typical(counts, p_xw.probs(), x_word.size(), delta);
}

TypicalSet::TypicalSet(Pmf base, unsigned n, double delta)
    : base_(std::move(base)), n_(n), delta_(delta) {
    if (n == 0) throw std::invalid_argument("blocklength must be >= 1");
    if (delta <= 0.0) throw std::invalid_argument("typicality delta must be positive");
}

TypicalSet::TypicalSet(JointPmf p_xw, std::vector<std::uint32_t> x_word, double delta)
    : p_xw_(std::move(p_xw)), x_word_(std::move(x_word)),
      n_(static_cast<unsigned>(x_word_.size())), delta_(delta) {
    if (p_xw_->dims() != 2) throw std::invalid_argument("conditional set needs a two-variable joint");
    if (x_word_.empty()) throw std::invalid_argument("empty conditioning word");
    if (delta <= 0.0) throw std::invalid_argument("typicality delta must be positive");
}

std::size_t TypicalSet::letter_count() const {
    return base_ ? base_->size() : p_xw_->dim_size(1);
}

bool TypicalSet::contains(std::span<const std::uint32_t> word) const {
    if (word.size() != n_) throw std::invalid_argument("word length mismatch");
    if (base_) return typical(word, *base_, delta_);
    return cond_typical(x_word_, word, *p_xw_, delta_);
}

std::vector<std::vector<std::uint32_t>> TypicalSet::enumerate() const {
    WordSpace ws{letter_count(), n_};
    const std::uint64_t total = ws.size();
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> w;
    for (std::uint64_t i = 0; i < total; ++i) {
        ws.decode(i, w);
        if (contains(w)) out.push_back(w);
    }
    return out;
}

double TypicalSet::mass() const {
    WordSpace ws{letter_count(), n_};
    const std::uint64_t total = ws.size();
    double m = 0.0;
    std::vector<std::uint32_t> w;
    if (base_) {
        for (std::uint64_t i = 0; i < total; ++i) {
            ws.decode(i, w);
            if (!contains(w)) continue;
            double v = 1.0;
            for (auto c : w) v *= base_->prob(c);
            m += v;
        }
        return m;
    }
    // conditional mass under p(w|x) letter products
    const std::size_t nw = p_xw_->dim_size(1);
    const std::size_t nx = p_xw_->dim_size(0);
    std::vector<double> px(nx, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t v = 0; v < nw; ++v) {
            std::size_t idx[] = {x, v};
            px[x] += p_xw_->prob(idx);
        }
    for (std::uint64_t i = 0; i < total; ++i) {
        ws.decode(i, w);
        if (!contains(w)) continue;
        double v = 1.0;
        for (std::size_t t = 0; t < n_ && v != 0.0; ++t) {
            std::size_t idx[] = {x_word_[t], w[t]};
            double denom = px[x_word_[t]];
            v *= denom > 0.0 ? p_xw_->prob(idx) / denom : 0.0;
        }
        m += v;
    }
    return m;
}

} // namespace ucs::prob
