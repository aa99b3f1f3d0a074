#include "ucs/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ucs::prob {

namespace {

void validate_and_renormalize(std::vector<double>& probs, std::size_t expected) {
    if (probs.size() != expected)
        throw std::invalid_argument("probability table size " + std::to_string(probs.size()) +
                                    " does not match alphabet size " + std::to_string(expected));
    double sum = 0.0;
    for (double& v : probs) {
        if (v < -1e-12) throw std::invalid_argument("negative probability in table");
        if (v < 0) v = 0.0;
        sum += v;
    }
    if (std::abs(sum - 1.0) > kNormTolerance)
        throw std::invalid_argument("probabilities sum to " + std::to_string(sum) +
                                    ", outside tolerance of 1");
    for (double& v : probs) v /= sum;
}

double neg_plogp(double p) {
    return p > 0.0 ? -p * std::log2(p) : 0.0;
}

std::vector<std::size_t> union_sorted(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    std::vector<std::size_t> u(a.begin(), a.end());
    u.insert(u.end(), b.begin(), b.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

void require_disjoint(std::span<const std::size_t> a, std::span<const std::size_t> b,
                      const char* what) {
    for (auto x : a)
        for (auto y : b)
            if (x == y) throw std::invalid_argument(std::string("dimension sets overlap in ") + what);
}

} // namespace

Pmf::Pmf(Alphabet symbols, std::vector<double> probs)
    : symbols_(std::move(symbols)), probs_(std::move(probs)) {
    if (symbols_.empty()) throw std::invalid_argument("empty alphabet");
    validate_and_renormalize(probs_, symbols_.size());
}

Pmf Pmf::uniform(Alphabet symbols) {
    std::vector<double> p(symbols.size(), 1.0 / static_cast<double>(symbols.size()));
    return Pmf(std::move(symbols), std::move(p));
}

Pmf Pmf::bernoulli(double p_one) {
    if (p_one < 0.0 || p_one > 1.0) throw std::invalid_argument("bernoulli parameter out of [0,1]");
    return Pmf({"0", "1"}, {1.0 - p_one, p_one});
}

std::vector<double> Pmf::cumulative() const {
    std::vector<double> c(probs_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        acc += probs_[i];
        c[i] = acc;
    }
    c.back() = 1.0;
    return c;
}

JointPmf::JointPmf(std::vector<Alphabet> alphabets, std::vector<double> probs)
    : alphabets_(std::move(alphabets)), probs_(std::move(probs)) {
    if (alphabets_.empty()) throw std::invalid_argument("joint needs at least one dimension");
    std::size_t total = 1;
    for (const auto& a : alphabets_) {
        if (a.empty()) throw std::invalid_argument("empty alphabet in joint");
        if (total > kEnumerationBudget / a.size()) throw BudgetError("joint table too large");
        total *= a.size();
    }
    validate_and_renormalize(probs_, total);
    strides_.assign(alphabets_.size(), 1);
    for (std::size_t d = alphabets_.size(); d-- > 1;)
        strides_[d - 1] = strides_[d] * alphabets_[d].size();
}

std::size_t JointPmf::flat_index(std::span<const std::size_t> idx) const {
    if (idx.size() != dims()) throw std::invalid_argument("index arity mismatch");
    std::size_t f = 0;
    for (std::size_t d = 0; d < idx.size(); ++d) {
        if (idx[d] >= alphabets_[d].size()) throw std::out_of_range("joint index out of range");
        f += idx[d] * strides_[d];
    }
    return f;
}

void JointPmf::decode_index(std::size_t flat, std::vector<std::size_t>& idx) const {
    idx.assign(dims(), 0);
    for (std::size_t d = 0; d < dims(); ++d) {
        idx[d] = flat / strides_[d];
        flat %= strides_[d];
    }
}

JointPmf JointPmf::marginal(std::span<const std::size_t> keep) const {
    if (keep.empty()) throw std::invalid_argument("marginal needs at least one dimension");
    for (std::size_t i = 0; i + 1 < keep.size(); ++i)
        if (keep[i] >= keep[i + 1]) throw std::invalid_argument("marginal dims must be strictly ascending");
    if (keep.back() >= dims()) throw std::out_of_range("marginal dim out of range");

    std::vector<Alphabet> alpha;
    std::size_t out_size = 1;
    for (auto d : keep) {
        alpha.push_back(alphabets_[d]);
        out_size *= alphabets_[d].size();
    }
    std::vector<std::size_t> out_strides(keep.size(), 1);
    for (std::size_t d = keep.size(); d-- > 1;)
        out_strides[d - 1] = out_strides[d] * alpha[d].size();

    std::vector<double> out(out_size, 0.0);
    std::vector<std::size_t> idx;
    for (std::size_t f = 0; f < probs_.size(); ++f) {
        if (probs_[f] == 0.0) continue;
        decode_index(f, idx);
        std::size_t of = 0;
        for (std::size_t d = 0; d < keep.size(); ++d) of += idx[keep[d]] * out_strides[d];
        out[of] += probs_[f];
    }
    return JointPmf(std::move(alpha), std::move(out));
}

Pmf JointPmf::marginal_pmf(std::size_t dim) const {
    std::size_t keep[] = {dim};
    JointPmf m = marginal(keep);
    return Pmf(m.alphabets()[0], m.probs());
}

JointPmf JointPmf::with_mod_sum(std::size_t d1, std::size_t d2, std::uint32_t p) const {
    require_residue_alphabet(alphabets_[d1], p, "mod-sum operand");
    require_residue_alphabet(alphabets_[d2], p, "mod-sum operand");
    std::vector<Alphabet> alpha = alphabets_;
    alpha.push_back(residue_alphabet(p));
    std::vector<double> out(probs_.size() * p, 0.0);
    std::vector<std::size_t> idx;
    for (std::size_t f = 0; f < probs_.size(); ++f) {
        if (probs_[f] == 0.0) continue;
        decode_index(f, idx);
        std::size_t z = (idx[d1] + idx[d2]) % p;
        out[f * p + z] = probs_[f];
    }
    return JointPmf(std::move(alpha), std::move(out));
}

double JointPmf::entropy_of(std::span<const std::size_t> dims_in) const {
    std::vector<std::size_t> d(dims_in.begin(), dims_in.end());
    std::sort(d.begin(), d.end());
    if (d.size() == dims()) {
        double h = 0.0;
        for (double v : probs_) h += neg_plogp(v);
        return h;
    }
    return prob::entropy(marginal(d));
}

CondPmf::CondPmf(Alphabet input, Alphabet output, std::vector<std::vector<double>> rows)
    : input_(std::move(input)), output_(std::move(output)), rows_(std::move(rows)) {
    if (rows_.size() != input_.size())
        throw std::invalid_argument("conditional table row count does not match input alphabet");
    for (auto& r : rows_) validate_and_renormalize(r, output_.size());
}

CondPmf CondPmf::bsc(double flip) {
    if (flip < 0.0 || flip > 1.0) throw std::invalid_argument("bsc flip out of [0,1]");
    return CondPmf({"0", "1"}, {"0", "1"}, {{1.0 - flip, flip}, {flip, 1.0 - flip}});
}

CondPmf CondPmf::identity(Alphabet symbols) {
    std::vector<std::vector<double>> rows(symbols.size(), std::vector<double>(symbols.size(), 0.0));
    for (std::size_t i = 0; i < symbols.size(); ++i) rows[i][i] = 1.0;
    Alphabet out = symbols;
    return CondPmf(std::move(symbols), std::move(out), std::move(rows));
}

double entropy(const Pmf& p) {
    double h = 0.0;
    for (double v : p.probs()) h += neg_plogp(v);
    return h;
}

double entropy(const JointPmf& p) {
    double h = 0.0;
    for (double v : p.probs()) h += neg_plogp(v);
    return h;
}

double binary_entropy(double t) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("binary_entropy argument out of [0,1]");
    return neg_plogp(t) + neg_plogp(1.0 - t);
}

double mutual_information(const JointPmf& joint,
                          std::span<const std::size_t> part_a,
                          std::span<const std::size_t> part_b,
                          std::span<const std::size_t> given) {
    if (part_a.empty() || part_b.empty())
        throw std::invalid_argument("mutual_information parts must be nonempty");
    require_disjoint(part_a, part_b, "mutual_information");
    require_disjoint(part_a, given, "mutual_information");
    require_disjoint(part_b, given, "mutual_information");

    auto ac = union_sorted(part_a, given);
    auto bc = union_sorted(part_b, given);
    auto abc = union_sorted(ac, part_b);
    double h_ac = joint.entropy_of(ac);
    double h_bc = joint.entropy_of(bc);
    double h_abc = joint.entropy_of(abc);
    double h_c = given.empty() ? 0.0 : joint.entropy_of(given);
    return h_ac + h_bc - h_abc - h_c;
}

double conditional_entropy(const JointPmf& joint,
                           std::span<const std::size_t> part_a,
                           std::span<const std::size_t> given) {
    require_disjoint(part_a, given, "conditional_entropy");
    auto ab = union_sorted(part_a, given);
    double h_ab = joint.entropy_of(ab);
    double h_b = given.empty() ? 0.0 : joint.entropy_of(given);
    return h_ab - h_b;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("total_variation: table size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

double total_variation(const Pmf& p, const Pmf& q) {
    if (p.symbols() != q.symbols())
        throw std::invalid_argument("total_variation: alphabet mismatch");
    return total_variation(std::span<const double>(p.probs()), std::span<const double>(q.probs()));
}

void WordSpace::decode(std::uint64_t idx, std::vector<std::uint32_t>& word) const {
    word.assign(n, 0);
    for (std::size_t j = n; j-- > 0;) {
        word[j] = static_cast<std::uint32_t>(idx % q);
        idx /= q;
    }
}

std::uint64_t WordSpace::encode(std::span<const std::uint32_t> word) const {
    std::uint64_t f = 0;
    for (std::size_t j = 0; j < word.size(); ++j) f = f * q + word[j];
    return f;
}

std::string word_name(const Alphabet& letters, std::span<const std::uint32_t> word) {
    bool compact = true;
    for (const auto& s : letters)
        if (s.size() != 1) { compact = false; break; }
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!compact && i > 0) out += ',';
        out += letters[word[i]];
    }
    return out;
}

Alphabet residue_alphabet(std::uint32_t p) {
    Alphabet a;
    a.reserve(p);
    for (std::uint32_t i = 0; i < p; ++i) a.push_back(std::to_string(i));
    return a;
}

void require_residue_alphabet(const Alphabet& a, std::uint32_t p, const std::string& what) {
    if (a.size() != p)
        throw std::invalid_argument(what + ": alphabet size " + std::to_string(a.size()) +
                                    " does not match field size " + std::to_string(p));
    for (std::uint32_t i = 0; i < p; ++i)
        if (a[i] != std::to_string(i))
            throw std::invalid_argument(what + ": alphabet must be residues 0.." + std::to_string(p - 1));
}

Pmf product_extend(const Pmf& p, unsigned n) {
    if (n == 0) throw std::invalid_argument("product_extend: n must be >= 1");
    WordSpace ws{p.size(), n};
    const std::uint64_t total = ws.size();
    Alphabet alpha;
    alpha.reserve(total);
    std::vector<double> probs;
    probs.reserve(total);
    std::vector<std::uint32_t> w;
    for (std::uint64_t i = 0; i < total; ++i) {
        ws.decode(i, w);
        double v = 1.0;
        for (auto c : w) v *= p.prob(c);
        alpha.push_back(word_name(p.symbols(), w));
        probs.push_back(v);
    }
    return Pmf(std::move(alpha), std::move(probs));
}

CondPmf product_extend(const CondPmf& p, unsigned n) {
    if (n == 0) throw std::invalid_argument("product_extend: n must be >= 1");
    WordSpace in{p.input_size(), n}, out{p.output_size(), n};
    const std::uint64_t in_total = in.size();
    const std::uint64_t out_total = out.size();
    if (in_total > kEnumerationBudget / out_total)
        throw BudgetError("conditional product extension too large");

    Alphabet in_alpha, out_alpha;
    std::vector<std::uint32_t> w;
    for (std::uint64_t i = 0; i < in_total; ++i) {
        in.decode(i, w);
        in_alpha.push_back(word_name(p.input(), w));
    }
    for (std::uint64_t i = 0; i < out_total; ++i) {
        out.decode(i, w);
        out_alpha.push_back(word_name(p.output(), w));
    }

    std::vector<std::vector<double>> rows(in_total, std::vector<double>(out_total, 0.0));
    std::vector<std::uint32_t> wi, wo;
    for (std::uint64_t i = 0; i < in_total; ++i) {
        in.decode(i, wi);
        for (std::uint64_t o = 0; o < out_total; ++o) {
            out.decode(o, wo);
            double v = 1.0;
            for (unsigned t = 0; t < n; ++t) v *= p.prob(wi[t], wo[t]);
            rows[i][o] = v;
        }
    }
    return CondPmf(std::move(in_alpha), std::move(out_alpha), std::move(rows));
}

JointPmf iid_extend(const JointPmf& p, unsigned n) {
    if (n == 0) throw std::invalid_argument("iid_extend: n must be >= 1");
    const std::size_t d = p.dims();
    std::vector<WordSpace> spaces;
    std::vector<Alphabet> alphas;
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < d; ++k) {
        spaces.push_back({p.dim_size(k), n});
        const std::uint64_t sz = spaces.back().size();
        if (total > kEnumerationBudget / sz) throw BudgetError("iid extension too large");
        total *= sz;
        Alphabet a;
        std::vector<std::uint32_t> w;
        for (std::uint64_t i = 0; i < sz; ++i) {
            spaces.back().decode(i, w);
            a.push_back(word_name(p.alphabets()[k], w));
        }
        alphas.push_back(std::move(a));
    }

    std::vector<double> out(total, 0.0);
    std::vector<std::vector<std::uint32_t>> words(d);
    std::vector<std::uint64_t> widx(d, 0);
    std::vector<std::size_t> letter(d, 0);
    for (std::uint64_t f = 0; f < total; ++f) {
        std::uint64_t rem = f;
        for (std::size_t k = d; k-- > 0;) {
            widx[k] = rem % spaces[k].size();
            rem /= spaces[k].size();
        }
        for (std::size_t k = 0; k < d; ++k) spaces[k].decode(widx[k], words[k]);
        double v = 1.0;
        for (unsigned t = 0; t < n && v != 0.0; ++t) {
            for (std::size_t k = 0; k < d; ++k) letter[k] = words[k][t];
            v *= p.prob(letter);
        }
        out[f] = v;
    }
    return JointPmf(std::move(alphas), std::move(out));
}

void to_json(nlohmann::json& j, const Pmf& p) {
    j = nlohmann::json{{"alphabets", std::vector<Alphabet>{p.symbols()}}, {"probs", p.probs()}};
}

void to_json(nlohmann::json& j, const JointPmf& p) {
    j = nlohmann::json{{"alphabets", p.alphabets()}, {"probs", p.probs()}};
}

void to_json(nlohmann::json& j, const CondPmf& p) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < p.input_size(); ++i) rows.push_back(p.row(i));
    j = nlohmann::json{{"input", p.input()}, {"output", p.output()}, {"rows", rows}};
}

Pmf pmf_from_json(const nlohmann::json& j) {
    auto alphas = j.at("alphabets").get<std::vector<Alphabet>>();
    if (alphas.size() != 1)
        throw std::invalid_argument("pmf json must carry exactly one alphabet");
    return Pmf(alphas[0], j.at("probs").get<std::vector<double>>());
}

JointPmf joint_from_json(const nlohmann::json& j) {
    return JointPmf(j.at("alphabets").get<std::vector<Alphabet>>(),
                    j.at("probs").get<std::vector<double>>());
}

CondPmf cond_from_json(const nlohmann::json& j) {
    return CondPmf(j.at("input").get<Alphabet>(), j.at("output").get<Alphabet>(),
                   j.at("rows").get<std::vector<std::vector<double>>>());
}

} // namespace ucs::prob
