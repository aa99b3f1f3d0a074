#include "ucs/ucc.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ucs/common.hpp"
#include "ucs/pmf.hpp"

namespace ucs::ucc {

void UccParams::validate() const {
    if (n == 0) throw std::invalid_argument("blocklength must be >= 1");
    if (!ff::is_prime(p)) throw std::invalid_argument("field size must be prime");
    if (n1 == 0 || n2 == 0) throw std::invalid_argument("common randomness counts must be >= 1");
    if (n1 > (1ull << 31) || n2 > (1ull << 31))
        throw std::invalid_argument("common randomness counts exceed 2^31");
    checked_pow(p, k + std::max(l1, l2)); // enumeration guard
}

std::uint64_t UccParams::coarse_count() const { return checked_pow(p, k); }

std::uint64_t UccParams::bin_count(int side) const {
    return checked_pow(p, side == 1 ? l1 : l2);
}

std::uint64_t UccParams::composite_count(int side) const {
    return checked_pow(p, k + (side == 1 ? l1 : l2));
}

Rates rates(const UccParams& params) {
    params.validate();
    const double logp = std::log2(static_cast<double>(params.p));
    const double n = static_cast<double>(params.n);
    return Rates{
        (params.k + params.l1) / n * logp,
        (params.k + params.l2) / n * logp,
        params.l1 / n * logp,
        params.l2 / n * logp,
        std::log2(static_cast<double>(params.n1)) / n,
        std::log2(static_cast<double>(params.n2)) / n,
    };
}

UccCodebookPair::UccCodebookPair(UccParams params, ff::FieldMatrix g,
                                 std::vector<std::vector<ff::FieldVector>> h1,
                                 std::vector<std::vector<ff::FieldVector>> h2)
    : params_(params), g_(std::move(g)), h1_(std::move(h1)), h2_(std::move(h2)) {
    params_.validate();
    if (g_.rows() != params_.k || g_.cols() != params_.n || g_.modulus() != params_.p)
        throw std::invalid_argument("generator shape does not match params");
    auto check = [&](const std::vector<std::vector<ff::FieldVector>>& h,
                     std::uint64_t mu_count, std::uint64_t bins) {
        if (h.size() != mu_count) throw std::invalid_argument("shift table mu count mismatch");
        for (const auto& table : h) {
            if (table.size() != bins) throw std::invalid_argument("shift table bin count mismatch");
            for (const auto& v : table)
                if (v.size() != params_.n || v.modulus() != params_.p)
                    throw std::invalid_argument("shift vector shape mismatch");
        }
    };
    check(h1_, params_.n1, params_.bin_count(1));
    check(h2_, params_.n2, params_.bin_count(2));
}

const ff::FieldVector& UccCodebookPair::shift(int side, std::uint64_t mu, std::uint64_t m) const {
    const auto& h = side == 1 ? h1_ : h2_;
    if (mu >= h.size()) throw std::out_of_range("common randomness index out of range");
    if (m >= h[mu].size()) throw std::out_of_range("bin index out of range");
    return h[mu][m];
}

ff::FieldVector UccCodebookPair::codeword(int side, const ff::FieldVector& a,
                                          const ff::FieldVector& m, std::uint64_t mu) const {
    if (a.size() != params_.k) throw std::out_of_range("coarse index length mismatch");
    const unsigned l = side == 1 ? params_.l1 : params_.l2;
    if (m.size() != l) throw std::out_of_range("bin index length mismatch");
    prob::WordSpace ws{params_.p, l};
    const std::uint64_t m_index = l == 0 ? 0 : ws.encode(m.entries());
    return codeword(side, a.size() == 0 ? 0 : prob::WordSpace{params_.p, params_.k}.encode(a.entries()),
                    m_index, mu);
}

ff::FieldVector UccCodebookPair::codeword(int side, std::uint64_t a_index,
                                          std::uint64_t m_index, std::uint64_t mu) const {
    if (a_index >= params_.coarse_count()) throw std::out_of_range("coarse index out of range");
    const ff::FieldVector& b = shift(side, mu, m_index);
    if (params_.k == 0) return b;
    std::vector<std::uint32_t> digits;
    ff::index_vector(a_index, params_.p, params_.k, digits);
    return ff::mat_vec_mul(ff::FieldVector(digits, params_.p), g_) + b;
}

std::vector<ff::FieldVector> UccCodebookPair::bin_of(int side, std::uint64_t m_index,
                                                     std::uint64_t mu) const {
    return ff::coset_enumerate(g_, shift(side, mu, m_index));
}

UccCodebookPair sample_codebooks(std::uint64_t seed, const UccParams& params) {
    params.validate();
    DetRng rng(seed);

    std::vector<std::uint32_t> g_entries(static_cast<std::size_t>(params.k) * params.n);
    for (auto& e : g_entries) e = rng.uniform_residue(params.p);
    ff::FieldMatrix g(params.k, params.n, std::move(g_entries), params.p);

    auto draw_tables = [&](std::uint64_t mu_count, std::uint64_t bins) {
        std::vector<std::vector<ff::FieldVector>> h;
        h.reserve(mu_count);
        for (std::uint64_t mu = 0; mu < mu_count; ++mu) {
            std::vector<ff::FieldVector> table;
            table.reserve(bins);
            for (std::uint64_t m = 0; m < bins; ++m) {
                std::vector<std::uint32_t> v(params.n);
                for (auto& e : v) e = rng.uniform_residue(params.p);
                table.emplace_back(std::move(v), params.p);
            }
            h.push_back(std::move(table));
        }
        return h;
    };

    auto h1 = draw_tables(params.n1, params.bin_count(1));
    auto h2 = draw_tables(params.n2, params.bin_count(2));
    return UccCodebookPair(params, std::move(g), std::move(h1), std::move(h2));
}

void to_json(nlohmann::json& j, const UccParams& p) {
    j = nlohmann::json{{"n", p.n}, {"p", p.p}, {"k", p.k},
                       {"l1", p.l1}, {"l2", p.l2}, {"N1", p.n1}, {"N2", p.n2}};
}

void from_json(const nlohmann::json& j, UccParams& p) {
    p.n = j.at("n").get<unsigned>();
    p.p = j.at("p").get<std::uint32_t>();
    p.k = j.at("k").get<unsigned>();
    p.l1 = j.at("l1").get<unsigned>();
    p.l2 = j.at("l2").get<unsigned>();
    p.n1 = j.at("N1").get<std::uint64_t>();
    p.n2 = j.at("N2").get<std::uint64_t>();
    p.validate();
}

nlohmann::json codebooks_to_json(const UccCodebookPair& pair) {
    const auto& params = pair.params();
    nlohmann::json jg = nlohmann::json::array();
    for (std::size_t r = 0; r < params.k; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < params.n; ++c) row.push_back(pair.generator().at(r, c));
        jg.push_back(row);
    }
    auto dump_h = [&](int side) {
        nlohmann::json jh = nlohmann::json::array();
        const std::uint64_t mu_count = side == 1 ? params.n1 : params.n2;
        for (std::uint64_t mu = 0; mu < mu_count; ++mu) {
            nlohmann::json tbl = nlohmann::json::array();
            for (std::uint64_t m = 0; m < params.bin_count(side); ++m)
                tbl.push_back(pair.shift(side, mu, m).entries());
            jh.push_back(tbl);
        }
        return jh;
    };
    return nlohmann::json{{"params", params}, {"G", jg}, {"h1", dump_h(1)}, {"h2", dump_h(2)}};
}

UccCodebookPair codebooks_from_json(const nlohmann::json& j) {
    UccParams params = j.at("params").get<UccParams>();
    std::vector<std::uint32_t> g_entries;
    for (const auto& row : j.at("G"))
        for (const auto& v : row) g_entries.push_back(v.get<std::uint32_t>());
    ff::FieldMatrix g(params.k, params.n, std::move(g_entries), params.p);
    auto load_h = [&](const nlohmann::json& jh) {
        std::vector<std::vector<ff::FieldVector>> h;
        for (const auto& tbl : jh) {
            std::vector<ff::FieldVector> t;
            for (const auto& v : tbl)
                t.emplace_back(v.get<std::vector<std::uint32_t>>(), params.p);
            h.push_back(std::move(t));
        }
        return h;
    };
    return UccCodebookPair(params, std::move(g), load_h(j.at("h1")), load_h(j.at("h2")));
}

} // namespace ucs::ucc
