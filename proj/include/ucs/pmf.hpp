#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ucs/common.hpp"

namespace ucs::prob {

using Alphabet = std::vector<std::string>;

// Normalization tolerance accepted at ingestion; tables are renormalized
// exactly after validation so downstream sums are clean.
inline constexpr double kNormTolerance = 1e-9;

class Pmf {
public:
    Pmf(Alphabet symbols, std::vector<double> probs);

    static Pmf uniform(Alphabet symbols);
    static Pmf bernoulli(double p_one); // over {"0","1"}

    std::size_t size() const { return probs_.size(); }
    const Alphabet& symbols() const { return symbols_; }
    double prob(std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }

    std::vector<double> cumulative() const;

private:
    Alphabet symbols_;
    std::vector<double> probs_;
};

// Finite joint table. Row-major layout, last dimension fastest.
class JointPmf {
public:
    JointPmf(std::vector<Alphabet> alphabets, std::vector<double> probs);

    std::size_t dims() const { return alphabets_.size(); }
    const std::vector<Alphabet>& alphabets() const { return alphabets_; }
    std::size_t dim_size(std::size_t d) const { return alphabets_[d].size(); }
    std::size_t table_size() const { return probs_.size(); }
    const std::vector<double>& probs() const { return probs_; }

    std::size_t flat_index(std::span<const std::size_t> idx) const;
    double prob(std::span<const std::size_t> idx) const { return probs_[flat_index(idx)]; }
    void decode_index(std::size_t flat, std::vector<std::size_t>& idx) const;

    // Marginal over the given dims (ascending order required).
    JointPmf marginal(std::span<const std::size_t> keep) const;
    Pmf marginal_pmf(std::size_t dim) const;

    // Appends a new last dimension holding (v[d1] + v[d2]) mod p.
    // Requires both alphabets to be the residues "0".."p-1".
    JointPmf with_mod_sum(std::size_t d1, std::size_t d2, std::uint32_t p) const;

    double entropy_of(std::span<const std::size_t> dims) const;

private:
    std::vector<Alphabet> alphabets_;
    std::vector<std::size_t> strides_;
    std::vector<double> probs_;
};

// Conditional table: one normalized output row per input symbol.
class CondPmf {
public:
    CondPmf(Alphabet input, Alphabet output, std::vector<std::vector<double>> rows);

    static CondPmf bsc(double flip);      // binary symmetric channel
    static CondPmf identity(Alphabet symbols);

    const Alphabet& input() const { return input_; }
    const Alphabet& output() const { return output_; }
    std::size_t input_size() const { return input_.size(); }
    std::size_t output_size() const { return output_.size(); }
    double prob(std::size_t in, std::size_t out) const { return rows_[in][out]; }
    const std::vector<double>& row(std::size_t in) const { return rows_[in]; }

private:
    Alphabet input_;
    Alphabet output_;
    std::vector<std::vector<double>> rows_;
};

double entropy(const Pmf& p);
double entropy(const JointPmf& p);
double binary_entropy(double t);

// I(A;B|C) in bits over disjoint dimension sets; C may be empty.
double mutual_information(const JointPmf& joint,
                          std::span<const std::size_t> part_a,
                          std::span<const std::size_t> part_b,
                          std::span<const std::size_t> given = {});

// H(A|B) in bits.
double conditional_entropy(const JointPmf& joint,
                           std::span<const std::size_t> part_a,
                           std::span<const std::size_t> given);

double total_variation(const Pmf& p, const Pmf& q);
double total_variation(std::span<const double> p, std::span<const double> q);

// Exact IID n-fold extension over word alphabets.
Pmf product_extend(const Pmf& p, unsigned n);
CondPmf product_extend(const CondPmf& p, unsigned n);
JointPmf iid_extend(const JointPmf& p, unsigned n); // per-component word spaces

// Indexing helper for words over an alphabet of size q.
struct WordSpace {
    std::size_t q = 2;
    unsigned n = 1;

    std::uint64_t size() const { return checked_pow(q, n); }
    void decode(std::uint64_t idx, std::vector<std::uint32_t>& word) const;
    std::uint64_t encode(std::span<const std::uint32_t> word) const;
};

std::string word_name(const Alphabet& letters, std::span<const std::uint32_t> word);
Alphabet residue_alphabet(std::uint32_t p);
// Parses alphabets of the form "0".."p-1"; throws if not residues.
void require_residue_alphabet(const Alphabet& a, std::uint32_t p, const std::string& what);

void to_json(nlohmann::json& j, const Pmf& p);
void to_json(nlohmann::json& j, const JointPmf& p);
void to_json(nlohmann::json& j, const CondPmf& p);
Pmf pmf_from_json(const nlohmann::json& j);
JointPmf joint_from_json(const nlohmann::json& j);
CondPmf cond_from_json(const nlohmann::json& j);

} // namespace ucs::prob
