#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ucs/field.hpp"

namespace ucs::ucc {

// Code parameters for the two-encoder shared-generator ensemble.
// Common randomness is held as explicit counts N1, N2 of shift tables;
// the corresponding rates are derived, not stored.
struct UccParams {
    unsigned n = 1;        // blocklength
    std::uint32_t p = 2;   // field size (prime)
    unsigned k = 0;        // coarse code dimension
    unsigned l1 = 0;       // bin-index dimension, encoder 1
    unsigned l2 = 0;       // bin-index dimension, encoder 2
    std::uint64_t n1 = 1;  // number of mu_1 values
    std::uint64_t n2 = 1;  // number of mu_2 values

    void validate() const;
    std::uint64_t coarse_count() const;              // p^k
    std::uint64_t bin_count(int side) const;         // p^{l_side}
    std::uint64_t composite_count(int side) const;   // p^{k+l_side}
};

struct Rates {
    double s1, s2; // fine-code rates (k+l_i)/n * log2 p
    double r1, r2; // bin-index rates l_i/n * log2 p
    double c1, c2; // common randomness rates log2(N_i)/n
};

Rates rates(const UccParams& params);

// One shared generator G plus independent shift tables per common-randomness
// index. h1[mu][m] is the shift of bin m under index mu.
class UccCodebookPair {
public:
    UccCodebookPair(UccParams params, ff::FieldMatrix g,
                    std::vector<std::vector<ff::FieldVector>> h1,
                    std::vector<std::vector<ff::FieldVector>> h2);

    const UccParams& params() const { return params_; }
    const ff::FieldMatrix& generator() const { return g_; }
    const ff::FieldVector& shift(int side, std::uint64_t mu, std::uint64_t m) const;

    // a G + h_side^{(mu)}(m)
    ff::FieldVector codeword(int side, const ff::FieldVector& a,
                             const ff::FieldVector& m, std::uint64_t mu) const;
    ff::FieldVector codeword(int side, std::uint64_t a_index,
                             std::uint64_t m_index, std::uint64_t mu) const;

    // The full coset C(G, h_side^{(mu)}(m)): p^k words with multiplicity.
    std::vector<ff::FieldVector> bin_of(int side, std::uint64_t m_index, std::uint64_t mu) const;

private:
    UccParams params_;
    ff::FieldMatrix g_;
    std::vector<std::vector<ff::FieldVector>> h1_, h2_;
};

// Entries of G and every shift drawn independently and uniformly over F_p.
// Deterministic in the seed: G row-major first, then h1 (mu-major, bin-major,
// letter-major), then h2.
UccCodebookPair sample_codebooks(std::uint64_t seed, const UccParams& params);

void to_json(nlohmann::json& j, const UccParams& p);
void from_json(const nlohmann::json& j, UccParams& p);
nlohmann::json codebooks_to_json(const UccCodebookPair& pair);
UccCodebookPair codebooks_from_json(const nlohmann::json& j);

} // namespace ucs::ucc
