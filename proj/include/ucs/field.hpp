#pragma once

#include <cstdint>
#include <vector>

#include "ucs/common.hpp"

namespace ucs::ff {

bool is_prime(std::uint32_t p);

// Residue arithmetic mod a prime p. Elements are immutable values;
// mixing moduli throws.
class FieldElement {
public:
    FieldElement(std::uint32_t value, std::uint32_t p);

    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return p_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement inverse() const; // throws on zero

    bool operator==(const FieldElement& o) const = default;

private:
    std::uint32_t v_;
    std::uint32_t p_;
};

// Row vector over F_p. Entries stored as raw residues with one shared modulus.
class FieldVector {
public:
    FieldVector(std::vector<std::uint32_t> entries, std::uint32_t p);
    static FieldVector zero(std::size_t n, std::uint32_t p);

    std::size_t size() const { return v_.size(); }
    std::uint32_t modulus() const { return p_; }
    std::uint32_t operator[](std::size_t i) const { return v_[i]; }
    FieldElement at(std::size_t i) const { return FieldElement(v_[i], p_); }
    const std::vector<std::uint32_t>& entries() const { return v_; }

    FieldVector operator+(const FieldVector& o) const;
    FieldVector operator-(const FieldVector& o) const;

    bool operator==(const FieldVector& o) const = default;
    bool operator<(const FieldVector& o) const; // lexicographic

private:
    std::vector<std::uint32_t> v_;
    std::uint32_t p_;
};

class FieldMatrix {
public:
    FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);
    FieldMatrix(std::size_t rows, std::size_t cols,
                std::vector<std::uint32_t> entries, std::uint32_t p);
    static FieldMatrix identity(std::size_t n, std::uint32_t p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t modulus() const { return p_; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::uint32_t v);
    FieldVector row(std::size_t r) const;

    bool operator==(const FieldMatrix& o) const = default;

private:
    std::size_t rows_, cols_;
    std::uint32_t p_;
    std::vector<std::uint32_t> a_;
};

// Row-vector times matrix: (1 x k) * (k x n) -> (1 x n).
FieldVector mat_vec_mul(const FieldVector& a, const FieldMatrix& g);

// Row rank via Gaussian elimination mod p.
std::size_t mat_rank(const FieldMatrix& g);

// Writes the i-th index vector of F_p^k in lexicographic order
// (first coordinate most significant) into `out`.
void index_vector(std::uint64_t i, std::uint32_t p, std::size_t k,
                  std::vector<std::uint32_t>& out);

// The multiset {aG + B : a in F_p^k}, in lexicographic order of a.
// Size p^k, with repeats when rank(G) < k.
std::vector<FieldVector> coset_enumerate(const FieldMatrix& g, const FieldVector& b);

} // namespace ucs::ff
