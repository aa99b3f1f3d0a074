#include "ucs/field.hpp"

#include <stdexcept>

namespace ucs::ff {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

namespace {

void require_prime(std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("field modulus must be prime, got " + std::to_string(p));
}

void require_same_modulus(std::uint32_t a, std::uint32_t b) {
    if (a != b)
        throw std::invalid_argument("modulus mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    if (a == 0) throw std::domain_error("inversion of zero in F_" + std::to_string(p));
    // extended Euclid on (a, p)
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t; new_t = tmp;
        tmp = r - q * new_r;
        r = new_r; new_r = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

} // namespace

FieldElement::FieldElement(std::uint32_t value, std::uint32_t p) : v_(value), p_(p) {
    require_prime(p);
    if (value >= p) throw std::invalid_argument("residue out of range");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_modulus(p_, o.p_);
    std::uint64_t s = static_cast<std::uint64_t>(v_) + o.v_;
    return FieldElement(static_cast<std::uint32_t>(s % p_), p_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_modulus(p_, o.p_);
    std::uint64_t s = static_cast<std::uint64_t>(v_) + p_ - o.v_;
    return FieldElement(static_cast<std::uint32_t>(s % p_), p_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_modulus(p_, o.p_);
    std::uint64_t s = static_cast<std::uint64_t>(v_) * o.v_;
    return FieldElement(static_cast<std::uint32_t>(s % p_), p_);
}

FieldElement FieldElement::inverse() const {
    return FieldElement(mod_inverse(v_, p_), p_);
}

FieldVector::FieldVector(std::vector<std::uint32_t> entries, std::uint32_t p)
    : v_(std::move(entries)), p_(p) {
    require_prime(p);
    for (auto e : v_)
        if (e >= p) throw std::invalid_argument("residue out of range");
}

FieldVector FieldVector::zero(std::size_t n, std::uint32_t p) {
    return FieldVector(std::vector<std::uint32_t>(n, 0), p);
}

FieldVector FieldVector::operator+(const FieldVector& o) const {
    require_same_modulus(p_, o.p_);
    if (size() != o.size()) throw std::invalid_argument("vector length mismatch");
    std::vector<std::uint32_t> r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = (v_[i] + o.v_[i]) % p_;
    return FieldVector(std::move(r), p_);
}

FieldVector FieldVector::operator-(const FieldVector& o) const {
    require_same_modulus(p_, o.p_);
    if (size() != o.size()) throw std::invalid_argument("vector length mismatch");
    std::vector<std::uint32_t> r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = (v_[i] + p_ - o.v_[i]) % p_;
    return FieldVector(std::move(r), p_);
}

bool FieldVector::operator<(const FieldVector& o) const {
    return v_ < o.v_;
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {
    require_prime(p);
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols,
                         std::vector<std::uint32_t> entries, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), a_(std::move(entries)) {
    require_prime(p);
    if (a_.size() != rows * cols) throw std::invalid_argument("matrix shape/entries mismatch");
    for (auto e : a_)
        if (e >= p) throw std::invalid_argument("residue out of range");
}

FieldMatrix FieldMatrix::identity(std::size_t n, std::uint32_t p) {
    FieldMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, std::uint32_t v) {
    if (v >= p_) throw std::invalid_argument("residue out of range");
    a_[r * cols_ + c] = v;
}

FieldVector FieldMatrix::row(std::size_t r) const {
    std::vector<std::uint32_t> v(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
    return FieldVector(std::move(v), p_);
}

FieldVector mat_vec_mul(const FieldVector& a, const FieldMatrix& g) {
    require_same_modulus(a.modulus(), g.modulus());
    if (a.size() != g.rows())
        throw std::invalid_argument("dimension mismatch: vector " + std::to_string(a.size()) +
                                    " vs matrix rows " + std::to_string(g.rows()));
    const std::uint32_t p = g.modulus();
    std::vector<std::uint32_t> out(g.cols(), 0);
    for (std::size_t c = 0; c < g.cols(); ++c) {
        std::uint64_t acc = 0;
        for (std::size_t r = 0; r < g.rows(); ++r)
            acc += static_cast<std::uint64_t>(a[r]) * g.at(r, c) % p;
        out[c] = static_cast<std::uint32_t>(acc % p);
    }
    return FieldVector(std::move(out), p);
}

std::size_t mat_rank(const FieldMatrix& g) {
    const std::uint32_t p = g.modulus();
    std::vector<std::vector<std::uint32_t>> m(g.rows(), std::vector<std::uint32_t>(g.cols()));
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c)
            m[r][c] = g.at(r, c);

    std::size_t rank = 0;
    for (std::size_t col = 0; col < g.cols() && rank < g.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < g.rows() && m[pivot][col] == 0) ++pivot;
        if (pivot == g.rows()) continue;
        std::swap(m[pivot], m[rank]);
        const std::uint32_t inv = mod_inverse(m[rank][col], p);
        for (std::size_t c = col; c < g.cols(); ++c)
            m[rank][c] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(m[rank][c]) * inv % p);
        for (std::size_t r = 0; r < g.rows(); ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const std::uint64_t f = m[r][col];
            for (std::size_t c = col; c < g.cols(); ++c) {
                std::uint64_t v = m[r][c] + (p - static_cast<std::uint32_t>(f * m[rank][c] % p));
                m[r][c] = static_cast<std::uint32_t>(v % p);
            }
        }
        ++rank;
    }
    return rank;
}

void index_vector(std::uint64_t i, std::uint32_t p, std::size_t k,
                  std::vector<std::uint32_t>& out) {
    out.assign(k, 0);
    for (std::size_t j = k; j-- > 0;) {
        out[j] = static_cast<std::uint32_t>(i % p);
        i /= p;
    }
}

std::vector<FieldVector> coset_enumerate(const FieldMatrix& g, const FieldVector& b) {
    require_same_modulus(g.modulus(), b.modulus());
    if (b.size() != g.cols())
        throw std::invalid_argument("shift length " + std::to_string(b.size()) +
                                    " does not match code length " + std::to_string(g.cols()));
    const std::uint32_t p = g.modulus();
    const std::uint64_t total = checked_pow(p, static_cast<unsigned>(g.rows()));

    std::vector<FieldVector> out;
    out.reserve(total);
    std::vector<std::uint32_t> a;
    for (std::uint64_t i = 0; i < total; ++i) {
        index_vector(i, p, g.rows(), a);
        out.push_back(mat_vec_mul(FieldVector(a, p), g) + b);
    }
    return out;
}

} // namespace ucs::ff
