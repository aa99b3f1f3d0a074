#pragma once

#include <atomic>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ucs {

// Thrown when an exact enumeration would exceed the desk-scale budget.
// Callers that sweep configurations catch this and report the instance
// as skipped instead of aborting the sweep.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Hard cap on exact tableau sizes (number of table entries).
inline constexpr std::uint64_t kEnumerationBudget = 100'000'000ull;

// pow with overflow detection; throws BudgetError past `limit`.
inline std::uint64_t checked_pow(std::uint64_t base, unsigned exp,
                                 std::uint64_t limit = kEnumerationBudget) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > limit / base)
            throw BudgetError("enumeration budget exceeded: " + std::to_string(base) +
                              "^" + std::to_string(exp) + " > " + std::to_string(limit));
        r *= base;
    }
    if (r > limit)
        throw BudgetError("enumeration budget exceeded: " + std::to_string(r) +
                          " > " + std::to_string(limit));
    return r;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Deterministic (seed, stream) -> sub-seed derivation for concurrent trials.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x51ED2701ull));
}

// Seeded RNG wrapper. All sampling goes through the fully specified
// mt19937_64 sequence; no std distributions, so output is identical on
// every platform for a given seed.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform residue in [0, m) via rejection.
    std::uint32_t uniform_residue(std::uint32_t m) {
        if (m == 0) throw std::invalid_argument("uniform_residue: m == 0");
        const std::uint64_t span = UINT64_MAX - (UINT64_MAX % m + 1) % m;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x > span && span != UINT64_MAX);
        return static_cast<std::uint32_t>(x % m);
    }

    // Uniform double in [0, 1).
    double uniform_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Index into a cumulative distribution (strictly increasing, last ~= 1).
    std::size_t sample_cdf(const std::vector<double>& cum) {
        const double u = uniform_unit();
        std::size_t lo = 0, hi = cum.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (cum[mid] <= u) lo = mid + 1; else hi = mid;
        }
        return lo < cum.size() ? lo : cum.size() - 1;
    }

private:
    std::mt19937_64 eng_;
};

// Runs fn(i) for i in [0, count). With jobs > 1 work is pulled from a
// shared counter; callers must write results into per-index slots.
template <typename Fn>
void parallel_for(unsigned jobs, std::size_t count, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(count));
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// FNV-1a, used for config/output digests in run manifests.
inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xCBF29CE484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ull;
    }
    return h;
}

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xCBF29CE484222325ull) {
    return fnv1a(s.data(), s.size(), h);
}

} // namespace ucs
