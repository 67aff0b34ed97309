#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace scrollar {

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;  // 2^31 - 1

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

class PrimeField {
public:
    explicit PrimeField(std::uint64_t p = kDefaultPrime);

    std::uint64_t modulus() const { return p_; }

    std::uint64_t reduce(std::int64_t v) const;
    std::uint64_t add(std::uint64_t x, std::uint64_t y) const;
    std::uint64_t sub(std::uint64_t x, std::uint64_t y) const;
    std::uint64_t mul(std::uint64_t x, std::uint64_t y) const;
    std::uint64_t pow(std::uint64_t x, std::uint64_t e) const;

private:
    std::uint64_t p_;
};

// Dense row-major matrix of reduced field elements.
struct PrimeFieldMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint64_t> entries;

    PrimeFieldMatrix() = default;
    PrimeFieldMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}

    std::uint64_t& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    std::uint64_t at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

    PrimeFieldMatrix transpose() const;
};

// Rank by fraction-free row elimination; no inverses are taken.
std::size_t rank(PrimeFieldMatrix M, const PrimeField& F);

// mt19937_64 with a portable bounded draw (std distributions are not
// specified bit-for-bit across standard libraries).
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next() { return engine_(); }
    // Uniform in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

// Seed for the index-th independent stream under base (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// n pairwise-distinct uniform field elements; throws InvalidInput if n >= p.
std::vector<std::uint64_t> sample_distinct(SeededRng& rng, std::size_t n, const PrimeField& F);

}  // namespace scrollar
