#include "scrollar/prime_field.hpp"

#include <string>
#include <unordered_set>
#include <utility>

#include "scrollar/errors.hpp"

namespace scrollar {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t n) {
    return static_cast<std::uint64_t>(static_cast<u128>(x) * y % n);
}

std::uint64_t powmod(std::uint64_t x, std::uint64_t e, std::uint64_t n) {
    std::uint64_t r = 1 % n;
    x %= n;
    while (e) {
        if (e & 1) r = mulmod(r, x, n);
        x = mulmod(x, x, n);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto b : bases) {
        if (n % b == 0) return n == b;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto b : bases) {
        std::uint64_t x = powmod(b, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw InvalidInput("modulus " + std::to_string(p) + " is not prime");
}

std::uint64_t PrimeField::reduce(std::int64_t v) const {
    const auto p = static_cast<std::int64_t>(p_ <= static_cast<std::uint64_t>(INT64_MAX) ? p_ : 0);
    if (p == 0) {
        // p above 2^63: any int64 magnitude is already below p.
        return v >= 0 ? static_cast<std::uint64_t>(v) : p_ - static_cast<std::uint64_t>(-(v + 1)) - 1;
    }
    std::int64_t r = v % p;
    return static_cast<std::uint64_t>(r < 0 ? r + p : r);
}

std::uint64_t PrimeField::add(std::uint64_t x, std::uint64_t y) const {
    std::uint64_t s = x + y;
    if (s < x || s >= p_) s -= p_;
    return s;
}

std::uint64_t PrimeField::sub(std::uint64_t x, std::uint64_t y) const { return x >= y ? x - y : x + (p_ - y); }

std::uint64_t PrimeField::mul(std::uint64_t x, std::uint64_t y) const { return mulmod(x, y, p_); }

std::uint64_t PrimeField::pow(std::uint64_t x, std::uint64_t e) const { return powmod(x, e, p_); }

PrimeFieldMatrix PrimeFieldMatrix::transpose() const {
    PrimeFieldMatrix T(cols, rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) T.at(c, r) = at(r, c);
    return T;
}

std::size_t rank(PrimeFieldMatrix M, const PrimeField& F) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < M.cols && rank < M.rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < M.rows && M.at(pivot, c) == 0) ++pivot;
        if (pivot == M.rows) continue;
        if (pivot != rank) {
            for (std::size_t j = c; j < M.cols; ++j) std::swap(M.at(pivot, j), M.at(rank, j));
        }
        const std::uint64_t piv = M.at(rank, c);
        for (std::size_t r = rank + 1; r < M.rows; ++r) {
            const std::uint64_t x = M.at(r, c);
            if (x == 0) continue;
            // row_r <- piv * row_r - x * row_pivot
            for (std::size_t j = c; j < M.cols; ++j)
                M.at(r, j) = F.sub(F.mul(piv, M.at(r, j)), F.mul(x, M.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

std::uint64_t SeededRng::below(std::uint64_t n) {
    if (n == 0) throw InvalidInput("SeededRng::below needs a positive bound");
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n + 1) % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x > limit);
    return x % n;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<std::uint64_t> sample_distinct(SeededRng& rng, std::size_t n, const PrimeField& F) {
    if (n >= F.modulus())
        throw InvalidInput("cannot draw " + std::to_string(n) + " distinct elements from a field of size " +
                           std::to_string(F.modulus()));
    std::vector<std::uint64_t> out;
    out.reserve(n);
    std::unordered_set<std::uint64_t> seen;
    while (out.size() < n) {
        std::uint64_t x = rng.below(F.modulus());
        if (seen.insert(x).second) out.push_back(x);
    }
    return out;
}

}  // namespace scrollar
