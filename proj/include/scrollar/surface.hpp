#pragma once

#include <cstdint>

namespace scrollar {

// Inputs above this magnitude are refused instead of risking overflow.
inline constexpr std::int64_t kCoordinateCap = 1'000'000;

// The m-th Hirzebruch surface F_m = P(O + O(m)) over P^1.
struct Surface {
    std::int64_t m = 0;

    explicit Surface(std::int64_t m_);
};

// The class k*zeta + a*xi. Nothing beyond integrality is assumed.
struct DivisorClass {
    std::int64_t k = 0;
    std::int64_t a = 0;

    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
    DivisorClass operator+(const DivisorClass& o) const { return {k + o.k, a + o.a}; }
    DivisorClass operator-(const DivisorClass& o) const { return {k - o.k, a - o.a}; }
};

// Throws InvalidInput if |k| or |a| exceeds kCoordinateCap.
void check_caps(const DivisorClass& D);

std::int64_t intersect(const DivisorClass& D1, const DivisorClass& D2, const Surface& S);
DivisorClass directrix(const Surface& S);
DivisorClass canonical_class(const Surface& S);

// C(k,2) m + (k-1)(a-1); requires k >= 1.
std::int64_t arithmetic_genus(const DivisorClass& D, const Surface& S);

// Sum over j = 0..k with jm + a >= 0 of (jm + a + 1).
std::int64_t h0_line_bundle(const DivisorClass& D, const Surface& S);

std::int64_t binomial2(std::int64_t n);  // n(n-1)/2

}  // namespace scrollar
