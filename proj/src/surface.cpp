#include "scrollar/surface.hpp"

#include <limits>
#include <string>

#include "scrollar/errors.hpp"

namespace scrollar {

namespace {

__extension__ typedef __int128 i128;

std::int64_t narrow(i128 v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw InvalidInput(std::string(what) + ": result does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

void check_coordinate(std::int64_t v, const char* name) {
    if (v > kCoordinateCap || v < -kCoordinateCap)
        throw InvalidInput(std::string(name) + " = " + std::to_string(v) + " exceeds the cap of " +
                           std::to_string(kCoordinateCap));
}

}  // namespace

Surface::Surface(std::int64_t m_) : m(m_) {
    if (m_ < 0) throw InvalidInput("Hirzebruch index m must be non-negative");
    check_coordinate(m_, "m");
}

void check_caps(const DivisorClass& D) {
    check_coordinate(D.k, "k");
    check_coordinate(D.a, "a");
}

std::int64_t binomial2(std::int64_t n) { return narrow(static_cast<i128>(n) * (n - 1) / 2, "binomial"); }

std::int64_t intersect(const DivisorClass& D1, const DivisorClass& D2, const Surface& S) {
    i128 v = static_cast<i128>(D1.k) * D2.k * S.m + static_cast<i128>(D1.k) * D2.a +
             static_cast<i128>(D2.k) * D1.a;
    return narrow(v, "intersect");
}

DivisorClass directrix(const Surface& S) { return {1, -S.m}; }

DivisorClass canonical_class(const Surface& S) { return {-2, S.m - 2}; }

std::int64_t arithmetic_genus(const DivisorClass& D, const Surface& S) {
    if (D.k <= 0) throw InvalidInput("arithmetic_genus requires k >= 1");
    i128 k = D.k;
    i128 v = k * (k - 1) / 2 * S.m + (k - 1) * (static_cast<i128>(D.a) - 1);
    return narrow(v, "arithmetic_genus");
}

std::int64_t h0_line_bundle(const DivisorClass& D, const Surface& S) {
    if (D.k < 0) return 0;
    const i128 m = S.m, a = D.a, k = D.k;
    // First j with jm + a >= 0.
    i128 j0 = 0;
    if (a < 0) {
        if (m == 0) return 0;
        j0 = (-a + m - 1) / m;
    }
    if (j0 > k) return 0;
    const i128 count = k - j0 + 1;
    const i128 sum_j = (j0 + k) * count / 2;
    return narrow(m * sum_j + (a + 1) * count, "h0_line_bundle");
}

}  // namespace scrollar
