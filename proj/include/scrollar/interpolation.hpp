#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scrollar/prime_field.hpp"
#include "scrollar/surface.hpp"

namespace scrollar {

// Either delta general points, or s_i general points on each of u general
// sections of class (1,0) with s_1 >= ... >= s_u > 0.
struct NodeConfiguration {
    enum class Kind { GeneralPoints, OnSections };

    Kind kind = Kind::GeneralPoints;
    std::int64_t delta = 0;
    std::vector<std::int64_t> multiplicities;

    static NodeConfiguration general(std::int64_t delta);
    static NodeConfiguration on_sections(std::vector<std::int64_t> s);

    bool is_general() const { return kind == Kind::GeneralPoints; }
    std::int64_t total() const;
    std::size_t sections() const { return multiplicities.size(); }

    friend bool operator==(const NodeConfiguration&, const NodeConfiguration&) = default;
};

// Throws InvalidInput unless s is positive and non-increasing.
void validate_multiplicities(const std::vector<std::int64_t>& s);

enum class Method { ClosedFormGeneral, MinCut, SigmaRecursion, Oracle };
std::string to_string(Method m);

struct ConditionsReport {
    std::int64_t h0_ambient = 0;
    std::int64_t conditions_imposed = 0;
    std::int64_t h0_ideal = 0;
    Method method = Method::ClosedFormGeneral;
};

ConditionsReport conditions_general_points(const DivisorClass& D, const Surface& S, std::int64_t delta);

// cap_t = max((k-t+1)m + a + 1, 0) while t-1 <= k, and 0 afterwards.
std::vector<std::int64_t> section_capacities(const DivisorClass& D, const Surface& S, std::size_t u);

// Prefix sums P_j = sum_{t<=j} (cap_t - s_t) for j = 1..u.
std::vector<std::int64_t> capacity_slack(const DivisorClass& D, const Surface& S,
                                         const std::vector<std::int64_t>& s);

ConditionsReport conditions_on_sections_mincut(const DivisorClass& D, const Surface& S,
                                               const std::vector<std::int64_t>& s);

// One step of the sigma recursion: sections (begin, end] carry sigma < 0.
struct SigmaSegment {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::int64_t sigma = 0;
};

std::vector<SigmaSegment> sigma_segments(const DivisorClass& D, const Surface& S,
                                         const std::vector<std::int64_t>& s);

ConditionsReport conditions_on_sections_sigma(const DivisorClass& D, const Surface& S,
                                              const std::vector<std::int64_t>& s);

// Prefix inequality sum_{j<=i} s_j <= sum_{j<=i} max((k-j)m + a + 1, 0).
// Sufficient for independent conditions, not necessary.
bool star_condition(const DivisorClass& D, const Surface& S, const std::vector<std::int64_t>& s);

// Closed-form dispatch: general points or min-cut.
ConditionsReport conditions_closed_form(const DivisorClass& D, const Surface& S, const NodeConfiguration& c);
std::int64_t h0_ideal(const DivisorClass& D, const Surface& S, const NodeConfiguration& c);

// Refuse oracle matrices with more entries than this.
inline constexpr std::size_t kMaxOracleEntries = 4'000'000;

// Rows are points on random sections, columns the monomials
// t^p u1^(k-j), 0 <= p <= jm + a. Evaluation at u0 = 1, u1 = h_i(t).
PrimeFieldMatrix build_evaluation_matrix(const DivisorClass& D, const Surface& S,
                                         const std::vector<std::int64_t>& s, const PrimeField& F,
                                         SeededRng& rng);

// Same columns, rows at fully random points (t, u1).
PrimeFieldMatrix build_general_matrix(const DivisorClass& D, const Surface& S, std::int64_t delta,
                                      const PrimeField& F, SeededRng& rng);

// Maximum rank over trials, trial i seeded by derive_seed(base_seed, i).
ConditionsReport oracle_conditions(const DivisorClass& D, const Surface& S, const NodeConfiguration& c,
                                   const PrimeField& F, std::uint64_t base_seed, int trials);

}  // namespace scrollar
