#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "scrollar/interpolation.hpp"
#include "scrollar/surface.hpp"

namespace scrollar {

using ScrollarVector = std::vector<std::int64_t>;   // e_1 <= ... <= e_{k-1}
using SplittingVector = std::vector<std::int64_t>;  // sorted non-decreasing

// A nodal curve of class (k,a) on F_m with the given node configuration.
// The constructor enforces what the formulas need downstream:
//   k >= 2, a >= 0, m + a >= 1, genus >= 0;
//   the nodes impose independent conditions on the adjoint class
//   (k-2, a+m-2), so that f(0) = k-1;
//   for nodes on sections, 2 s_1 <= km + a (a section holding more nodes
//   than that would be a component of the curve).
struct CoverProblem {
    Surface S;
    DivisorClass D;
    NodeConfiguration config;

    CoverProblem(Surface S_, DivisorClass D_, NodeConfiguration c_);

    std::int64_t k() const { return D.k; }
    std::int64_t a() const { return D.a; }
    std::int64_t m() const { return S.m; }
};

// Empty when (S, D, c) is a valid CoverProblem, otherwise the reasons.
std::vector<std::string> cover_problem_violations(const Surface& S, const DivisorClass& D,
                                                  const NodeConfiguration& c);

std::int64_t genus_of(const CoverProblem& P);

// h^0 of the ideal sheaf of the nodes in O(D). The default is the closed
// form; the oracle can be plugged in for cross-checks.
using IdealDimension = std::function<std::int64_t(const DivisorClass&)>;
IdealDimension closed_form_dimension(const CoverProblem& P);

std::int64_t f_value(const CoverProblem& P, std::int64_t n);
std::int64_t f_value(const CoverProblem& P, std::int64_t n, const IdealDimension& h0I);

// n beyond which every capacity is non-positive.
std::int64_t scan_bound(const CoverProblem& P);

struct ScanResult {
    ScrollarVector e;
    std::vector<std::int64_t> f_table;  // f(0), ..., f(scan_bound + 1)
};

ScanResult scrollar_scan_table(const CoverProblem& P, const IdealDimension& h0I);
ScrollarVector scrollar_scan(const CoverProblem& P);

// (m+a, 2m+a, ..., (k-1)m+a): the smooth case.
ScrollarVector generic_pattern(std::int64_t k, std::int64_t a, std::int64_t m);

bool is_balanced(const std::vector<std::int64_t>& e);
ScrollarVector balanced_partition(std::int64_t total, std::int64_t parts);
// Smallest delta from which general nodes give a balanced vector. Below
// C(k-1,2)m the closed form still has gap <= 1 for the last k-2 values of delta.
std::int64_t balanced_delta_threshold(const Surface& S, std::int64_t k);

// Hypotheses under which the general-points closed form is proven. Empty
// means all hold; otherwise human readable annotations.
std::vector<std::string> generic_hypothesis_warnings(const Surface& S, const DivisorClass& D,
                                                     std::int64_t delta);

ScrollarVector scrollar_generic_closed_form(const Surface& S, const DivisorClass& D, std::int64_t delta);

// One level of the sections recursion.
struct RecursionStep {
    std::int64_t n = 0;       // first twist with a deficit
    std::int64_t r = 0;       // generic invariants im+a <= n kept
    std::int64_t delta = 0;   // deficit of the min-cut at that twist
    std::int64_t istar = 0;   // largest argmin of the cut
    std::int64_t extra = 0;   // slack of that cut one twist earlier
};

struct SectionsClosedForm {
    ScrollarVector e;
    std::vector<RecursionStep> trace;
};

SectionsClosedForm scrollar_sections_closed_form(const CoverProblem& P);

// Empty when the Coppens-type proposition applies.
std::vector<std::string> coppens_violations(const CoverProblem& P);
ScrollarVector scrollar_coppens(const CoverProblem& P);

// True when the nodes impose independent conditions on (k-3, m+a).
bool in_directrix_regime(const CoverProblem& P);

// Splitting type of the pushforward of O_C(directrix), recovered exactly
// from the h^0 table of its twists.
SplittingVector directrix_splitting(const CoverProblem& P);

// (0, -e_2, ..., -e_{k-1}, sigma) sorted, with sigma fixed by the degree.
// Agrees with directrix_splitting for general nodes when the invariants
// are unbalanced.
SplittingVector directrix_splitting_formula(const CoverProblem& P, const ScrollarVector& e);

// (-e_{k-1}, ..., -e_1, 0): splitting of the pushforward of O_C.
SplittingVector trivial_splitting(const ScrollarVector& e);

// Throws Inconsistency unless e is non-decreasing, positive, of length
// k-1 and sums to g + k - 1.
void check_scrollar_vector(const CoverProblem& P, const ScrollarVector& e);

}  // namespace scrollar
