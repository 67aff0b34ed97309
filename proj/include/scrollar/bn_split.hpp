#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scrollar/scrollar.hpp"

namespace scrollar {

struct SplittingPair {
    SplittingVector e;
    SplittingVector f;
    std::int64_t m = 0;
    std::int64_t a = 0;
};

// h^1(End(O(e))) = sum over ordered pairs of max(e_j - e_i - 1, 0).
std::int64_t u_invariant(const std::vector<std::int64_t>& e);

// h^1(Hom(O(e), O(f)) (O + O(m))).
std::int64_t hom_h1(const std::vector<std::int64_t>& e, const std::vector<std::int64_t>& f, std::int64_t m);

struct Feasibility {
    bool i = false;    // f_i >= e_i
    bool ii = false;   // f_i >= e_{i+1} - m
    bool iii = false;  // sum (f_i - e_i) = a
    bool all() const { return i && ii && iii; }
};

Feasibility lv_feasible(const SplittingPair& P);

// g - u(e) - u(f) + hom_h1(e, f, m); throws InvalidInput on infeasible pairs.
std::int64_t lv_dimension(const SplittingPair& P, std::int64_t g);

struct Cor1Sides {
    std::int64_t lhs = 0;  // u(e_hat) + u(d)
    std::int64_t rhs = 0;  // g + hom_h1(e_hat, d, m)
    bool holds() const { return lhs == rhs; }
};

Cor1Sides cor1_sides(const CoverProblem& P);
bool cor1_identity(const CoverProblem& P);

struct PolytopeReport {
    bool member = true;
    std::vector<std::string> violated;
};

// Exact check of 0 <= x_1 <= ... <= x_{k-1} and x_{i+j} <= x_i + x_j for
// x = e / (g + k - 1).
PolytopeReport polytope_membership(const ScrollarVector& e, std::int64_t g);

enum class Existence { Guaranteed, Unknown };
std::string to_string(Existence x);

bool existence_final_thm(std::int64_t k, std::int64_t u, std::int64_t s1, std::int64_t a);
bool existence_coro_p1(std::int64_t g, std::int64_t d, std::int64_t k);
bool existence_lemma_bound(std::int64_t l, std::int64_t k, std::int64_t u, std::int64_t s1, std::int64_t su,
                           std::int64_t a);

}  // namespace scrollar
