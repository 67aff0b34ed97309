#include "scrollar/scrollar.hpp"

#include <algorithm>
#include <numeric>

#include "scrollar/errors.hpp"

namespace scrollar {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += "; ";
        out += p;
    }
    return out;
}

std::int64_t ceil_div(std::int64_t x, std::int64_t y) { return x / y + ((x % y != 0) && ((x < 0) == (y < 0))); }

}  // namespace

std::vector<std::string> cover_problem_violations(const Surface& S, const DivisorClass& D,
                                                  const NodeConfiguration& c) {
    std::vector<std::string> why;
    check_caps(D);
    if (D.k < 2) why.push_back("cover degree k must be at least 2");
    if (D.a < 0) why.push_back("a must be non-negative for an irreducible curve of class (k,a), k >= 2");
    if (S.m + D.a < 1) why.push_back("m + a must be positive");
    if (!why.empty()) return why;

    if (arithmetic_genus(D, S) < c.total()) why.push_back("more nodes than the arithmetic genus");
    const DivisorClass adjoint{D.k - 2, D.a + S.m - 2};
    if (conditions_closed_form(adjoint, S, c).conditions_imposed != c.total())
        why.push_back("nodes do not impose independent conditions on the adjoint class (k-2, a+m-2)");
    if (!c.is_general() && !c.multiplicities.empty() && 2 * c.multiplicities.front() > D.k * S.m + D.a)
        why.push_back("2 s_1 exceeds k m + a, so the first section would be a component of the curve");
    return why;
}

CoverProblem::CoverProblem(Surface S_, DivisorClass D_, NodeConfiguration c_)
    : S(S_), D(D_), config(std::move(c_)) {
    const auto why = cover_problem_violations(S, D, config);
    if (!why.empty()) throw InvalidInput("invalid cover problem: " + join(why));
}

std::int64_t genus_of(const CoverProblem& P) { return arithmetic_genus(P.D, P.S) - P.config.total(); }

IdealDimension closed_form_dimension(const CoverProblem& P) {
    return [S = P.S, c = P.config](const DivisorClass& D) { return h0_ideal(D, S, c); };
}

std::int64_t f_value(const CoverProblem& P, std::int64_t n, const IdealDimension& h0I) {
    if (n < 0) throw InvalidInput("f_value is defined for n >= 0");
    const std::int64_t k = P.k() - 2;
    const std::int64_t base = P.a() + P.m();
    return h0I({k, base - 1 - n}) - h0I({k, base - 2 - n});
}

std::int64_t f_value(const CoverProblem& P, std::int64_t n) { return f_value(P, n, closed_form_dimension(P)); }

std::int64_t scan_bound(const CoverProblem& P) { return (P.k() - 1) * P.m() + P.a() + 1; }

ScanResult scrollar_scan_table(const CoverProblem& P, const IdealDimension& h0I) {
    const std::int64_t k = P.k();
    const std::int64_t bound = scan_bound(P);
    ScanResult out;
    out.f_table.reserve(static_cast<std::size_t>(bound) + 2);
    for (std::int64_t n = 0; n <= bound + 1; ++n) out.f_table.push_back(f_value(P, n, h0I));

    for (std::size_t n = 1; n < out.f_table.size(); ++n)
        if (out.f_table[n] > out.f_table[n - 1])
            throw Inconsistency("f is not non-increasing at n = " + std::to_string(n));

    for (std::int64_t i = 1; i <= k - 1; ++i) {
        std::int64_t n = 0;
        while (n <= bound && out.f_table[static_cast<std::size_t>(n)] >= k - i) ++n;
        if (n > bound)
            throw Inconsistency("invariant e_" + std::to_string(i) + " not found below the scan bound");
        out.e.push_back(n);
    }
    check_scrollar_vector(P, out.e);
    return out;
}

ScrollarVector scrollar_scan(const CoverProblem& P) { return scrollar_scan_table(P, closed_form_dimension(P)).e; }

ScrollarVector generic_pattern(std::int64_t k, std::int64_t a, std::int64_t m) {
    ScrollarVector e;
    for (std::int64_t i = 1; i <= k - 1; ++i) e.push_back(i * m + a);
    return e;
}

bool is_balanced(const std::vector<std::int64_t>& e) {
    if (e.empty()) return true;
    const auto [lo, hi] = std::minmax_element(e.begin(), e.end());
    return *hi - *lo <= 1;
}

std::int64_t balanced_delta_threshold(const Surface& S, std::int64_t k) {
    if (k <= 2 || S.m == 0) return 0;
    return binomial2(k - 1) * S.m - (k - 2);
}

ScrollarVector balanced_partition(std::int64_t total, std::int64_t parts) {
    if (parts <= 0) return {};
    const std::int64_t q = total >= 0 ? total / parts : -ceil_div(-total, parts);
    const std::int64_t r = total - q * parts;
    ScrollarVector e(static_cast<std::size_t>(parts - r), q);
    e.insert(e.end(), static_cast<std::size_t>(r), q + 1);
    return e;
}

std::vector<std::string> generic_hypothesis_warnings(const Surface& S, const DivisorClass& D,
                                                     std::int64_t delta) {
    std::vector<std::string> w;
    static constexpr std::int64_t excluded[][3] = {{2, 4, 0}, {1, 6, 0}, {1, 4, 2}, {0, 4, 4}};
    for (const auto& x : excluded)
        if (S.m == x[0] && D.k == x[1] && D.a == x[2])
            w.push_back("(m,k,a) is one of the excluded triples");
    if (3 * delta > h0_line_bundle(D, S) - 1) w.push_back("3 delta exceeds dim |O(k,a)|");
    return w;
}

ScrollarVector scrollar_generic_closed_form(const Surface& S, const DivisorClass& D, std::int64_t delta) {
    if (D.k < 2) throw InvalidInput("closed form needs k >= 2");
    if (delta < 0) throw InvalidInput("delta must be non-negative");
    const std::int64_t pa = arithmetic_genus(D, S);
    if (delta > pa) throw InvalidInput("delta exceeds the arithmetic genus");
    const std::int64_t k = D.k, a = D.a, m = S.m;
    const std::int64_t g = pa - delta;
    if (delta >= binomial2(k - 1) * m) return balanced_partition(g + k - 1, k - 1);

    // C(l,2) m <= delta < C(l+1,2) m, and l <= k-2 here.
    std::int64_t l = 1;
    while (!(delta < binomial2(l + 1) * m)) ++l;
    const std::int64_t d = delta - binomial2(l) * m;
    const std::int64_t j = d % l;
    ScrollarVector e;
    for (std::int64_t i = 1; i <= k - 1; ++i) {
        if (i <= k - 1 - l)
            e.push_back(i * m + a);
        else if (i < k - l + j)
            e.push_back((k - l) * m + a - ceil_div(d, l));
        else
            e.push_back((k - l) * m + a - d / l);
    }
    return e;
}

namespace {

std::vector<std::int64_t> tail(const std::vector<std::int64_t>& v, std::int64_t count) {
    if (count < 0 || count > static_cast<std::int64_t>(v.size()))
        throw Inconsistency("recursion produced too few invariants");
    return {v.end() - count, v.end()};
}

ScrollarVector sections_recursion(std::int64_t k, std::int64_t a, const Surface& S,
                                  const std::vector<std::int64_t>& s, std::vector<RecursionStep>& trace) {
    if (k - 1 <= 0) return {};
    const std::int64_t m = S.m;
    if (s.empty()) return generic_pattern(k, a, m);

    const std::int64_t bound = (k - 1) * m + a + 1;
    RecursionStep step;
    bool found = false;
    for (std::int64_t n = 0; n <= bound && !found; ++n) {
        const auto slack = capacity_slack({k - 2, a + m - 2 - n}, S, s);
        std::int64_t low = 0;
        for (std::size_t j = 0; j < slack.size(); ++j) {
            if (slack[j] < 0 && slack[j] <= low) {
                low = slack[j];
                step.istar = static_cast<std::int64_t>(j) + 1;
            }
        }
        if (low < 0) {
            found = true;
            step.n = n;
            step.delta = -low;
        }
    }
    if (!found) throw Inconsistency("no deficit found below the scan bound");

    const auto gen = generic_pattern(k, a, m);
    step.r = std::count_if(gen.begin(), gen.end(), [&](std::int64_t x) { return x <= step.n; });
    step.extra = capacity_slack({k - 2, a + m - 1 - step.n}, S, s)[static_cast<std::size_t>(step.istar) - 1];
    if (step.extra < 0) throw Inconsistency("negative slack one twist before the first deficit");
    trace.push_back(step);

    const std::vector<std::int64_t> rest(s.begin() + step.istar, s.end());
    const auto sub = sections_recursion(k - step.istar, a, S, rest, trace);

    ScrollarVector e(gen.begin(), gen.begin() + step.r);
    e.insert(e.end(), static_cast<std::size_t>(step.delta), step.n);
    e.insert(e.end(), static_cast<std::size_t>(step.extra), step.n + 1);
    const auto last = tail(sub, k - 1 - static_cast<std::int64_t>(e.size()));
    e.insert(e.end(), last.begin(), last.end());
    return e;
}

ScrollarVector coppens_recursion(std::int64_t k, std::int64_t a, std::int64_t m, const std::vector<std::int64_t>& s) {
    if (k - 1 <= 0) return {};
    if (s.empty()) return generic_pattern(k, a, m);
    const std::int64_t n1 = (k - 1) * m + a - s.front();
    // Length of the leading run s_1, s_1 - m, s_1 - 2m, ...
    std::size_t run = 0;
    while (run < s.size() && s[run] == s.front() - static_cast<std::int64_t>(run) * m) ++run;
    const auto gen = generic_pattern(k, a, m);
    const auto r = std::count_if(gen.begin(), gen.end(), [&](std::int64_t x) { return x <= n1; });
    const auto i1 = static_cast<std::int64_t>(run);
    const auto sub = coppens_recursion(k - i1, a, m, {s.begin() + i1, s.end()});
    ScrollarVector e(gen.begin(), gen.begin() + r);
    e.insert(e.end(), run, n1);
    const auto last = tail(sub, k - 1 - static_cast<std::int64_t>(e.size()));
    e.insert(e.end(), last.begin(), last.end());
    return e;
}

}  // namespace

SectionsClosedForm scrollar_sections_closed_form(const CoverProblem& P) {
    if (P.config.is_general()) throw InvalidInput("sections closed form needs nodes on sections");
    SectionsClosedForm out;
    out.e = sections_recursion(P.k(), P.a(), P.S, P.config.multiplicities, out.trace);
    return out;
}

std::vector<std::string> coppens_violations(const CoverProblem& P) {
    std::vector<std::string> why;
    if (P.config.is_general()) {
        why.push_back("nodes must lie on sections");
        return why;
    }
    const auto& s = P.config.multiplicities;
    const std::int64_t k = P.k(), a = P.a(), m = P.m();
    if (m < 1) why.push_back("m must be at least 1");
    if (static_cast<std::int64_t>(s.size()) > k - 1) why.push_back("more than k-1 sections");
    if (!s.empty() && s.front() > (k - 1) * m + a + 1) why.push_back("s_1 exceeds (k-1)m + a + 1");
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] > std::max<std::int64_t>(0, s[i - 1] - m)) {
            why.push_back("s_" + std::to_string(i + 1) + " exceeds max(0, s_" + std::to_string(i) + " - m)");
            break;
        }
    return why;
}

ScrollarVector scrollar_coppens(const CoverProblem& P) {
    const auto why = coppens_violations(P);
    if (!why.empty()) throw InvalidInput("Coppens-type formula does not apply: " + join(why));
    return coppens_recursion(P.k(), P.a(), P.m(), P.config.multiplicities);
}

bool in_directrix_regime(const CoverProblem& P) {
    const DivisorClass D{P.k() - 3, P.m() + P.a()};
    return conditions_closed_form(D, P.S, P.config).conditions_imposed == P.config.total();
}

SplittingVector directrix_splitting(const CoverProblem& P) {
    if (!in_directrix_regime(P))
        throw InvalidInput("nodes do not impose independent conditions on (k-3, m+a); splitting not determined");
    const std::int64_t k = P.k(), a = P.a(), m = P.m();
    const auto h0I = closed_form_dimension(P);
    // H(n) = h^0(O_C(directrix) twisted by -n copies of the pencil class)
    // expressed as sum_j max(-d_j - 1 - n, 0); recover d from its jumps.
    auto H = [&](std::int64_t n) {
        return h0I({k - 3, 2 * m + a - 2 - n}) + std::max<std::int64_t>(m - 1 - n, 0) +
               std::max<std::int64_t>(-1 - n, 0);
    };
    auto at_most = [&](std::int64_t v) { return H(-2 - v) - H(-1 - v); };

    const std::int64_t reach = 2 * scan_bound(P) + 2 * m + 8;
    std::int64_t v = -reach;
    if (at_most(v) != 0) throw Inconsistency("directrix splitting has entries below the search window");
    SplittingVector d;
    std::int64_t seen = 0;
    for (; seen < k && v <= reach; ++v) {
        const std::int64_t c = at_most(v);
        if (c < seen) throw Inconsistency("directrix h^0 table is not convex");
        d.insert(d.end(), static_cast<std::size_t>(c - seen), v);
        seen = c;
    }
    if (seen != k) throw Inconsistency("directrix splitting did not close within the search window");

    const std::int64_t degree = a - genus_of(P) - k + 1;
    if (std::accumulate(d.begin(), d.end(), std::int64_t{0}) != degree)
        throw Inconsistency("directrix splitting violates the degree sum rule");

    if (P.config.is_general() && P.config.delta < binomial2(k - 1) * m) {
        const auto e = scrollar_scan(P);
        if (directrix_splitting_formula(P, e) != d)
            throw Inconsistency("directrix splitting disagrees with the unbalanced-case formula");
    }
    return d;
}

SplittingVector directrix_splitting_formula(const CoverProblem& P, const ScrollarVector& e) {
    const std::int64_t k = P.k();
    if (static_cast<std::int64_t>(e.size()) != k - 1) throw InvalidInput("scrollar vector has the wrong length");
    std::int64_t sigma = P.a() - genus_of(P) - k + 1;
    SplittingVector d{0};
    for (std::size_t i = 1; i < e.size(); ++i) {
        d.push_back(-e[i]);
        sigma += e[i];
    }
    d.push_back(sigma);
    std::sort(d.begin(), d.end());
    return d;
}

SplittingVector trivial_splitting(const ScrollarVector& e) {
    SplittingVector d;
    for (auto it = e.rbegin(); it != e.rend(); ++it) d.push_back(-*it);
    d.push_back(0);
    return d;
}

void check_scrollar_vector(const CoverProblem& P, const ScrollarVector& e) {
    if (static_cast<std::int64_t>(e.size()) != P.k() - 1)
        throw Inconsistency("scrollar vector has " + std::to_string(e.size()) + " entries, expected k-1");
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] <= 0) throw Inconsistency("scrollar invariant not positive");
        if (i > 0 && e[i] < e[i - 1]) throw Inconsistency("scrollar invariants not non-decreasing");
    }
    if (std::accumulate(e.begin(), e.end(), std::int64_t{0}) != genus_of(P) + P.k() - 1)
        throw Inconsistency("scrollar invariants do not sum to g + k - 1");
}

}  // namespace scrollar
