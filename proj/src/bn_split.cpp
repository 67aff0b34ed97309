#include "scrollar/bn_split.hpp"

#include <boost/rational.hpp>
#include <numeric>

#include "scrollar/errors.hpp"

namespace scrollar {

std::int64_t u_invariant(const std::vector<std::int64_t>& e) {
    std::int64_t u = 0;
    for (auto x : e)
        for (auto y : e) u += std::max<std::int64_t>(y - x - 1, 0);
    return u;
}

std::int64_t hom_h1(const std::vector<std::int64_t>& e, const std::vector<std::int64_t>& f, std::int64_t m) {
    if (e.size() != f.size()) throw InvalidInput("hom_h1 needs vectors of equal length");
    std::int64_t h = 0;
    for (auto x : e)
        for (auto y : f) h += std::max<std::int64_t>(x - y - 1, 0) + std::max<std::int64_t>(x - y - m - 1, 0);
    return h;
}

Feasibility lv_feasible(const SplittingPair& P) {
    if (P.e.size() != P.f.size()) throw InvalidInput("splitting vectors must have equal length");
    Feasibility r;
    r.i = r.ii = true;
    std::int64_t diff = 0;
    for (std::size_t i = 0; i < P.e.size(); ++i) {
        if (P.f[i] < P.e[i]) r.i = false;
        if (i + 1 < P.e.size() && P.f[i] < P.e[i + 1] - P.m) r.ii = false;
        diff += P.f[i] - P.e[i];
    }
    r.iii = diff == P.a;
    return r;
}

std::int64_t lv_dimension(const SplittingPair& P, std::int64_t g) {
    if (!lv_feasible(P).all()) throw InvalidInput("splitting pair is not feasible");
    return g - u_invariant(P.e) - u_invariant(P.f) + hom_h1(P.e, P.f, P.m);
}

Cor1Sides cor1_sides(const CoverProblem& P) {
    if (!in_directrix_regime(P)) throw InvalidInput("instance is outside the directrix regime");
    const auto e_hat = trivial_splitting(scrollar_scan(P));
    const auto d = directrix_splitting(P);
    return {u_invariant(e_hat) + u_invariant(d), genus_of(P) + hom_h1(e_hat, d, P.m())};
}

bool cor1_identity(const CoverProblem& P) { return cor1_sides(P).holds(); }

PolytopeReport polytope_membership(const ScrollarVector& e, std::int64_t g) {
    using Q = boost::rational<std::int64_t>;
    const auto K = static_cast<std::int64_t>(e.size());
    const std::int64_t total = std::accumulate(e.begin(), e.end(), std::int64_t{0});
    if (total != g + K) throw InvalidInput("scrollar vector does not sum to g + k - 1");
    if (total == 0) throw InvalidInput("cannot normalise a vector with zero sum");
    std::vector<Q> x;
    for (auto v : e) x.emplace_back(v, total);

    PolytopeReport r;
    auto fail = [&](std::string s) {
        r.member = false;
        r.violated.push_back(std::move(s));
    };
    if (!x.empty() && x[0] < 0) fail("0 <= x_1");
    for (std::int64_t i = 1; i < K; ++i)
        if (x[i - 1] > x[i]) fail("x_" + std::to_string(i) + " <= x_" + std::to_string(i + 1));
    for (std::int64_t i = 1; i <= K; ++i)
        for (std::int64_t j = i; i + j <= K; ++j)
            if (x[i + j - 1] > x[i - 1] + x[j - 1])
                fail("x_" + std::to_string(i + j) + " <= x_" + std::to_string(i) + "+x_" + std::to_string(j));
    return r;
}

std::string to_string(Existence x) { return x == Existence::Guaranteed ? "guaranteed" : "unknown"; }

bool existence_final_thm(std::int64_t k, std::int64_t u, std::int64_t s1, std::int64_t a) {
    if (k < 3) throw InvalidInput("the existence theorem needs k >= 3");
    const std::int64_t c = (2 * u + k - 1) / k;  // ceil(2u/k), u >= 0
    return a > 2 * (c + 1) * s1;
}

bool existence_coro_p1(std::int64_t g, std::int64_t d, std::int64_t k) {
    if (k < 2 || d < 0) throw InvalidInput("existence_coro_p1 needs k >= 2 and d >= 0");
    return g > 6 * d * (k - 1);
}

bool existence_lemma_bound(std::int64_t l, std::int64_t k, std::int64_t u, std::int64_t s1, std::int64_t su,
                           std::int64_t a) {
    if (l < 1 || k < l - 1) throw InvalidInput("existence_lemma_bound needs l >= 1 and k >= l - 1");
    const std::int64_t c = (u + l - 1) / l;
    return a >= c * s1 + su;
}

}  // namespace scrollar
