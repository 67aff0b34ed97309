#include "scrollar/interpolation.hpp"

#include <algorithm>
#include <numeric>

#include "scrollar/errors.hpp"

namespace scrollar {

NodeConfiguration NodeConfiguration::general(std::int64_t delta) {
    if (delta < 0) throw InvalidInput("number of general nodes must be non-negative");
    NodeConfiguration c;
    c.kind = Kind::GeneralPoints;
    c.delta = delta;
    return c;
}

NodeConfiguration NodeConfiguration::on_sections(std::vector<std::int64_t> s) {
    validate_multiplicities(s);
    NodeConfiguration c;
    c.kind = Kind::OnSections;
    c.multiplicities = std::move(s);
    return c;
}

std::int64_t NodeConfiguration::total() const {
    if (is_general()) return delta;
    return std::accumulate(multiplicities.begin(), multiplicities.end(), std::int64_t{0});
}

void validate_multiplicities(const std::vector<std::int64_t>& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] <= 0) throw InvalidInput("section multiplicities must be positive");
        if (s[i] > kCoordinateCap) throw InvalidInput("section multiplicity exceeds the cap");
        if (i > 0 && s[i] > s[i - 1]) throw InvalidInput("section multiplicities must be non-increasing");
    }
}

std::string to_string(Method m) {
    switch (m) {
        case Method::ClosedFormGeneral: return "closed_form_general";
        case Method::MinCut: return "mincut";
        case Method::SigmaRecursion: return "sigma";
        case Method::Oracle: return "oracle";
    }
    return "unknown";
}

namespace {

ConditionsReport make_report(std::int64_t ambient, std::int64_t imposed, Method method) {
    return {ambient, imposed, ambient - imposed, method};
}

std::int64_t sum(const std::vector<std::int64_t>& s) {
    return std::accumulate(s.begin(), s.end(), std::int64_t{0});
}

}  // namespace

ConditionsReport conditions_general_points(const DivisorClass& D, const Surface& S, std::int64_t delta) {
    if (delta < 0) throw InvalidInput("delta must be non-negative");
    const std::int64_t h0 = h0_line_bundle(D, S);
    return make_report(h0, std::min(delta, h0), Method::ClosedFormGeneral);
}

std::vector<std::int64_t> section_capacities(const DivisorClass& D, const Surface& S, std::size_t u) {
    std::vector<std::int64_t> caps(u, 0);
    for (std::size_t t = 1; t <= u; ++t) {
        const auto ti = static_cast<std::int64_t>(t);
        if (ti - 1 > D.k) break;
        caps[t - 1] = std::max<std::int64_t>((D.k - ti + 1) * S.m + D.a + 1, 0);
    }
    return caps;
}

std::vector<std::int64_t> capacity_slack(const DivisorClass& D, const Surface& S,
                                         const std::vector<std::int64_t>& s) {
    const auto caps = section_capacities(D, S, s.size());
    std::vector<std::int64_t> prefix(s.size());
    std::int64_t running = 0;
    for (std::size_t t = 0; t < s.size(); ++t) {
        running += caps[t] - s[t];
        prefix[t] = running;
    }
    return prefix;
}

ConditionsReport conditions_on_sections_mincut(const DivisorClass& D, const Surface& S,
                                               const std::vector<std::int64_t>& s) {
    validate_multiplicities(s);
    // Cut after t sections: the first t row blocks are bounded by their
    // columns, the rest by their row counts.
    std::int64_t best = sum(s);
    for (std::int64_t p : capacity_slack(D, S, s)) best = std::min(best, sum(s) + p);
    return make_report(h0_line_bundle(D, S), best, Method::MinCut);
}

std::vector<SigmaSegment> sigma_segments(const DivisorClass& D, const Surface& S,
                                         const std::vector<std::int64_t>& s) {
    validate_multiplicities(s);
    const auto caps = section_capacities(D, S, s.size());
    std::vector<SigmaSegment> out;
    std::size_t begin = 0;
    std::int64_t sigma = 0;
    for (std::size_t j = 1; j <= s.size(); ++j) {
        sigma += caps[j - 1] - s[j - 1];
        if (sigma < 0) {
            out.push_back({begin, j, sigma});
            begin = j;
            sigma = 0;
        }
    }
    return out;
}

ConditionsReport conditions_on_sections_sigma(const DivisorClass& D, const Surface& S,
                                              const std::vector<std::int64_t>& s) {
    std::int64_t deficit = 0;
    for (const auto& seg : sigma_segments(D, S, s)) deficit -= seg.sigma;
    return make_report(h0_line_bundle(D, S), sum(s) - deficit, Method::SigmaRecursion);
}

bool star_condition(const DivisorClass& D, const Surface& S, const std::vector<std::int64_t>& s) {
    std::int64_t lhs = 0, rhs = 0;
    for (std::size_t j = 1; j <= s.size(); ++j) {
        lhs += s[j - 1];
        // A section past index k+1 has no residual class left to move into.
        std::int64_t j64 = static_cast<std::int64_t>(j);
        if (j64 - 1 <= D.k) rhs += std::max<std::int64_t>((D.k - j64) * S.m + D.a + 1, 0);
        if (lhs > rhs) return false;
    }
    return true;
}

ConditionsReport conditions_closed_form(const DivisorClass& D, const Surface& S, const NodeConfiguration& c) {
    if (c.is_general()) return conditions_general_points(D, S, c.delta);
    return conditions_on_sections_mincut(D, S, c.multiplicities);
}

std::int64_t h0_ideal(const DivisorClass& D, const Surface& S, const NodeConfiguration& c) {
    return conditions_closed_form(D, S, c).h0_ideal;
}

namespace {

struct Column {
    std::int64_t u1_power;  // k - j
    std::int64_t t_power;
};

std::vector<Column> monomial_basis(const DivisorClass& D, const Surface& S) {
    std::vector<Column> cols;
    for (std::int64_t j = 0; j <= D.k; ++j) {
        const std::int64_t deg = j * S.m + D.a;
        for (std::int64_t p = 0; p <= deg; ++p) cols.push_back({D.k - j, p});
    }
    return cols;
}

void check_size(std::size_t rows, std::int64_t h0) {
    const auto cols = static_cast<std::size_t>(h0);
    if (rows > 0 && cols > 0 && rows > kMaxOracleEntries / cols)
        throw ResourceCap("oracle matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                          " exceeds " + std::to_string(kMaxOracleEntries) + " entries");
}

void fill_row(PrimeFieldMatrix& M, std::size_t row, const std::vector<Column>& basis, std::uint64_t t,
              std::uint64_t u1, std::int64_t k, std::int64_t max_deg, const PrimeField& F) {
    std::vector<std::uint64_t> tp(static_cast<std::size_t>(std::max<std::int64_t>(max_deg, 0) + 1));
    std::vector<std::uint64_t> up(static_cast<std::size_t>(k + 1));
    tp[0] = 1 % F.modulus();
    for (std::size_t i = 1; i < tp.size(); ++i) tp[i] = F.mul(tp[i - 1], t);
    up[0] = 1 % F.modulus();
    for (std::size_t i = 1; i < up.size(); ++i) up[i] = F.mul(up[i - 1], u1);
    for (std::size_t c = 0; c < basis.size(); ++c)
        M.at(row, c) = F.mul(tp[static_cast<std::size_t>(basis[c].t_power)],
                             up[static_cast<std::size_t>(basis[c].u1_power)]);
}

std::uint64_t eval_poly(const std::vector<std::uint64_t>& coeffs, std::uint64_t t, const PrimeField& F) {
    std::uint64_t acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = F.add(F.mul(acc, t), *it);
    return acc;
}

}  // namespace

PrimeFieldMatrix build_evaluation_matrix(const DivisorClass& D, const Surface& S,
                                         const std::vector<std::int64_t>& s, const PrimeField& F,
                                         SeededRng& rng) {
    validate_multiplicities(s);
    const std::int64_t total = sum(s);
    const std::int64_t h0 = h0_line_bundle(D, S);
    if (static_cast<std::uint64_t>(total) >= F.modulus())
        throw InvalidInput("more points than field elements");
    check_size(static_cast<std::size_t>(total), h0);
    const auto basis = D.k >= 0 ? monomial_basis(D, S) : std::vector<Column>{};
    PrimeFieldMatrix M(static_cast<std::size_t>(total), basis.size());
    if (basis.empty() || total == 0) return M;

    // Section i is u1 = h_i(t), deg h_i = m, leading coefficients distinct.
    const auto leading = sample_distinct(rng, s.size(), F);
    std::vector<std::vector<std::uint64_t>> sections(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto& h = sections[i];
        h.resize(static_cast<std::size_t>(S.m) + 1);
        for (std::int64_t c = 0; c < S.m; ++c) h[static_cast<std::size_t>(c)] = rng.below(F.modulus());
        h[static_cast<std::size_t>(S.m)] = leading[i];
    }
    const auto params = sample_distinct(rng, static_cast<std::size_t>(total), F);
    const std::int64_t max_deg = D.k * S.m + D.a;
    std::size_t row = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::int64_t q = 0; q < s[i]; ++q, ++row) {
            const std::uint64_t t = params[row];
            fill_row(M, row, basis, t, eval_poly(sections[i], t, F), D.k, max_deg, F);
        }
    }
    return M;
}

PrimeFieldMatrix build_general_matrix(const DivisorClass& D, const Surface& S, std::int64_t delta,
                                      const PrimeField& F, SeededRng& rng) {
    if (delta < 0) throw InvalidInput("delta must be non-negative");
    const std::int64_t h0 = h0_line_bundle(D, S);
    check_size(static_cast<std::size_t>(delta), h0);
    const auto basis = D.k >= 0 ? monomial_basis(D, S) : std::vector<Column>{};
    PrimeFieldMatrix M(static_cast<std::size_t>(delta), basis.size());
    if (basis.empty()) return M;
    const std::int64_t max_deg = D.k * S.m + D.a;
    for (std::size_t row = 0; row < M.rows; ++row) {
        const std::uint64_t t = rng.below(F.modulus());
        const std::uint64_t u1 = rng.below(F.modulus());
        fill_row(M, row, basis, t, u1, D.k, max_deg, F);
    }
    return M;
}

ConditionsReport oracle_conditions(const DivisorClass& D, const Surface& S, const NodeConfiguration& c,
                                   const PrimeField& F, std::uint64_t base_seed, int trials) {
    if (trials < 1) throw InvalidInput("oracle needs at least one trial");
    const std::int64_t h0 = h0_line_bundle(D, S);
    const std::int64_t ceiling = std::min(h0, c.total());
    std::int64_t best = 0;
    for (int i = 0; i < trials && best < ceiling; ++i) {
        SeededRng rng(derive_seed(base_seed, static_cast<std::uint64_t>(i)));
        const PrimeFieldMatrix M = c.is_general() ? build_general_matrix(D, S, c.delta, F, rng)
                                                  : build_evaluation_matrix(D, S, c.multiplicities, F, rng);
        best = std::max(best, static_cast<std::int64_t>(rank(M, F)));
    }
    return make_report(h0, best, Method::Oracle);
}

}  // namespace scrollar
