#include "scrollar/report.hpp"

#include <numeric>

#include "scrollar/errors.hpp"

namespace scrollar {

json to_json(const NodeConfiguration& c) {
    if (c.is_general()) return {{"kind", "general"}, {"delta", c.delta}};
    return {{"kind", "sections"}, {"multiplicities", c.multiplicities}};
}

NodeConfiguration config_from_json(const json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "general") return NodeConfiguration::general(j.at("delta").get<std::int64_t>());
        if (kind == "sections")
            return NodeConfiguration::on_sections(j.at("multiplicities").get<std::vector<std::int64_t>>());
        throw InvalidInput("config kind must be \"general\" or \"sections\"");
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed config: ") + e.what());
    }
}

json to_json(const Instance& x) {
    return {{"m", x.m},         {"k", x.k},       {"a", x.a},          {"config", to_json(x.config)},
            {"prime", x.prime}, {"seed", x.seed}, {"trials", x.trials}};
}

Instance instance_from_json(const json& j) {
    try {
        Instance x;
        x.m = j.at("m").get<std::int64_t>();
        x.k = j.at("k").get<std::int64_t>();
        x.a = j.at("a").get<std::int64_t>();
        x.config = config_from_json(j.at("config"));
        if (j.contains("prime")) x.prime = j.at("prime").get<std::uint64_t>();
        if (j.contains("seed")) x.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("trials")) x.trials = j.at("trials").get<int>();
        return x;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed instance: ") + e.what());
    }
}

json to_json(const ConditionsReport& r) {
    return {{"h0_ambient", r.h0_ambient},
            {"conditions_imposed", r.conditions_imposed},
            {"h0_ideal", r.h0_ideal},
            {"method", to_string(r.method)}};
}

json to_json(const PolytopeReport& r) { return {{"member", r.member}, {"violated", r.violated}}; }

json to_json(const Feasibility& f) { return {{"i", f.i}, {"ii", f.ii}, {"iii", f.iii}}; }

json normalized_tuple(const ScrollarVector& e) {
    const std::int64_t total = std::accumulate(e.begin(), e.end(), std::int64_t{0});
    json out = json::array();
    for (auto v : e) {
        const std::int64_t g = std::gcd(v, total);
        out.push_back(std::to_string(v / g) + "/" + std::to_string(total / g));
    }
    return out;
}

json existence_flags(const CoverProblem& P, const ScrollarVector& e) {
    const auto flag = [](bool b) { return to_string(b ? Existence::Guaranteed : Existence::Unknown); };
    const auto& s = P.config.multiplicities;
    const std::int64_t k = P.k(), a = P.a();
    const auto u = static_cast<std::int64_t>(s.size());
    const std::int64_t s1 = s.empty() ? 0 : s.front();
    const std::int64_t su = s.empty() ? 0 : s.back();
    // The section-based bounds say nothing about general nodes unless there
    // are none at all.
    const bool sectioned = !P.config.is_general() || P.config.delta == 0;
    json j;
    j["final_thm"] = flag(sectioned && k >= 3 && existence_final_thm(k, u, s1, a));
    j["coro_p1"] = flag(P.m() == 0 && !e.empty() && existence_coro_p1(genus_of(P), e.back() - e.front(), k));
    j["lemma_bound"] = flag(sectioned && existence_lemma_bound(k + 1, k, u, s1, su, a));
    return j;
}

json bn_report(const CoverProblem& P, const ScrollarVector& e) {
    json j;
    const std::int64_t g = genus_of(P);
    j["polytope"] = to_json(polytope_membership(e, g));
    j["existence"] = existence_flags(P, e);
    if (!in_directrix_regime(P)) {
        j["input"] = nullptr;
        j["feasible"] = nullptr;
        j["dimension"] = nullptr;
        return j;
    }
    SplittingPair pair{trivial_splitting(e), directrix_splitting(P), P.m(), P.a()};
    const auto feas = lv_feasible(pair);
    j["input"] = {{"e", pair.e}, {"f", pair.f}, {"m", pair.m}, {"a", pair.a}};
    j["feasible"] = to_json(feas);
    if (feas.all()) {
        j["dimension"] = {{"value", lv_dimension(pair, g)},
                          {"status", P.config.total() > 0 ? "conjectural" : "exact"}};
    } else {
        j["dimension"] = nullptr;
    }
    return j;
}

}  // namespace scrollar
