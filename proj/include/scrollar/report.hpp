#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "scrollar/bn_split.hpp"
#include "scrollar/interpolation.hpp"
#include "scrollar/scrollar.hpp"

namespace scrollar {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// The replay format {m, k, a, config, prime, seed, trials}.
struct Instance {
    std::int64_t m = 0;
    std::int64_t k = 0;
    std::int64_t a = 0;
    NodeConfiguration config;
    std::uint64_t prime = kDefaultPrime;
    std::uint64_t seed = 0;
    int trials = 3;
};

json to_json(const NodeConfiguration& c);
NodeConfiguration config_from_json(const json& j);

json to_json(const Instance& x);
// Throws InvalidInput on missing or ill-typed fields.
Instance instance_from_json(const json& j);

json to_json(const ConditionsReport& r);
json to_json(const PolytopeReport& r);
json to_json(const Feasibility& f);

// Exact normalised tuple e / (g+k-1) as reduced "p/q" strings.
json normalized_tuple(const ScrollarVector& e);

// {input, feasible, dimension, polytope, existence} for the pair formed by
// the trivial and directrix splittings of P (null parts when out of regime).
json bn_report(const CoverProblem& P, const ScrollarVector& e);

// Existence flags as {final_thm, coro_p1, lemma_bound} strings.
json existence_flags(const CoverProblem& P, const ScrollarVector& e);

}  // namespace scrollar
