#include "scrollar/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

#include "scrollar/errors.hpp"
#include "scrollar/worker_pool.hpp"

namespace scrollar {

namespace {

// Scans whose f-table would exceed this many ideal evaluations are refused.
constexpr std::int64_t kMaxScanWork = 50'000'000;

json input_json(const Instance& x) { return {{"m", x.m}, {"k", x.k}, {"a", x.a}, {"config", to_json(x.config)}}; }

Instance resolve_instance(const RunSpec& spec) {
    Instance x;
    if (spec.instance_path) {
        std::ifstream in(*spec.instance_path);
        if (!in) throw InvalidInput("cannot open instance file " + *spec.instance_path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw InvalidInput(std::string("instance file is not valid JSON: ") + e.what());
        }
        x = instance_from_json(j);
        if (spec.prime_set) x.prime = spec.prime;
        if (spec.seed_set) x.seed = spec.seed;
        if (spec.trials_set) x.trials = spec.trials;
        return x;
    }
    if (!spec.m || !spec.divisor) throw InvalidInput("an instance needs --m and --class (or --instance)");
    x.m = *spec.m;
    x.k = spec.divisor->first;
    x.a = spec.divisor->second;
    if (spec.sections && spec.general_nodes) throw InvalidInput("--sections and --general-nodes are exclusive");
    if (spec.sections)
        x.config = NodeConfiguration::on_sections(*spec.sections);
    else
        x.config = NodeConfiguration::general(spec.general_nodes.value_or(0));
    x.prime = spec.prime;
    x.seed = spec.seed;
    x.trials = spec.trials;
    return x;
}

void check_method(const std::string& method, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (method == a) return;
    throw InvalidInput("unsupported --method '" + method + "' for this command");
}

void check_trials(int trials) {
    if (trials < 1) throw InvalidInput("--trials must be at least 1");
}

void check_scan_size(const CoverProblem& P) {
    const std::int64_t bound = scan_bound(P);
    if (bound > kMaxScanWork / std::max<std::int64_t>(P.config.sections() + 1, 1))
        throw ResourceCap("scan over " + std::to_string(bound) + " twists exceeds the work cap");
}

// Oracle-backed h^0 of the ideal, memoised per class. The seed of each
// class is derived from the instance seed so results do not depend on the
// evaluation order.
IdealDimension oracle_dimension(const CoverProblem& P, const PrimeField& F, std::uint64_t seed, int trials) {
    auto memo = std::make_shared<std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t>>();
    auto mutex = std::make_shared<std::mutex>();
    return [memo, mutex, S = P.S, c = P.config, F, seed, trials](const DivisorClass& D) {
        const auto key = std::make_pair(D.k, D.a);
        {
            std::lock_guard<std::mutex> lock(*mutex);
            if (auto it = memo->find(key); it != memo->end()) return it->second;
        }
        const std::uint64_t class_seed =
            derive_seed(derive_seed(seed, static_cast<std::uint64_t>(D.k) + 0x100000ULL),
                        static_cast<std::uint64_t>(D.a) + 0x10000000000ULL);
        const std::int64_t v = oracle_conditions(D, S, c, F, class_seed, trials).h0_ideal;
        std::lock_guard<std::mutex> lock(*mutex);
        memo->emplace(key, v);
        return v;
    };
}

std::uint64_t oracle_scan_seed(std::uint64_t seed) { return derive_seed(seed, 0x5CA9ULL); }

}  // namespace

CommandResult cmd_invariants(const RunSpec& spec) {
    const Instance x = resolve_instance(spec);
    const std::string method = spec.method.empty() ? "scan" : spec.method;
    check_method(method, {"scan", "closed", "oracle", "all"});
    check_trials(x.trials);
    const PrimeField F(x.prime);
    const CoverProblem P(Surface(x.m), {x.k, x.a}, x.config);
    check_scan_size(P);

    json r;
    r["schema"] = kSchemaVersion;
    r["command"] = "invariants";
    r["input"] = input_json(x);
    r["prime"] = x.prime;
    r["seed"] = x.seed;
    r["trials"] = x.trials;
    r["genus"] = genus_of(P);
    r["nodes"] = x.config.total();

    json methods = json::object();
    std::vector<std::pair<std::string, ScrollarVector>> found;
    json warnings = json::array();
    if (method == "scan" || method == "all") {
        auto scan = scrollar_scan_table(P, closed_form_dimension(P));
        r["f_table"] = scan.f_table;
        found.emplace_back("scan", scan.e);
    }
    if (method == "closed" || method == "all") {
        if (P.config.is_general()) {
            for (auto& w : generic_hypothesis_warnings(P.S, P.D, P.config.delta)) warnings.push_back(w);
            found.emplace_back("closed", scrollar_generic_closed_form(P.S, P.D, P.config.delta));
        } else {
            const auto cf = scrollar_sections_closed_form(P);
            json trace = json::array();
            for (const auto& st : cf.trace)
                trace.push_back(
                    {{"n", st.n}, {"r", st.r}, {"delta", st.delta}, {"istar", st.istar}, {"extra", st.extra}});
            r["trace"] = trace;
            found.emplace_back("closed", cf.e);
            if (coppens_violations(P).empty()) found.emplace_back("coppens", scrollar_coppens(P));
        }
    }
    if (method == "oracle" || method == "all") {
        const auto dim = oracle_dimension(P, F, oracle_scan_seed(x.seed), x.trials);
        found.emplace_back("oracle", scrollar_scan_table(P, dim).e);
    }

    bool agree = true;
    for (auto& [name, e] : found) {
        methods[name] = e;
        if (e != found.front().second) agree = false;
    }
    const ScrollarVector& e = found.front().second;
    check_scrollar_vector(P, e);

    r["method"] = found.front().first;
    r["methods"] = methods;
    r["agree"] = agree;
    r["scrollar"] = e;
    r["warnings"] = warnings;
    r["balanced"] = is_balanced(e);
    r["normalized"] = normalized_tuple(e);
    r["polytope"] = to_json(polytope_membership(e, genus_of(P)));
    const bool regime = in_directrix_regime(P);
    r["directrix_regime"] = regime;
    r["splitting_delta"] = regime ? json(directrix_splitting(P)) : json(nullptr);
    r["bn"] = bn_report(P, e);
    return {r, agree ? kExitOk : kExitDisagree};
}

CommandResult cmd_conditions(const RunSpec& spec) {
    const Instance x = resolve_instance(spec);
    const std::string method = spec.method.empty() ? "all" : spec.method;
    check_method(method, {"closed", "oracle", "all"});
    check_trials(x.trials);
    const PrimeField F(x.prime);
    const Surface S(x.m);
    const DivisorClass D{x.k, x.a};
    check_caps(D);

    json r;
    r["schema"] = kSchemaVersion;
    r["command"] = "conditions";
    r["input"] = input_json(x);
    r["prime"] = x.prime;
    r["seed"] = x.seed;
    r["trials"] = x.trials;
    r["h0_ambient"] = h0_line_bundle(D, S);

    json results = json::object();
    std::vector<std::int64_t> values;
    auto add = [&](const std::string& name, const ConditionsReport& rep) {
        results[name] = to_json(rep);
        values.push_back(rep.conditions_imposed);
    };
    if (method == "closed" || method == "all") {
        if (x.config.is_general()) {
            add("general", conditions_general_points(D, S, x.config.delta));
        } else {
            add("mincut", conditions_on_sections_mincut(D, S, x.config.multiplicities));
            add("sigma", conditions_on_sections_sigma(D, S, x.config.multiplicities));
            r["star_condition"] = star_condition(D, S, x.config.multiplicities);
        }
    }
    if (method == "oracle" || method == "all") add("oracle", oracle_conditions(D, S, x.config, F, x.seed, x.trials));

    bool agree = true;
    for (auto v : values) agree = agree && v == values.front();
    r["results"] = results;
    r["agree"] = agree;
    if (!agree) r["replay"] = to_json(x);
    return {r, agree ? kExitOk : kExitDisagree};
}

std::vector<Instance> sample_verify_grid(const VerifyGrid& grid, std::uint64_t seed, std::uint64_t prime,
                                         int trials) {
    if (grid.m_max < 0 || grid.k_max < 0 || grid.a_max < 0 || grid.u_max < 0 || grid.s_max < 1 || grid.count < 0)
        throw InvalidInput("verify grid bounds must be non-negative (and s_max >= 1)");
    SeededRng rng(seed);
    auto pick = [&](std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
    };
    std::vector<Instance> out;
    const std::int64_t max_attempts = 1000 * std::max<std::int64_t>(grid.count, 1);
    for (std::int64_t attempt = 0; static_cast<std::int64_t>(out.size()) < grid.count; ++attempt) {
        if (attempt >= max_attempts) throw InvalidInput("verify grid admits too few instances under --max-points");
        Instance x;
        x.m = pick(0, grid.m_max);
        x.k = pick(0, grid.k_max);
        x.a = pick(-grid.a_max, grid.a_max);
        std::vector<std::int64_t> s(static_cast<std::size_t>(pick(0, grid.u_max)));
        for (auto& v : s) v = pick(1, grid.s_max);
        std::sort(s.rbegin(), s.rend());
        x.config = NodeConfiguration::on_sections(std::move(s));
        if (x.config.total() > grid.max_points) continue;
        x.prime = prime;
        x.trials = trials;
        x.seed = derive_seed(seed, out.size());
        out.push_back(std::move(x));
    }
    return out;
}

json verify_instance(const Instance& x, bool with_oracle_scan, bool corrupt_closed_form) {
    const PrimeField F(x.prime);
    const Surface S(x.m);
    const DivisorClass D{x.k, x.a};
    json entry;
    entry["input"] = input_json(x);

    json cond;
    std::vector<std::int64_t> values;
    auto add = [&](const std::string& name, std::int64_t v) {
        cond[name] = v;
        values.push_back(v);
    };
    const std::int64_t bump = corrupt_closed_form ? 1 : 0;
    if (x.config.is_general()) {
        add("general", conditions_general_points(D, S, x.config.delta).conditions_imposed + bump);
    } else {
        add("mincut", conditions_on_sections_mincut(D, S, x.config.multiplicities).conditions_imposed + bump);
        add("sigma", conditions_on_sections_sigma(D, S, x.config.multiplicities).conditions_imposed);
    }
    add("oracle", oracle_conditions(D, S, x.config, F, x.seed, x.trials).conditions_imposed);
    bool agree = true;
    for (auto v : values) agree = agree && v == values.front();
    cond["h0_ambient"] = h0_line_bundle(D, S);
    cond["agree"] = agree;
    entry["conditions"] = cond;

    const auto why = cover_problem_violations(S, D, x.config);
    if (why.empty()) {
        const CoverProblem P(S, D, x.config);
        json sc;
        std::vector<ScrollarVector> seen;
        auto put = [&](const std::string& name, ScrollarVector e) {
            sc[name] = e;
            seen.push_back(std::move(e));
        };
        put("scan", scrollar_scan(P));
        if (P.config.is_general()) {
            put("closed", scrollar_generic_closed_form(S, D, P.config.delta));
        } else {
            put("closed", scrollar_sections_closed_form(P).e);
            if (coppens_violations(P).empty()) put("coppens", scrollar_coppens(P));
        }
        if (with_oracle_scan)
            put("oracle", scrollar_scan_table(P, oracle_dimension(P, F, oracle_scan_seed(x.seed), x.trials)).e);
        bool same = true;
        for (const auto& e : seen) same = same && e == seen.front();
        sc["agree"] = same;
        entry["scrollar"] = sc;
        agree = agree && same;
    } else {
        entry["scrollar"] = nullptr;
    }
    entry["agree"] = agree;
    if (!agree) entry["replay"] = to_json(x);
    return entry;
}

CommandResult cmd_verify(const RunSpec& spec) {
    const std::string method = spec.method.empty() ? "closed" : spec.method;
    check_method(method, {"scan", "closed", "oracle", "all"});
    check_trials(spec.trials);
    std::vector<Instance> instances;
    if (spec.grid) {
        if (spec.instance_path || spec.m || spec.divisor)
            throw InvalidInput("--grid cannot be combined with a single instance");
        (void)PrimeField(spec.prime);  // reject a composite modulus up front
        instances = sample_verify_grid(*spec.grid, spec.seed, spec.prime, spec.trials);
    } else {
        instances.push_back(resolve_instance(spec));
    }
    const bool with_oracle_scan = method == "oracle" || method == "all";
    auto entries = parallel_map(
        instances.size(),
        [&](std::size_t i) { return verify_instance(instances[i], with_oracle_scan, spec.corrupt_closed_form); },
        spec.threads);

    json list = json::array();
    std::int64_t agree = 0, covers = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        entries[i]["index"] = i;
        agree += entries[i]["agree"].get<bool>() ? 1 : 0;
        covers += entries[i]["scrollar"].is_null() ? 0 : 1;
        list.push_back(std::move(entries[i]));
    }
    json r;
    r["schema"] = kSchemaVersion;
    r["command"] = "verify";
    r["prime"] = spec.grid ? spec.prime : instances.front().prime;
    r["seed"] = spec.grid ? spec.seed : instances.front().seed;
    r["trials"] = spec.grid ? spec.trials : instances.front().trials;
    r["method"] = method;
    if (spec.grid) {
        const auto& g = *spec.grid;
        r["grid"] = {{"m_max", g.m_max}, {"k_max", g.k_max},   {"a_max", g.a_max},          {"u_max", g.u_max},
                     {"s_max", g.s_max}, {"count", g.count}, {"max_points", g.max_points}};
    }
    r["instances"] = list;
    const auto n = static_cast<std::int64_t>(instances.size());
    r["summary"] = {{"count", n}, {"agree", agree}, {"disagree", n - agree}, {"covers", covers}};
    return {r, agree == n ? kExitOk : kExitDisagree};
}

namespace {

std::vector<std::vector<std::int64_t>> nonincreasing_sequences(std::int64_t u_max, std::int64_t s_max) {
    std::vector<std::vector<std::int64_t>> out{{}};
    std::vector<std::int64_t> cur;
    // Depth-first in lexicographic order of (length, entries).
    auto rec = [&](auto&& self, std::int64_t len, std::int64_t cap) -> void {
        if (static_cast<std::int64_t>(cur.size()) == len) {
            out.push_back(cur);
            return;
        }
        for (std::int64_t v = 1; v <= cap; ++v) {
            cur.push_back(v);
            self(self, len, v);
            cur.pop_back();
        }
    };
    for (std::int64_t len = 1; len <= u_max; ++len) rec(rec, len, s_max);
    for (auto& s : out) std::sort(s.rbegin(), s.rend());
    return out;
}

long double count_sequences(std::int64_t u_max, std::int64_t s_max) {
    // sum_{L=0..U} C(S+L-1, L)
    long double total = 0, term = 1;
    for (std::int64_t L = 0; L <= u_max; ++L) {
        if (L > 0) term = term * static_cast<long double>(s_max + L - 1) / static_cast<long double>(L);
        total += term;
    }
    return total;
}

std::int64_t range_size(const Range& r) { return r.second < r.first ? 0 : r.second - r.first + 1; }

}  // namespace

CommandResult cmd_scan(const RunSpec& spec) {
    Range mr, kr, ar;
    if (spec.m_range)
        mr = *spec.m_range;
    else if (spec.m)
        mr = {*spec.m, *spec.m};
    else
        throw InvalidInput("scan needs --m or --m-range");
    if (spec.k_range)
        kr = *spec.k_range;
    else if (spec.divisor)
        kr = {spec.divisor->first, spec.divisor->first};
    else
        throw InvalidInput("scan needs --class or --k-range");
    if (spec.a_range)
        ar = *spec.a_range;
    else if (spec.divisor)
        ar = {spec.divisor->second, spec.divisor->second};
    else
        throw InvalidInput("scan needs --class or --a-range");
    if (mr.first < 0) throw InvalidInput("m must be non-negative");

    const int kinds = (spec.delta_range ? 1 : 0) + (spec.sections_grid ? 1 : 0) + (spec.sections ? 1 : 0) +
                      (spec.general_nodes ? 1 : 0);
    if (kinds > 1) throw InvalidInput("choose one of --delta-range, --sections-grid, --sections, --general-nodes");

    long double configs = 1;
    if (spec.delta_range) configs = static_cast<long double>(range_size(*spec.delta_range));
    if (spec.sections_grid) {
        if (spec.sections_grid->first < 0 || spec.sections_grid->second < 1)
            throw InvalidInput("--sections-grid needs U >= 0 and S >= 1");
        configs = count_sequences(spec.sections_grid->first, spec.sections_grid->second);
    }
    const long double estimate = static_cast<long double>(range_size(mr)) * range_size(kr) * range_size(ar) * configs;
    if (estimate > static_cast<long double>(spec.max_grid)) {
        std::ostringstream msg;
        msg << "grid has about " << std::llround(static_cast<double>(estimate)) << " instances, above --max-grid "
            << spec.max_grid;
        throw ResourceCap(msg.str());
    }

    std::vector<NodeConfiguration> cfgs;
    if (spec.delta_range) {
        if (spec.delta_range->first < 0 && range_size(*spec.delta_range) > 0)
            throw InvalidInput("delta range must be non-negative");
        for (std::int64_t d = spec.delta_range->first; d <= spec.delta_range->second; ++d)
            cfgs.push_back(NodeConfiguration::general(d));
    } else if (spec.sections_grid) {
        for (auto& s : nonincreasing_sequences(spec.sections_grid->first, spec.sections_grid->second))
            cfgs.push_back(NodeConfiguration::on_sections(s));
    } else if (spec.sections) {
        cfgs.push_back(NodeConfiguration::on_sections(*spec.sections));
    } else {
        cfgs.push_back(NodeConfiguration::general(spec.general_nodes.value_or(0)));
    }

    std::vector<Instance> grid;
    for (std::int64_t m = mr.first; m <= mr.second; ++m)
        for (std::int64_t k = kr.first; k <= kr.second; ++k)
            for (std::int64_t a = ar.first; a <= ar.second; ++a)
                for (const auto& c : cfgs) {
                    Instance x;
                    x.m = m;
                    x.k = k;
                    x.a = a;
                    x.config = c;
                    grid.push_back(std::move(x));
                }

    auto rows = parallel_map(
        grid.size(),
        [&](std::size_t i) -> json {
            const Instance& x = grid[i];
            const Surface S(x.m);
            const DivisorClass D{x.k, x.a};
            const auto why = cover_problem_violations(S, D, x.config);
            if (!why.empty()) return nullptr;
            const CoverProblem P(S, D, x.config);
            check_scan_size(P);
            const auto e = scrollar_scan(P);
            json row;
            row["input"] = input_json(x);
            row["genus"] = genus_of(P);
            row["scrollar"] = e;
            row["normalized"] = normalized_tuple(e);
            const auto poly = polytope_membership(e, genus_of(P));
            row["member"] = poly.member;
            row["violated"] = poly.violated;
            row["balanced"] = is_balanced(e);
            row["existence"] = existence_flags(P, e);
            return row;
        },
        spec.threads);

    json list = json::array();
    json distinct = json::array();
    std::map<std::string, std::size_t> where;
    std::int64_t skipped = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].is_null()) {
            ++skipped;
            continue;
        }
        rows[i]["index"] = i;
        const std::string key = rows[i]["normalized"].dump();
        if (auto it = where.find(key); it != where.end()) {
            distinct[it->second]["count"] = distinct[it->second]["count"].get<std::int64_t>() + 1;
        } else {
            where.emplace(key, distinct.size());
            distinct.push_back({{"normalized", rows[i]["normalized"]},
                                {"first_index", i},
                                {"count", 1},
                                {"member", rows[i]["member"]}});
        }
        list.push_back(std::move(rows[i]));
    }
    json r;
    r["schema"] = kSchemaVersion;
    r["command"] = "scan";
    r["prime"] = spec.prime;
    r["seed"] = spec.seed;
    r["size_estimate"] = static_cast<std::int64_t>(grid.size());
    r["rows"] = list;
    r["skipped"] = skipped;
    r["distinct"] = distinct;
    return {r, kExitOk};
}

namespace {

std::string join_ints(const json& v) {
    std::string s;
    for (const auto& x : v) {
        if (!s.empty()) s += ';';
        s += x.is_string() ? x.get<std::string>() : x.dump();
    }
    return s;
}

std::string config_cell(const json& c) {
    if (c.at("kind") == "general") return "general:" + c.at("delta").dump();
    return "sections:" + join_ints(c.at("multiplicities"));
}

std::string input_cells(const json& in) {
    return in.at("m").dump() + "," + in.at("k").dump() + "," + in.at("a").dump() + "," + config_cell(in.at("config"));
}

std::string cell(const json& j) {
    if (j.is_null()) return "";
    if (j.is_array()) return join_ints(j);
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

}  // namespace

std::string render(const std::string& command, const json& report, const std::string& format) {
    if (format == "json") return report.dump(2) + "\n";
    if (format != "csv") throw InvalidInput("--format must be json or csv");
    std::ostringstream out;
    if (command == "invariants") {
        out << "m,k,a,config,genus,scrollar,method,agree,balanced,member,splitting_delta\n";
        out << input_cells(report.at("input")) << ',' << cell(report.at("genus")) << ','
            << cell(report.at("scrollar")) << ',' << cell(report.at("method")) << ',' << cell(report.at("agree"))
            << ',' << cell(report.at("balanced")) << ',' << cell(report.at("polytope").at("member")) << ','
            << cell(report.at("splitting_delta")) << '\n';
    } else if (command == "conditions") {
        out << "m,k,a,config,method,h0_ambient,conditions_imposed,h0_ideal\n";
        for (const auto& [name, rep] : report.at("results").items())
            out << input_cells(report.at("input")) << ',' << name << ',' << cell(rep.at("h0_ambient")) << ','
                << cell(rep.at("conditions_imposed")) << ',' << cell(rep.at("h0_ideal")) << '\n';
    } else if (command == "verify") {
        out << "index,m,k,a,config,conditions_agree,scrollar_agree,agree\n";
        for (const auto& e : report.at("instances"))
            out << cell(e.at("index")) << ',' << input_cells(e.at("input")) << ','
                << cell(e.at("conditions").at("agree")) << ','
                << (e.at("scrollar").is_null() ? std::string() : cell(e.at("scrollar").at("agree"))) << ','
                << cell(e.at("agree")) << '\n';
    } else if (command == "scan") {
        out << "index,m,k,a,config,genus,scrollar,normalized,member,balanced,final_thm,coro_p1,lemma_bound\n";
        for (const auto& row : report.at("rows")) {
            const auto& ex = row.at("existence");
            out << cell(row.at("index")) << ',' << input_cells(row.at("input")) << ',' << cell(row.at("genus")) << ','
                << cell(row.at("scrollar")) << ',' << cell(row.at("normalized")) << ',' << cell(row.at("member"))
                << ',' << cell(row.at("balanced")) << ',' << cell(ex.at("final_thm")) << ','
                << cell(ex.at("coro_p1")) << ',' << cell(ex.at("lemma_bound")) << '\n';
        }
    } else {
        throw InvalidInput("unknown command " + command);
    }
    return out.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw InvalidInput("cannot parse " + what + " from '" + s + "'");
    }
    if (used != s.size()) throw InvalidInput("cannot parse " + what + " from '" + s + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidInput("cannot parse " + what + " from '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw InvalidInput(what + " out of range: '" + s + "'");
    }
}

std::vector<std::int64_t> parse_list(const std::string& s, const std::string& what) {
    std::vector<std::int64_t> out;
    if (s.empty()) return out;
    for (const auto& p : split(s, ',')) out.push_back(parse_int(p, what));
    return out;
}

Range parse_range(const std::string& s, const std::string& what) {
    const auto parts = split(s, ':');
    if (parts.size() == 1) {
        const auto v = parse_int(parts[0], what);
        return {v, v};
    }
    if (parts.size() != 2) throw InvalidInput(what + " must be lo:hi");
    return {parse_int(parts[0], what), parse_int(parts[1], what)};
}

struct RawOptions {
    std::string m, divisor, sections, general, instance, method, prime, seed, trials, format = "json", out;
    std::string grid, count, max_points, m_range, k_range, a_range, delta_range, sections_grid, max_grid;
    unsigned threads = 0;
    bool corrupt = false;
};

void add_instance_options(CLI::App* sub, RawOptions& o) {
    sub->add_option("--m", o.m, "Hirzebruch index m >= 0");
    sub->add_option("--class", o.divisor, "divisor class as k,a");
    auto* sec = sub->add_option("--sections", o.sections, "non-increasing multiplicities s1,s2,...");
    auto* gen = sub->add_option("--general-nodes", o.general, "number of general nodes");
    sec->excludes(gen);
    sub->add_option("--method", o.method, "scan|closed|oracle|all");
    sub->add_option("--prime", o.prime, "prime modulus for the oracle");
    sub->add_option("--seed", o.seed, "base seed (default: $SCROLLAR_SEED or 1)");
    sub->add_option("--trials", o.trials, "oracle trials (maximum rank is kept)");
    sub->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out, "write the report to PATH");
    sub->add_option("--threads", o.threads, "worker threads (0: hardware)");
}

RunSpec to_spec(const std::string& command, const RawOptions& o) {
    RunSpec spec;
    spec.command = command;
    if (!o.m.empty()) spec.m = parse_int(o.m, "--m");
    if (!o.divisor.empty()) {
        const auto v = parse_list(o.divisor, "--class");
        if (v.size() != 2) throw InvalidInput("--class expects k,a");
        spec.divisor = std::make_pair(v[0], v[1]);
    }
    if (!o.general.empty()) spec.general_nodes = parse_int(o.general, "--general-nodes");
    if (!o.instance.empty()) spec.instance_path = o.instance;
    spec.method = o.method;
    if (!o.prime.empty()) {
        spec.prime = parse_uint(o.prime, "--prime");
        spec.prime_set = true;
    }
    if (!o.trials.empty()) {
        spec.trials = static_cast<int>(parse_int(o.trials, "--trials"));
        spec.trials_set = true;
    }
    spec.format = o.format;
    spec.out = o.out;
    spec.threads = o.threads;
    spec.corrupt_closed_form = o.corrupt;
    if (!o.grid.empty()) {
        const auto v = parse_list(o.grid, "--grid");
        if (v.size() != 5) throw InvalidInput("--grid expects M,K,A,U,S");
        VerifyGrid g;
        g.m_max = v[0];
        g.k_max = v[1];
        g.a_max = v[2];
        g.u_max = v[3];
        g.s_max = v[4];
        if (!o.count.empty()) g.count = parse_int(o.count, "--count");
        if (!o.max_points.empty()) g.max_points = parse_int(o.max_points, "--max-points");
        spec.grid = g;
    }
    if (!o.m_range.empty()) spec.m_range = parse_range(o.m_range, "--m-range");
    if (!o.k_range.empty()) spec.k_range = parse_range(o.k_range, "--k-range");
    if (!o.a_range.empty()) spec.a_range = parse_range(o.a_range, "--a-range");
    if (!o.delta_range.empty()) spec.delta_range = parse_range(o.delta_range, "--delta-range");
    if (!o.sections_grid.empty()) {
        const auto v = parse_list(o.sections_grid, "--sections-grid");
        if (v.size() != 2) throw InvalidInput("--sections-grid expects U,S");
        spec.sections_grid = std::make_pair(v[0], v[1]);
    }
    if (!o.max_grid.empty()) spec.max_grid = parse_int(o.max_grid, "--max-grid");
    return spec;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scrollar invariants of nodal curves on Hirzebruch surfaces"};
    app.require_subcommand(1);
    RawOptions o;

    auto* inv = app.add_subcommand("invariants", "scrollar invariants of one instance");
    add_instance_options(inv, o);
    auto* cond = app.add_subcommand("conditions", "conditions imposed by a node configuration on |O(k,a)|");
    add_instance_options(cond, o);
    cond->add_option("--instance", o.instance, "replay JSON {m,k,a,config,prime,seed,trials}");
    auto* ver = app.add_subcommand("verify", "closed forms against the rank oracle");
    add_instance_options(ver, o);
    ver->add_option("--instance", o.instance, "replay JSON {m,k,a,config,prime,seed,trials}");
    ver->add_option("--grid", o.grid, "random grid M,K,A,U,S");
    ver->add_option("--count", o.count, "grid instances (default 200)");
    ver->add_option("--max-points", o.max_points, "cap on nodes per grid instance (default 60)");
    ver->add_flag("--corrupt-closed-form", o.corrupt, "harness self-test: perturb the closed form")->group("");
    auto* scn = app.add_subcommand("scan", "parameter scan of normalised invariants");
    add_instance_options(scn, o);
    scn->add_option("--m-range", o.m_range, "lo:hi");
    scn->add_option("--k-range", o.k_range, "lo:hi");
    scn->add_option("--a-range", o.a_range, "lo:hi");
    scn->add_option("--delta-range", o.delta_range, "general nodes lo:hi");
    scn->add_option("--sections-grid", o.sections_grid, "all sequences with at most U sections, entries <= S");
    scn->add_option("--max-grid", o.max_grid, "refuse grids larger than this (default 100000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    try {
        RunSpec spec = to_spec(command, o);
        // Presence matters here: an empty --sections value means u = 0.
        if (sub->count("--sections") > 0) spec.sections = parse_list(o.sections, "--sections");
        if (!o.seed.empty()) {
            spec.seed = parse_uint(o.seed, "--seed");
            spec.seed_set = true;
        } else if (const char* env = std::getenv("SCROLLAR_SEED"); env && *env) {
            spec.seed = parse_uint(env, "SCROLLAR_SEED");
        }

        CommandResult res;
        if (command == "invariants")
            res = cmd_invariants(spec);
        else if (command == "conditions")
            res = cmd_conditions(spec);
        else if (command == "verify")
            res = cmd_verify(spec);
        else
            res = cmd_scan(spec);

        const std::string text = render(command, res.report, spec.format);
        if (spec.out.empty()) {
            out << text;
        } else {
            std::ofstream f(spec.out, std::ios::binary);
            if (!f) throw InvalidInput("cannot write " + spec.out);
            f << text;
        }
        if (res.exit_code == kExitDisagree) err << "error: disagreement between methods\n";
        return res.exit_code;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const ResourceCap& e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const Inconsistency& e) {
        err << "error: " << e.what() << "\n";
        return kExitDisagree;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace scrollar
