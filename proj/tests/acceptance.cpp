// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "scrollar/bn_split.hpp"
#include "scrollar/commands.hpp"
#include "scrollar/errors.hpp"
#include "scrollar/interpolation.hpp"
#include "scrollar/scrollar.hpp"
#include "test_support.hpp"

using namespace scrollar;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Collects the first few failures and a running count for the summary line.
class Tally {
public:
    void check(bool cond, const std::string& what) {
        ++checks_;
        if (cond) return;
        ++failures_;
        if (failures_ <= 3) first_ << (failures_ > 1 ? "; " : "") << what;
    }
    Outcome outcome(const std::string& summary) const {
        std::ostringstream o;
        o << summary << ", " << checks_ << " checks";
        if (failures_ > 0) o << ", " << failures_ << " failures: " << first_.str();
        return {failures_ == 0, o.str()};
    }

private:
    std::int64_t checks_ = 0, failures_ = 0;
    std::ostringstream first_;
};

std::string show(const std::vector<std::int64_t>& v) {
    std::ostringstream o;
    o << "(";
    for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
    o << ")";
    return o.str();
}

std::string show(const CoverProblem& P) {
    std::ostringstream o;
    o << "m=" << P.m() << " (" << P.k() << "," << P.a() << ") ";
    if (P.config.is_general())
        o << "delta=" << P.config.delta;
    else
        o << "s=" << show(P.config.multiplicities);
    return o.str();
}

// Every vector produced anywhere in the run, with its genus, for the polytope sweep.
std::vector<std::pair<ScrollarVector, std::int64_t>> produced;

void record(const CoverProblem& P, const ScrollarVector& e) { produced.emplace_back(e, genus_of(P)); }

RunSpec sweep_spec() {
    RunSpec spec;
    spec.command = "verify";
    spec.grid = VerifyGrid{3, 7, 8, 5, 10, 1000, 60};
    spec.prime = kDefaultPrime;
    spec.seed = 20240601;
    spec.trials = 3;
    return spec;
}

Outcome goldens() {
    Tally t;
    struct General {
        std::int64_t m, k, a, delta;
        ScrollarVector e;
    };
    const General general[] = {
        {1, 6, 0, 2, {1, 2, 3, 3, 4}},
        {1, 5, 1, 2, {2, 3, 3, 4}},
        {1, 4, 2, 1, {3, 4, 4}},
        {4, 9, 4, 54, {8, 12, 16, 17, 17, 17, 17, 18}},
    };
    for (const auto& x : general) {
        const CoverProblem P(Surface(x.m), {x.k, x.a}, NodeConfiguration::general(x.delta));
        const auto scan = scrollar_scan(P);
        const auto closed = scrollar_generic_closed_form(P.S, P.D, x.delta);
        t.check(scan == x.e, show(P) + " scan " + show(scan));
        t.check(closed == x.e, show(P) + " closed " + show(closed));
        record(P, scan);
    }

    const CoverProblem P(Surface(4), {9, 4}, NodeConfiguration::on_sections({18, 18, 10, 6, 2}));
    const ScrollarVector expect{8, 12, 16, 16, 16, 18, 18, 18};
    const auto scan = scrollar_scan(P);
    const auto closed = scrollar_sections_closed_form(P);
    t.check(scan == expect, show(P) + " scan " + show(scan));
    t.check(closed.e == expect, show(P) + " closed " + show(closed.e));
    record(P, scan);
    const bool trace_ok = closed.trace.size() >= 2 && closed.trace[0].n == 16 && closed.trace[0].r == 3 &&
                          closed.trace[0].delta == 2 && closed.trace[1].n == 18 && closed.trace[1].delta == 3;
    t.check(trace_ok, "recursion trace differs from n1=16 r1=3 delta1=2 n2=18 delta2=3");
    return t.outcome("5 golden instances via scan and closed form");
}

Outcome oracle_sweep() {
    Tally t;
    const auto result = cmd_verify(sweep_spec());
    const auto& summary = result.report["summary"];
    const auto count = summary["count"].get<std::int64_t>();
    t.check(count >= 200, "only " + std::to_string(count) + " instances");
    t.check(result.exit_code == kExitOk, "exit code " + std::to_string(result.exit_code));
    std::int64_t on_sections = 0;
    for (const auto& entry : result.report["instances"]) {
        const auto& c = entry["conditions"];
        const bool sections = c.contains("mincut");
        on_sections += sections ? 1 : 0;
        t.check(sections && c["agree"].get<bool>(), "conditions disagree on " + entry["input"].dump());
        if (!entry["scrollar"].is_null()) {
            const auto& in = entry["input"];
            const CoverProblem P(Surface(in["m"].get<std::int64_t>()),
                                 {in["k"].get<std::int64_t>(), in["a"].get<std::int64_t>()},
                                 config_from_json(in["config"]));
            record(P, entry["scrollar"]["scan"].get<ScrollarVector>());
        }
    }
    std::ostringstream o;
    o << count << " instances (" << on_sections << " on sections, " << summary["covers"].get<std::int64_t>()
      << " valid covers), mincut = sigma = oracle, p = 2^31-1, 3 trials, agree " << summary["agree"];
    return t.outcome(o.str());
}

Outcome closed_forms() {
    Tally t;
    fixtures::Sampler rng(9001);
    const int per_form = 250;
    for (int i = 0; i < per_form; ++i) {
        const auto P = rng.theorem_cover(5, 9, 10);
        const auto e = scrollar_scan(P);
        t.check(scrollar_generic_closed_form(P.S, P.D, P.config.delta) == e, "general-points form on " + show(P));
        record(P, e);
    }
    for (int i = 0; i < per_form; ++i) {
        const auto P = rng.sections_cover(5, 9, 10, 6, 14);
        const auto e = scrollar_scan(P);
        t.check(scrollar_sections_closed_form(P).e == e, "sections form on " + show(P));
        record(P, e);
    }
    for (int i = 0; i < per_form; ++i) {
        const auto P = rng.coppens_cover(5, 9, 10);
        const auto e = scrollar_scan(P);
        t.check(scrollar_coppens(P) == e, "Coppens-type form on " + show(P));
        record(P, e);
    }
    return t.outcome(std::to_string(per_form) + " instances per closed form (general points, sections, Coppens-type)");
}

Outcome invariants() {
    Tally t;
    fixtures::Sampler rng(9002);
    std::int64_t dichotomy = 0;
    auto structural = [&](const CoverProblem& P) {
        const auto r = scrollar_scan_table(P, closed_form_dimension(P));
        try {
            check_scrollar_vector(P, r.e);
            t.check(true, "");
        } catch (const Inconsistency& ex) {
            t.check(false, show(P) + ": " + ex.what());
        }
        bool monotone = true;
        for (std::size_t n = 1; n < r.f_table.size(); ++n) monotone = monotone && r.f_table[n] <= r.f_table[n - 1];
        t.check(monotone, "f-table increases on " + show(P));
        record(P, r.e);
        return r.e;
    };
    for (int i = 0; i < 300; ++i) {
        const auto P = rng.theorem_cover(5, 9, 10);
        const auto e = structural(P);
        const bool balanced = is_balanced(e);
        t.check(balanced == (P.config.delta >= balanced_delta_threshold(P.S, P.k())), "dichotomy on " + show(P));
        if (P.config.delta >= binomial2(P.k() - 1) * P.m()) {
            t.check(balanced, "unbalanced above C(k-1,2)m on " + show(P));
            t.check((P.a() - 1 + P.m()) * (P.k() - 1) >= genus_of(P), "gonality bound on " + show(P));
        }
        ++dichotomy;
    }
    for (int i = 0; i < 300; ++i) structural(rng.sections_cover(5, 9, 10, 6, 14));
    return t.outcome("600 instances (300 general, 300 on sections), dichotomy checked on " +
                     std::to_string(dichotomy));
}

Outcome cor1() {
    Tally t;
    const CoverProblem sextic(Surface(1), {6, 0}, NodeConfiguration::general(2));
    const auto s = cor1_sides(sextic);
    t.check(s.holds(), "sextic " + std::to_string(s.lhs) + " vs " + std::to_string(s.rhs));
    t.check(directrix_splitting(sextic) == SplittingVector{-4, -3, -3, -2, -1, 0}, "sextic directrix splitting");

    fixtures::Sampler rng(9003);
    int checked = 0;
    for (int it = 0; it < 5000 && checked < 150; ++it) {
        const auto P = rng.theorem_cover(4, 8, 8);
        if (!in_directrix_regime(P)) continue;
        const auto sides = cor1_sides(P);
        t.check(sides.holds(), show(P) + " " + std::to_string(sides.lhs) + " vs " + std::to_string(sides.rhs));
        ++checked;
    }
    t.check(checked >= 100, "only " + std::to_string(checked) + " in-regime instances");
    return t.outcome("sextic plus " + std::to_string(checked) + " in-regime instances");
}

Outcome polytope() {
    Tally t;
    std::int64_t k3 = 0;
    for (const auto& [e, g] : produced) {
        if (e.size() + 1 < 3) continue;  // the polytope is stated for k >= 3
        ++k3;
        const auto r = polytope_membership(e, g);
        t.check(r.member, show(e) + " g=" + std::to_string(g) + (r.violated.empty() ? "" : " " + r.violated[0]));
    }
    return t.outcome(std::to_string(k3) + " produced tuples with k >= 3 (of " + std::to_string(produced.size()) +
                     ")");
}

Outcome determinism() {
    Tally t;
    const auto spec = sweep_spec();
    const auto one = render("verify", cmd_verify(spec).report, "json");
    auto threaded = spec;
    threaded.threads = 1;
    const auto two = render("verify", cmd_verify(threaded).report, "json");
    const auto three = render("verify", cmd_verify(spec).report, "json");
    t.check(one == two, "single-threaded report differs");
    t.check(one == three, "repeated report differs");
    return t.outcome("3 runs of the sweep, " + std::to_string(one.size()) + " bytes each");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;  // 0: no limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "golden examples", 1.0, goldens},
        {2, "oracle equivalence sweep", 60.0, oracle_sweep},
        {3, "scan and closed forms agree", 30.0, closed_forms},
        {4, "structural invariants", 0.0, invariants},
        {5, "directrix identity", 0.0, cor1},
        {6, "polytope membership", 0.0, polytope},
        {7, "determinism", 0.0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0 && secs > c.budget_s) {
            o.ok = false;
            o.detail += ", over the " + std::to_string(c.budget_s).substr(0, 4) + " s budget";
        }
        std::printf("%s criterion %d (%s): %s [%.3f s]\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
        failed += o.ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
