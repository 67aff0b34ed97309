#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scrollar/report.hpp"

namespace scrollar {

enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitInvalid = 2, kExitDisagree = 3, kExitResource = 4 };

using Range = std::pair<std::int64_t, std::int64_t>;  // inclusive

// Random verification grid: m in [0,M], k in [0,K], a in [-A,A], u in [0,U],
// multiplicities in [1,S], at most max_points nodes.
struct VerifyGrid {
    std::int64_t m_max = 2, k_max = 5, a_max = 6, u_max = 3, s_max = 6;
    std::int64_t count = 200;
    std::int64_t max_points = 60;
};

struct RunSpec {
    std::string command;

    std::optional<std::int64_t> m;
    std::optional<std::pair<std::int64_t, std::int64_t>> divisor;  // (k, a)
    std::optional<std::vector<std::int64_t>> sections;
    std::optional<std::int64_t> general_nodes;
    std::optional<std::string> instance_path;

    std::string method;  // empty: command default
    std::uint64_t prime = kDefaultPrime;
    std::uint64_t seed = 1;
    int trials = 3;
    bool prime_set = false, seed_set = false, trials_set = false;
    std::string format = "json";
    std::string out;
    unsigned threads = 0;

    // verify
    std::optional<VerifyGrid> grid;
    bool corrupt_closed_form = false;  // harness self-test fixture

    // scan
    std::optional<Range> m_range, k_range, a_range, delta_range;
    std::optional<std::pair<std::int64_t, std::int64_t>> sections_grid;  // (U, S)
    std::int64_t max_grid = 100'000;
};

struct CommandResult {
    json report;
    int exit_code = kExitOk;
};

CommandResult cmd_invariants(const RunSpec& spec);
CommandResult cmd_conditions(const RunSpec& spec);
CommandResult cmd_verify(const RunSpec& spec);
CommandResult cmd_scan(const RunSpec& spec);

// Deterministic sample of interpolation instances for the verify grid.
std::vector<Instance> sample_verify_grid(const VerifyGrid& grid, std::uint64_t seed, std::uint64_t prime,
                                         int trials);

// Conditions-level and scrollar-level comparison for one instance.
json verify_instance(const Instance& x, bool with_oracle_scan, bool corrupt_closed_form);

// Canonical JSON text or the CSV projection of a command report.
std::string render(const std::string& command, const json& report, const std::string& format);

// Full front end: parses argv, runs, writes to out (or --out), returns the
// process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scrollar
