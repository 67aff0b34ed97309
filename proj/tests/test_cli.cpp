#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + SCROLLAR_BIN + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("scrollar_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Cli, InvariantsGoldenExamples) {
    auto r = run("invariants --m 4 --class 9,4 --sections 18,18,10,6,2");
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["scrollar"], json::parse("[8,12,16,16,16,18,18,18]"));
    EXPECT_EQ(j["schema"], 1);
    EXPECT_TRUE(j.contains("seed"));
    EXPECT_TRUE(j.contains("prime"));

    r = run("invariants --m 1 --class 6,0 --general-nodes 2");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["scrollar"], json::parse("[1,2,3,3,4]"));

    r = run("invariants --m 1 --class 6,0 --general-nodes 0");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["scrollar"], json::parse("[1,2,3,4,5]"));

    r = run("invariants --m 4 --class 9,4 --general-nodes 54 --method all");
    ASSERT_EQ(r.code, 0);
    j = json::parse(r.out);
    EXPECT_EQ(j["methods"]["closed"], json::parse("[8,12,16,17,17,17,17,18]"));
    EXPECT_EQ(j["methods"]["oracle"], j["methods"]["scan"]);
}

TEST(Cli, InvalidInputExitsTwo) {
    EXPECT_EQ(run("invariants --m 1 --class 6,0 --general-nodes 2 --sections 1").code, 2);
    EXPECT_EQ(run("invariants --m 1 --class 6").code, 2);
    EXPECT_EQ(run("invariants --m 1 --class 6,0 --sections 1,2").code, 2);
    EXPECT_EQ(run("invariants --m -1 --class 6,0").code, 2);
    EXPECT_EQ(run("invariants --m 1 --class 6,0 --prime 12").code, 2);
    EXPECT_EQ(run("invariants --m 1 --class 6,0 --format xml").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("conditions --instance /nonexistent/replay.json").code, 2);
}

TEST(Cli, SeedFromEnvironmentAndFlag) {
    auto r = run("conditions --m 1 --class 4,-1 --general-nodes 2", "SCROLLAR_SEED=424242");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["seed"], 424242);
    r = run("conditions --m 1 --class 4,-1 --general-nodes 2 --seed 9", "SCROLLAR_SEED=424242");
    EXPECT_EQ(json::parse(r.out)["seed"], 9);
    EXPECT_EQ(run("conditions --m 1 --class 4,-1 --general-nodes 2", "SCROLLAR_SEED=abc").code, 2);
}

TEST(Cli, CorruptedClosedFormReplays) {
    auto r = run("verify --m 4 --class 7,-10 --sections 18,18,10,6,2 --corrupt-closed-form");
    ASSERT_EQ(r.code, 3);
    const auto j = json::parse(r.out);
    const auto replay = j["instances"][0]["replay"];
    for (const char* key : {"m", "k", "a", "config", "prime", "seed", "trials"}) EXPECT_TRUE(replay.contains(key)) << key;

    const auto path = temp_file("replay.json");
    std::ofstream(path) << replay.dump();
    r = run("conditions --instance " + path.string());
    EXPECT_EQ(r.code, 0);
    const auto c = json::parse(r.out);
    EXPECT_TRUE(c["agree"].get<bool>());
    EXPECT_EQ(c["results"]["oracle"]["conditions_imposed"], 52);
    EXPECT_EQ(c["seed"], replay["seed"]);
    std::filesystem::remove(path);
}

TEST(Cli, VerifyGridAndDeterminism) {
    const std::string args = "verify --grid 2,5,6,3,6 --count 40 --seed 5";
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json::parse(a.out)["summary"]["disagree"], 0);
    const auto c = run("verify --grid 2,5,6,3,6 --count 40 --seed 6");
    EXPECT_NE(a.out, c.out);
}

TEST(Cli, OutFlagAndCsv) {
    const auto path = temp_file("out.csv");
    const auto r = run("invariants --m 1 --class 5,1 --general-nodes 2 --format csv --out " + path.string());
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_NE(ss.str().find("2;3;3;4"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, ScanBalancedThreshold) {
    const auto r = run("scan --m 1 --class 6,0 --delta-range 0:10");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    ASSERT_EQ(j["rows"].size(), 11u);
    for (const auto& row : j["rows"]) {
        const auto delta = row["input"]["config"]["delta"].get<int>();
        // Balanced from C(5,2) - 4 = 6 on, not only from 10.
        EXPECT_EQ(row["balanced"].get<bool>(), delta >= 6) << delta;
        EXPECT_TRUE(row["member"].get<bool>());
    }
    EXPECT_LE(j["distinct"].size(), j["rows"].size());
}

TEST(Cli, ScanDedupesNormalizedTuples) {
    // (2,2) and (3,3) normalise to the same point.
    const auto r = run("scan --m 0 --k-range 3:3 --a-range 3:4");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["rows"].size(), 2u);
    ASSERT_EQ(j["distinct"].size(), 1u);
    EXPECT_EQ(j["distinct"][0]["count"], 2);
}

TEST(Cli, ScanEmptyAndOversizedGrids) {
    auto r = run("scan --m 1 --class 6,0 --delta-range 5:4");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_TRUE(j["rows"].empty());
    EXPECT_TRUE(j["distinct"].empty());
    r = run("scan --m-range 0:50 --k-range 2:50 --a-range 0:50 --sections-grid 6,20");
    EXPECT_EQ(r.code, 4);
}

TEST(Cli, ScanSectionsMonotoneTopInvariant) {
    const auto r = run("scan --m 2 --class 6,5 --sections-grid 3,5");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    std::map<std::vector<int>, int> top;
    for (const auto& row : j["rows"])
        top[row["input"]["config"]["multiplicities"].get<std::vector<int>>()] = row["scrollar"].back().get<int>();
    ASSERT_GT(top.size(), 10u);
    int compared = 0;
    for (const auto& [s, e] : top) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto t = s;
            ++t[i];
            if (auto it = top.find(t); it != top.end()) {
                // More nodes lower the genus, so the top invariant cannot grow.
                EXPECT_GE(e, it->second);
                ++compared;
            }
        }
    }
    EXPECT_GT(compared, 10);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run("--help").code, 0); }
