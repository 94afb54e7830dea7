#include "gidkit/builtin.hpp"
#include "gidkit/cli.hpp"
#include "gidkit/json_io.hpp"
#include "gidkit/sem.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace gidkit;

namespace {

const std::string kData = GIDKIT_TEST_DATA;

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "gidkit");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + "/gidkit_" + name; }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, CheckFig1MatchesGolden) {
    const CliRun r = run({"check", "--graph", kData + "/fig1.json", "--treatment", "X1,X2", "--outcome", "Y1,Y2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, slurp(kData + "/check_fig1.golden.json"));
    EXPECT_TRUE(contains(r.out, "P(y1|x1,x2)"));
}

TEST(Cli, CheckIsDeterministic) {
    const std::vector<std::string> fd{"check", "--graph", "builtin:frontdoor", "--treatment", "X", "--outcome", "Y"};
    EXPECT_EQ(run(fd).out, run(fd).out);
}

TEST(Cli, CheckThicketIsNotIdentifiable) {
    const CliRun r = run({"check", "--graph", kData + "/thicket.json", "--treatment", "T1,T2,T3", "--outcome", "R"});
    EXPECT_EQ(r.code, 3);
    const Json j = parse_json(r.out);
    EXPECT_EQ(j["decision"], false);
    EXPECT_EQ(j["witness_summary"]["not_identifiable"][0], Json({"R"}));
    const CliRun given = run({"check", "--graph", "builtin:thicket", "--treatment", "T1,T2,T3", "--outcome", "R",
                           "--given", kData + "/thicket_given.json"});
    EXPECT_EQ(given.code, 0);
}

TEST(Cli, InputErrors) {
    EXPECT_EQ(run({"check", "--graph", "builtin:fig1", "--treatment", "X1", "--outcome", ""}).code, 1);
    EXPECT_EQ(run({"check", "--graph", "builtin:fig1", "--treatment", "X1", "--outcome", "X1"}).code, 1);
    EXPECT_EQ(run({"check", "--graph", "builtin:fig1", "--outcome", "Q"}).code, 1);
    EXPECT_EQ(run({"check", "--graph", "builtin:nope", "--outcome", "Y"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"check", "--outcome", "Y"}).code, 1);
    const CliRun bad = run({"check", "--graph", kData + "/malformed.json", "--outcome", "Y"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_TRUE(contains(bad.err, "line 4")) << bad.err;
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, WitnessBundleVerifies) {
    const std::string path = temp_path("bow_bundle.json");
    const CliRun w = run({"witness", "--graph", kData + "/bow.json", "--treatment", "X", "--outcome", "Y", "--out", path});
    ASSERT_EQ(w.code, 0) << w.err;
    const Json j = read_json_file(path);
    EXPECT_EQ(j["verification"]["verified"], true);
    const CliRun v = run({"verify", "--bundle", path});
    EXPECT_EQ(v.code, 0) << v.err;
    EXPECT_EQ(parse_json(v.out)["verified"], true);

    Json tampered = j;
    tampered["m2"] = tampered["m1"];
    const std::string bad = temp_path("tampered.json");
    std::ofstream(bad) << tampered.dump();
    EXPECT_EQ(run({"verify", "--bundle", bad}).code, 2);
}

TEST(Cli, WitnessThicketReportsDisagreement) {
    const CliRun w = run({"witness", "--graph", "builtin:thicket", "--treatment", "T1,T2,T3", "--outcome", "R"});
    ASSERT_EQ(w.code, 0) << w.err;
    const Json j = parse_json(w.out);
    EXPECT_TRUE(j.contains("v0"));
    EXPECT_NE(j["verification"]["q_s_m1"], j["verification"]["q_s_m2"]);
}

TEST(Cli, WitnessRefusesIdentifiableQuery) {
    const CliRun r = run({"witness", "--graph", "builtin:fig1", "--treatment", "X1,X2", "--outcome", "Y1,Y2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.err, "Refused")) << r.err;
}

TEST(Cli, ReproduceExample2) {
    const CliRun r = run({"reproduce", "example2"});
    EXPECT_TRUE(contains(r.out, "PASS observational joints are equal"));
    EXPECT_TRUE(contains(r.out, "PASS P(x1=0,x2=1,y1,y2)=0"));
    EXPECT_TRUE(contains(r.out, "PASS interventional values differ (2/9 vs 5/18)"));
    EXPECT_TRUE(contains(r.out, "FAIL interventional gap 4/9 != 5/9 (computed 2/9 vs 5/18)"));
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, ReproduceThicket) {
    const CliRun r = run({"reproduce", "thicket"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "PASS P(t1,t2,t3)=0 when t21!=t3"));
    EXPECT_TRUE(contains(r.out, "PASS Q[R] differs between the models"));
    EXPECT_EQ(run({"reproduce", "nope"}).code, 1);
}

TEST(Cli, EvalIdentity) {
    const CliRun r = run({"eval", "--estimand", kData + "/identity_estimand.json", "--tables", kData + "/ab_table.json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(table_from_json(parse_json(r.out)["table"]), table_from_json(read_json_file(kData + "/ab_table.json")));
    const CliRun at = run({"eval", "--estimand", kData + "/identity_estimand.json", "--tables", kData + "/ab_table.json",
                        "--at", "A=0,B=1"});
    EXPECT_EQ(parse_json(at.out)["value"], "1/4");
}

TEST(Cli, EvalFig1OnRandomModelMatchesIntervention) {
    const std::string report = temp_path("fig1_report.json");
    ASSERT_EQ(run({"check", "--graph", "builtin:fig1", "--treatment", "X1,X2", "--outcome", "Y1,Y2", "--out", report}).code, 0);
    const CliRun r = run({"eval", "--estimand", report, "--graph", "builtin:fig1", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const DistTable t = table_from_json(parse_json(r.out)["table"]);
    const DiscreteSEM m = random_positive_sem(builtin_graph("fig1"), 3);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Realization v = t.realization(i);
        EXPECT_EQ(t.value(i), intervene(m, {"X1", "X2"}, {{"X1", v.at("X1")}, {"X2", v.at("X2")}}).at(v));
    }
}

TEST(Cli, EvalFig1OnExample2NamesZeroCell) {
    const std::string report = temp_path("fig1_report2.json");
    ASSERT_EQ(run({"check", "--graph", "builtin:fig1", "--treatment", "X1,X2", "--outcome", "Y1,Y2", "--out", report}).code, 0);
    const CliRun r = run({"eval", "--estimand", report, "--model", "builtin:example2:m1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.err, "NonPositiveInput")) << r.err;
    EXPECT_TRUE(contains(r.err, "X1=0,X2=1")) << r.err;
    EXPECT_EQ(run({"eval", "--estimand", report}).code, 1);
}

TEST(Cli, BinaryExitCodes) {
    const std::string cli = GIDKIT_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int raw = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    EXPECT_EQ(status("check --graph builtin:fig1 --treatment X1,X2 --outcome Y1,Y2"), 0);
    EXPECT_EQ(status("check --graph builtin:thicket --treatment T1,T2,T3 --outcome R"), 3);
    EXPECT_EQ(status("check --graph builtin:fig1 --outcome ''"), 1);
    EXPECT_EQ(status("reproduce example2"), 2);
}
