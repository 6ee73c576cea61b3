#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "adelic");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = adelic::cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(ADELIC_SAMPLES_DIR) + "/" + name; }

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  return nlohmann::json::parse(in);
}

TEST(Cli, DeltaPrintsTwelve) {
  CliRun r = run({"delta", "--l", "4", "--h", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "12\n");
}

TEST(Cli, UnknownSubcommandIsUsageError) {
  CliRun r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(Cli, MissingSubcommandAndBadFlagsAreUsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"delta", "--l", "4"}).code, 2);
  EXPECT_EQ(run({"bundle", "volume", "--in", sample("bundle_diag.json")}).code, 2);
  EXPECT_EQ(run({"--prec", "3", "delta", "--l", "1", "--h", "1"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, VerifyLogTwoPasses) {
  std::string report = ::testing::TempDir() + "verify_log2.json";
  CliRun r = run({"--json", report, "verify", "--in", sample("verify_log2.json"), "--kind", "principal"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  auto j = read_json(report);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["hypothesis_status"], "certified");
  EXPECT_EQ(j["bound"]["sign"], "-");
  std::remove(report.c_str());
}

TEST(Cli, VerifyOtherSamplesPass) {
  for (const char* f : {"verify_close.json", "verify_padic.json", "verify_gaussian.json"}) {
    CliRun r = run({"verify", "--in", sample(f)});
    EXPECT_EQ(r.code, 0) << f << ": " << r.err;
  }
}

TEST(Cli, VanishingFormExitsOne) {
  std::string path = ::testing::TempDir() + "vanishing.json";
  std::ofstream(path) << R"({"format": "adelic-baker/1", "alpha": ["4", "2"], "u": {"kind": "arch"},
                             "beta": [["0", "1", "-2"]], "declared_s": 1})";
  CliRun r = run({"verify", "--in", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
  std::remove(path.c_str());
}

TEST(Cli, MalformedInputIsUsageError) {
  std::string path = ::testing::TempDir() + "malformed.json";
  std::ofstream(path) << R"({"alpha": ["2"]})";
  EXPECT_EQ(run({"verify", "--in", path}).code, 2);
  std::ofstream(path) << "not json";
  EXPECT_EQ(run({"verify", "--in", path}).code, 2);
  EXPECT_EQ(run({"verify", "--in", "/nonexistent/x.json"}).code, 2);
  std::remove(path.c_str());
}

TEST(Cli, HeightTableAndJson) {
  std::string report = ::testing::TempDir() + "height.json";
  CliRun r = run({"--json", report, "height", "--field", "x^2+1", "--element", "[2, 1]"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("inf0"), std::string::npos);
  auto j = read_json(report);
  ASSERT_TRUE(j.contains("places"));
  EXPECT_EQ(j["places"][0]["n_v"], 2);
  // h(2+i) = (1/2) log 5
  EXPECT_EQ(j["value"].get<std::string>().rfind("0.804718956217050187", 0), 0u);
  std::remove(report.c_str());
}

TEST(Cli, RamifiedFieldStrictVersusLenient) {
  EXPECT_EQ(run({"places", "--field", "x^2+1", "--bound", "13"}).code, 1);
  CliRun r = run({"places", "--field", "x^2+1", "--bound", "13", "--lenient"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("skipped primes: 2"), std::string::npos);
  EXPECT_NE(r.out.find("5:1"), std::string::npos);
}

TEST(Cli, BundleActions) {
  CliRun d = run({"bundle", "degree", "--in", sample("bundle_q2.json")});
  EXPECT_EQ(d.code, 0);
  EXPECT_NE(d.out.find("2.01490302054226475"), std::string::npos);
  EXPECT_EQ(run({"bundle", "dual", "--in", sample("bundle_q2.json")}).code, 0);
  EXPECT_EQ(run({"bundle", "maxslope", "--in", sample("bundle_diag.json")}).code, 0);
  EXPECT_EQ(run({"bundle", "sym", "--ell", "3", "--in", sample("bundle_diag.json")}).code, 0);
}

TEST(Cli, SiegelBoundsAndSearches) {
  CliRun b = run({"siegel", "bound", "--kind", "classical", "--in", sample("siegel_classical.json")});
  EXPECT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("= 37"), std::string::npos);
  for (const char* kind : {"bv", "absolute"}) {
    EXPECT_EQ(run({"siegel", "bound", "--kind", kind, "--in", sample("siegel_absolute.json")}).code, 0) << kind;
  }
  EXPECT_EQ(run({"siegel", "bound", "--kind", "approx", "--in", sample("siegel_approx.json")}).code, 0);
  CliRun s = run({"siegel", "search", "--kind", "classical", "--in", sample("siegel_classical.json")});
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("within bound"), std::string::npos);
  EXPECT_EQ(run({"siegel", "search", "--kind", "pv", "--in", sample("siegel_pv.json")}).code, 0);
  EXPECT_EQ(run({"siegel", "search", "--kind", "absolute", "--in", sample("siegel_absolute.json")}).code, 0);
  EXPECT_EQ(run({"siegel", "search", "--kind", "approx", "--in", sample("siegel_absolute.json")}).code, 2);
}

TEST(Cli, BoundAndParams) {
  std::string report = ::testing::TempDir() + "bound.json";
  CliRun b = run({"--json", report, "bound", "--in", sample("bound_principal.json")});
  ASSERT_EQ(b.code, 0) << b.err;
  auto j = read_json(report);
  EXPECT_EQ(j["sign"], "-");
  EXPECT_EQ(j["branch"], "U");
  EXPECT_TRUE(j.contains("log_magnitude_decimal"));
  CliRun p = run({"--json", report, "params", "--in", sample("bound_principal.json")});
  EXPECT_EQ(p.code, 0);
  auto q = read_json(report);
  EXPECT_TRUE(q["properties"]["i"].get<bool>());
  EXPECT_TRUE(q["properties"]["iv"].get<bool>());
  EXPECT_EQ(run({"bound", "--in", sample("bound_principal.json"), "--kind", "sideways"}).code, 2);
  std::remove(report.c_str());
}

}  // namespace
