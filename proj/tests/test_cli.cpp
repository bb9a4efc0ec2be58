#include <gtest/gtest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run run(const std::string& args) {
  const std::string cmd = std::string(PRODLAB_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(CliEval, WallisPartial) {
  const auto r = run("eval " + quote("paper(1)") + " --periods 3");
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_EQ(j["rational"], "256/175");
  EXPECT_EQ(j["value_decimal"].get<std::string>().substr(0, 12), "1.4628571428");
}

TEST(CliEval, EmptyPartial) {
  const auto r = run("eval " + quote("paper(1)") + " --periods 0");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["rational"], "1/1");
}

TEST(CliEval, FirstBlockOfBase3Product) {
  const auto r = run("eval " + quote("paper(18)") + " --blocks 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["value_decimal"].get<std::string>().substr(0, 12), "1.1447142425");
}

TEST(CliEval, FractionCount) {
  const auto r = run("eval " + quote("paper(1)") + " --fractions 5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["rational"], "128/75");
}

TEST(CliEval, SpecFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "prodlab_cli_test.prod";
  std::ofstream(path) << "# product (12)\nwallis{period=3; num=[3,3]; den=[2,4]}\n";
  const auto r = run("eval " + quote(path.string()) + " --periods 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["rational"], "81/70");
}

TEST(CliLimit, GammaWithClosedForm) {
  const auto r = run("limit " + quote("wallis_general(3)") + " --method gamma");
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_EQ(j["value_decimal"].get<std::string>().substr(0, 12), "1.2091995761");
  EXPECT_EQ(j["closed_form"], "2*pi/(3*sqrt(3))");
  EXPECT_EQ(j["method"], "gamma");
  const auto r9 = json_of(run("limit " + quote("paper(9)") + " --method gamma"));
  EXPECT_EQ(r9["value_decimal"].get<std::string>().substr(0, 12), "0.7653668647");
  EXPECT_EQ(r9["closed_form"], "sqrt(2-sqrt(2))");
}

TEST(CliLimit, BlocksMethod) {
  const auto r = run("limit " + quote("paper(5)") + " --method blocks --tol 1e-5");
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_EQ(j["value_decimal"].get<std::string>().substr(0, 8), "1.359140");
  EXPECT_EQ(j["method"], "block-sum");
  EXPECT_TRUE(j.contains("error_bound"));
}

TEST(CliLimit, Extrapolate) {
  const auto r = run("limit " + quote("paper(7)") + " --method extrapolate --periods 16384 --levels 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["value_decimal"].get<std::string>().substr(0, 10), "2.00000000");
}

TEST(CliLimit, FamilyMismatchExitsOne) {
  EXPECT_EQ(run("limit " + quote("paper(5)") + " --method gamma").code, 1);
  EXPECT_EQ(run("limit " + quote("paper(1)") + " --method blocks").code, 1);
}

TEST(CliVerify, BundledClaimsAllHold) {
  const auto r = run(std::string("verify ") + PRODLAB_CLAIMS_DIR);
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_TRUE(j["all_hold"].get<bool>());
  EXPECT_EQ(j["claims"].size(), 8u);
}

TEST(CliVerify, StructuralWithResidual) {
  const auto r = run(std::string("verify ") + PRODLAB_CLAIMS_DIR + "/e_half_squared_eq_16_17.claim");
  ASSERT_EQ(r.code, 0);
  const auto c = json_of(r)["claims"][0];
  EXPECT_EQ(c["verdict"], "structural");
  EXPECT_EQ(c["residual"], "2");
}

TEST(CliVerify, EachMutationExitsOne) {
  int seen = 0;
  for (const auto& e : std::filesystem::directory_iterator(PRODLAB_MUTATIONS_DIR)) {
    const auto r = run("verify " + quote(e.path().string()));
    EXPECT_EQ(r.code, 1) << e.path();
    EXPECT_EQ(json_of(r)["claims"][0]["verdict"], "refuted") << e.path();
    ++seen;
  }
  EXPECT_EQ(seen, 8);
}

TEST(CliVerify, ParseErrorExitsTwo) {
  const auto path = std::filesystem::temp_directory_path() / "prodlab_cli_bad.claim";
  std::ofstream(path) << "claim{lhs=paper(1); rhs=paper(13)}\n";
  EXPECT_EQ(run("verify " + quote(path.string())).code, 2);
}

TEST(CliConjecture, RecognizesKnownCases) {
  const auto r = run("conjecture --k 2..3");
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_TRUE(j["conjectural"].get<bool>());
  EXPECT_EQ(j["rows"][0]["candidates"][0]["closed_form"], "e*2^(-1)");
  EXPECT_EQ(j["rows"][1]["candidates"][0]["closed_form"], "e^(2/3)*3^(-1/2)");
  EXPECT_FALSE(j["rows"][0]["conjectural"].get<bool>());
}

TEST(CliConjecture, FewerBlocksSameCandidate) {
  const auto r = run("conjecture --k 2..2 --blocks 5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["rows"][0]["candidates"][0]["closed_form"], "e*2^(-1)");
}

TEST(CliConjecture, WritesReportFile) {
  const auto path = std::filesystem::temp_directory_path() / "prodlab_conjecture.json";
  std::filesystem::remove(path);
  const auto r = run("conjecture --k 4 --out " + quote(path.string()));
  ASSERT_EQ(r.code, 0);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_TRUE(j["rows"][0]["conjectural"].get<bool>());
}

TEST(CliConjecture, BudgetExceededExitsThree) { EXPECT_EQ(run("conjecture --k 100").code, 3); }

TEST(CliExitCodes, ParseAndUsageErrors) {
  EXPECT_EQ(run("eval " + quote("paper(13)")).code, 2);
  EXPECT_EQ(run("eval " + quote("wallis{period=8; num=[2,4,4,6]; den=[1,3,5,8]}")).code, 2);
  EXPECT_EQ(run("eval " + quote("paper(1)") + " --precision 4").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(CliExitCodes, NumericFailureExitsThree) {
  EXPECT_EQ(run("eval " + quote("paper(5)") + " --blocks 40").code, 3);
  EXPECT_EQ(run("limit " + quote("paper(5)") + " --tol 1e-30").code, 3);
}

TEST(CliOutput, JsonIsSingleDocumentAndDeterministic) {
  for (const std::string& args : std::vector<std::string>{"eval " + quote("paper(16)") + " --blocks 6", "verify " + std::string(PRODLAB_CLAIMS_DIR),
                                 "limit " + quote("paper(10)"), std::string("conjecture --k 2..2")}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_NO_THROW(nlohmann::json::parse(a.out)) << args;
  }
}

TEST(CliOutput, TextFormat) {
  const auto r = run("eval " + quote("paper(1)") + " --periods 3 --format text");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("rational: 256/175"), std::string::npos);
}

TEST(CliOutput, PrecisionControlsDigits) {
  const auto j = json_of(run("limit " + quote("paper(1)") + " --precision 256"));
  // floor(256 log10 2) - 2 = 75 significant digits
  EXPECT_EQ(j["value_decimal"].get<std::string>().size(), 76u);
}

TEST(CliSamples, AllSampleSpecsEvaluate) {
  int seen = 0;
  for (const auto& e : std::filesystem::directory_iterator(PRODLAB_SAMPLES_DIR)) {
    if (e.path().extension() != ".prod") continue;
    EXPECT_EQ(run("limit " + quote(e.path().string())).code, 0) << e.path();
    ++seen;
  }
  EXPECT_GT(seen, 0);
}
