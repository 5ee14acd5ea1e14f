#include "cvlqr/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "cvlqr/io.hpp"

namespace cvlqr::cli {
namespace {

namespace fs = std::filesystem;
using io::json;

const fs::path kFixtures = FIXTURE_DIR;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cvlqr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
  return (kFixtures / name).string();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cvlqr_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, SolveComplexScalar) {
  const Invocation r = invoke({"solve-complex", fixture("scalar_normal.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_NEAR(doc["P1"][0][0][0].get<double>(), 1.1327822, 1e-7);
  EXPECT_NEAR(doc["K1"][0][0][0].get<double>(), -0.2655644, 1e-7);
  EXPECT_LT(doc["spectral_radius"].get<double>(), 1.0);
  EXPECT_TRUE(doc.contains("iterations"));
  EXPECT_TRUE(doc.contains("residual"));
}

TEST_F(CliTest, MalformedExitsTwoAndNamesField) {
  const Invocation r = invoke({"solve-antilinear", fixture("malformed_dims.json")});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("B2"), std::string::npos);
  EXPECT_EQ(invoke({"solve-complex", path("missing.json")}).code, kInputError);
  std::ofstream(path("garbage.json")) << "{ not json";
  EXPECT_EQ(invoke({"solve-delay", path("garbage.json")}).code, kInputError);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kInputError);
  EXPECT_EQ(invoke({"solve-antilinear", fixture("scalar_antilinear.json"),
                    "--method", "bogus"})
                .code,
            kInputError);
  EXPECT_EQ(invoke({"--help"}).code, kOk);
}

TEST_F(CliTest, AntilinearAllReportsDiscrepancies) {
  const Invocation r = invoke({"solve-antilinear", fixture("scalar_antilinear.json"),
                        "--method", "all"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json doc = json::parse(r.out);
  const double root = 2.0 + std::sqrt(5.0);
  EXPECT_NEAR(doc["methods"]["bimatrix"]["P1"][0][0][0].get<double>(), root, 1e-9);
  EXPECT_NEAR(doc["methods"]["anti"]["P"][0][0][0].get<double>(), root, 1e-9);
  EXPECT_NEAR(doc["methods"]["normal"]["P"][0][0][0].get<double>(), root, 1e-9);
  EXPECT_LT(doc["discrepancies"]["max_relative_P"].get<double>(), 1e-9);
  EXPECT_LE(doc["iterations"]["normal"].get<int>(),
            doc["iterations"]["anti"].get<int>());
}

TEST_F(CliTest, AntiMethodZeroDynamics) {
  const Invocation r = invoke({"solve-antilinear", fixture("antilinear_zero.json"),
                        "--method", "anti"});
  ASSERT_EQ(r.code, kOk);
  const json doc = json::parse(r.out);
  EXPECT_LE(doc["iterations"].get<int>(), 2);
  EXPECT_EQ(doc["P"][0][0][0].get<double>(), 1.0);
}

TEST_F(CliTest, NotStabilizableExitsThree) {
  for (const char* method : {"bimatrix", "anti", "normal"}) {
    const Invocation r = invoke({"solve-antilinear",
                          fixture("antilinear_unstabilizable.json"), "--method",
                          method});
    EXPECT_EQ(r.code, kNotStabilizable) << method;
    EXPECT_NE(r.err.find("not stabilizable"), std::string::npos);
  }
  const Invocation pre = invoke({"solve-antilinear",
                          fixture("antilinear_unstabilizable.json"),
                          "--precheck"});
  EXPECT_EQ(pre.code, kNotStabilizable);
  EXPECT_NE(pre.err.find("eigenvalue 4"), std::string::npos);
}

TEST_F(CliTest, NoConvergenceExitsFour) {
  const Invocation r = invoke({"solve-complex", fixture("scalar_normal.json"),
                        "--max-iter", "2"});
  EXPECT_EQ(r.code, kNoConvergence);
}

TEST_F(CliTest, CheckStabilizability) {
  Invocation r = invoke({"check-stabilizability", fixture("antilinear_unstabilizable.json")});
  EXPECT_EQ(r.code, kNotStabilizable);
  EXPECT_NE(r.out.find("stabilizable: false"), std::string::npos);
  EXPECT_NE(r.out.find("4+0j"), std::string::npos);

  r = invoke({"check-stabilizability", fixture("f16.json")});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("stabilizable: true"), std::string::npos);
  EXPECT_EQ(invoke({"check-stabilizability", fixture("complex_stable_no_input.json")})
                .code,
            kOk);
  EXPECT_EQ(invoke({"check-stabilizability", fixture("malformed_dims.json")}).code,
            kInputError);
}

TEST_F(CliTest, DelayOddInputNotesPadding) {
  const Invocation r = invoke({"solve-delay", fixture("delay_odd_input.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_TRUE(doc["padded"].get<bool>());
  EXPECT_FALSE(doc["notes"].empty());
  EXPECT_EQ(doc["F"].size(), 1u);
  EXPECT_EQ(doc["F"][0].size(), 4u);
}

TEST_F(CliTest, DelaySidecars) {
  const std::string out = path("diag.json");
  const Invocation r = invoke({"solve-delay", fixture("delay_diagonal.json"), "--output",
                        out, "--trace", "--horizon", "25"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::ifstream trace(path("diag_trace.csv"));
  std::string header;
  std::getline(trace, header);
  EXPECT_EQ(header, "iter,residual,step");
  std::ifstream traj(path("diag_trajectory.csv"));
  std::getline(traj, header);
  EXPECT_EQ(header, "k,state_1,state_2,state_3,input_1,input_2");
  int rows = 0;
  for (std::string line; std::getline(traj, line);) ++rows;
  EXPECT_EQ(rows, 26);

  const json doc = io::load_document(out);
  EXPECT_LT(doc["spectral_radius"].get<double>(), 1.0);
  EXPECT_LE(doc["trajectory_cost"].get<double>(), doc["jmin"].get<double>());
}

TEST_F(CliTest, Determinism) {
  const auto a = invoke({"solve-antilinear", fixture("scalar_antilinear.json"),
                         "--method", "all"});
  const auto b = invoke({"solve-antilinear", fixture("scalar_antilinear.json"),
                         "--method", "all"});
  EXPECT_EQ(a.out, b.out);
  const auto d1 = invoke({"solve-delay", fixture("f16.json")});
  const auto d2 = invoke({"solve-delay", fixture("f16.json")});
  EXPECT_EQ(d1.out, d2.out);
}

std::string strip_wall_time(const std::string& csv) {
  std::istringstream in(csv);
  std::string out;
  for (std::string line; std::getline(in, line);) {
    out += line.substr(0, line.rfind(',')) + "\n";
  }
  return out;
}

TEST_F(CliTest, BenchRandomIsDeterministic) {
  const auto a = invoke({"bench", "--random", "3", "2", "8", "42"});
  const auto b = invoke({"bench", "--random", "3", "2", "8", "42"});
  ASSERT_EQ(a.code, kOk);
  EXPECT_EQ(strip_wall_time(a.out), strip_wall_time(b.out));
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 9);
}

TEST_F(CliTest, BenchDirectory) {
  const auto r = invoke({"bench", kFixtures.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  bool saw_skip = false, saw_scalar = false;
  while (std::getline(in, line)) {
    if (line.rfind("antilinear_unstabilizable.json", 0) == 0) {
      saw_skip = line.find("skipped: not stabilizable") != std::string::npos;
    }
    if (line.rfind("scalar_antilinear.json", 0) == 0) {
      saw_scalar = true;
      std::vector<std::string> cells;
      std::istringstream row(line);
      for (std::string c; std::getline(row, c, ',');) cells.push_back(c);
      ASSERT_GE(cells.size(), 7u);
      EXPECT_EQ(cells[3], "ok");
      EXPECT_LE(std::stoi(cells[5]), std::stoi(cells[4]));
    }
  }
  EXPECT_TRUE(saw_skip);
  EXPECT_TRUE(saw_scalar);
}

// Result documents re-checked by a separate process.
TEST_F(CliTest, RoundTripVerifyInFreshProcess) {
  const std::string bin = CVLQR_BIN;
  struct Case {
    std::string cmd, input, extra;
  };
  for (const Case& c :
       {Case{"solve-complex", "scalar_normal.json", ""},
        Case{"solve-antilinear", "scalar_antilinear.json", "--method all"},
        Case{"solve-antilinear", "scalar_antilinear.json", "--method normal"},
        Case{"solve-delay", "f16.json", ""},
        Case{"solve-delay", "delay_odd_input.json", ""}}) {
    const std::string out = path("result.json");
    const std::string solve = bin + " " + c.cmd + " " + fixture(c.input) + " " +
                              c.extra + " --output " + out + " 2>/dev/null";
    ASSERT_EQ(std::system(solve.c_str()), 0) << solve;
    const std::string verify = bin + " verify " + fixture(c.input) + " " + out +
                               " > /dev/null 2>&1";
    EXPECT_EQ(std::system(verify.c_str()), 0) << verify;
  }
}

TEST_F(CliTest, VerifyRejectsTamperedResult) {
  const std::string out = path("result.json");
  ASSERT_EQ(invoke({"solve-complex", fixture("scalar_normal.json"), "--output", out})
                .code,
            kOk);
  json doc = io::load_document(out);
  doc["P1"][0][0][0] = 1.2;
  std::ofstream(out) << doc.dump();
  const Invocation r = invoke({"verify", fixture("scalar_normal.json"), out});
  EXPECT_EQ(r.code, kNoConvergence);
  EXPECT_NE(r.out.find("FAILED"), std::string::npos);
}

}  // namespace
}  // namespace cvlqr::cli
