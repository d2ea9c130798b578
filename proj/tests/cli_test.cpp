#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

const std::string kCli = FACTORADIC_CLI_PATH;
const std::string kFixtures = FACTORADIC_FIXTURE_DIR;

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("factoradic-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  CliResult run(const std::string& args, const std::string& env = "") const {
    const std::string out = path("stdout.txt");
    const std::string err = path("stderr.txt");
    const std::string cmd = env + " " + kCli + " " + args + " >" + out + " 2>" + err;
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  fs::path dir_;
};

TEST_F(Cli, EmbedCantorHeightFour) {
  const CliResult r = run("embed --oracle cantor-scaled --height 4 --out " + path("cert.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("leaves      16"), std::string::npos);
  EXPECT_NE(r.out.find("translate   x = "), std::string::npos);
  const Json cert = Json::parse(slurp(path("cert.json")));
  EXPECT_EQ(cert.at("height"), 4);
  EXPECT_EQ(cert.at("levels").size(), 5u);
  EXPECT_EQ(cert.at("samples").size(), 16u);
  EXPECT_EQ(run("check " + path("cert.json")).code, 0);
}

TEST_F(Cli, EmbedHeightZero) {
  const CliResult r = run("embed --oracle restrict-binary --height 0 --out " + path("cert.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const Json cert = Json::parse(slurp(path("cert.json")));
  EXPECT_EQ(cert.at("depth"), 5);
  EXPECT_EQ(run("check " + path("cert.json")).code, 0);
}

TEST_F(Cli, EmbedFromTreeFiles) {
  const CliResult good = run("embed --oracle file:" + kFixtures + "/good-tree.json --height 5 --out " + path("c.json"));
  EXPECT_EQ(good.code, 0) << good.err;
  const CliResult bad =
      run("embed --oracle file:" + kFixtures + "/bad-endpoint-tree.json --height 2 --out " + path("b.json"));
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(Json::parse(bad.err).at("error"), "oracle");
  EXPECT_FALSE(fs::exists(path("b.json")));
}

TEST_F(Cli, BadArguments) {
  EXPECT_EQ(run("embed --oracle nowhere --out " + path("x.json")).code, 2);
  EXPECT_EQ(run("embed --oracle file:/no/such/file.json --out " + path("x.json")).code, 2);
  EXPECT_EQ(run("cover --depth 6 --mode sometimes --out " + path("x.json")).code, 2);
  EXPECT_EQ(run("cover --depth 6 --f table:1,2 --out " + path("x.json")).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(Cli, EmbedBudget) {
  const CliResult r = run("embed --oracle cantor-scaled --height 3 --max-level 20 --out " + path("x.json"));
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(Json::parse(r.err).at("error"), "budget");
}

TEST_F(Cli, CoverDepthEight) {
  const CliResult r = run("cover --depth 8 --mode exhaustive --out " + path("cover.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("slaloms      4320"), std::string::npos);
  EXPECT_NE(r.out.find("lower bound  3360/1"), std::string::npos);
  const Json cover = Json::parse(slurp(path("cover.json")));
  EXPECT_EQ(cover.at("slalomCount"), "4320");
  EXPECT_EQ(cover.at("slaloms").size(), 4320u);
  EXPECT_EQ(cover.at("verification").at("checked"), 40320);
  EXPECT_EQ(run("check " + path("cover.json")).code, 0);
}

TEST_F(Cli, CoverBudgetGuard) {
  const CliResult r = run("cover --depth 30 --mode exhaustive --out " + path("x.json"));
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(Json::parse(r.err).at("error"), "budget");
  EXPECT_EQ(run("cover --depth 9 --mode exhaustive --out " + path("x.json")).code, 3);
  EXPECT_EQ(run("cover --depth 7 --mode exhaustive --out " + path("x.json"), "FACTORADIC_BUDGET=1000").code, 3);
  EXPECT_EQ(run("cover --depth 9 --mode exhaustive --out " + path("x.json"), "FACTORADIC_BUDGET=362880").code, 0);
}

TEST_F(Cli, DeterministicOutputs) {
  ASSERT_EQ(run("cover --depth 12 --mode sampled --samples 10000 --seed 7 --out " + path("a.json")).code, 0);
  ASSERT_EQ(run("cover --depth 12 --mode sampled --samples 10000 --seed 7 --out " + path("b.json")).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_EQ(run("check " + path("a.json") + " --samples 2000 --seed 3").code, 0);

  ASSERT_EQ(run("embed --oracle restrict-mod3 --height 3 --out " + path("c.json")).code, 0);
  ASSERT_EQ(run("embed --oracle restrict-mod3 --height 3 --out " + path("d.json")).code, 0);
  EXPECT_EQ(slurp(path("c.json")), slurp(path("d.json")));
}

TEST_F(Cli, CheckRejectsMutatedDigit) {
  ASSERT_EQ(run("embed --oracle restrict-sparse --height 3 --out " + path("cert.json")).code, 0);
  Json cert = Json::parse(slurp(path("cert.json")));
  // Push y_12 into its forbidden set.
  Json& proof = cert.at("proofs").at(10);
  ASSERT_EQ(proof.at("n"), 12);
  ASSERT_FALSE(proof.at("forbidden").empty());
  cert.at("y").at(10) = proof.at("forbidden").at(0);
  std::ofstream(path("bad.json")) << cert.dump(2);
  const CliResult r = run("check " + path("bad.json"));
  EXPECT_EQ(r.code, 1);
  const Json err = Json::parse(r.err);
  bool at_12 = false;
  for (const Json& f : err.at("failures")) at_12 = at_12 || f.at("position") == 12;
  EXPECT_TRUE(at_12) << r.err;
}

TEST_F(Cli, CheckRejectsTamperedCover) {
  ASSERT_EQ(run("cover --depth 6 --out " + path("cover.json")).code, 0);
  Json cover = Json::parse(slurp(path("cover.json")));
  cover.at("slaloms").erase(0);
  std::ofstream(path("bad.json")) << cover.dump(2);
  const CliResult r = run("check " + path("bad.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(Json::parse(r.err).contains("counterexample"));
}

TEST_F(Cli, CheckTruncatedJsonIsParseError) {
  ASSERT_EQ(run("embed --oracle cantor-scaled --height 2 --out " + path("cert.json")).code, 0);
  const std::string text = slurp(path("cert.json"));
  std::ofstream(path("cut.json")) << text.substr(0, text.size() / 2);
  const CliResult r = run("check " + path("cut.json"));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(Json::parse(r.err).at("error"), "parse");
  EXPECT_EQ(run("check " + path("missing.json")).code, 2);
}

TEST_F(Cli, SlalomFile) {
  const CliResult r = run("slalom --in " + kFixtures + "/slalom-example.json --out " + path("s.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(run("check " + path("s.json")).code, 0);
  EXPECT_EQ(Json::parse(slurp(path("s.json"))).at("source"), "slalom");
}

TEST_F(Cli, OracleList) {
  const CliResult r = run("oracles");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("cantor-scaled"), std::string::npos);
  EXPECT_NE(r.out.find("restrict-binary"), std::string::npos);
}

}  // namespace
