#include <gtest/gtest.h>
#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("umcert_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args, const fs::path& out) const {
    const std::string cmd = std::string(UMCERT_CLI) + " " + args + " --out " + out.string() +
                            " >" + (dir_ / "stdout.txt").string() + " 2>" + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  int run(const std::string& args) const { return run(args, dir_); }

  std::string read(const std::string& name) const { return slurp(dir_ / name); }
  static std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(Cli, TruncationTable) {
  ASSERT_EQ(run("truncations --k-max 5"), 0);
  const std::string csv = read("truncations.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
  EXPECT_NE(csv.find("3,7,1,"), std::string::npos);
  const auto j = nlohmann::json::parse(read("truncations.json"));
  EXPECT_EQ(j["records"].size(), 5u);
  EXPECT_EQ(j["records"][2]["p"], "110001");
  EXPECT_EQ(j["records"][1]["alpha"], "11/100");
  EXPECT_TRUE(j["all_pass"].get<bool>());
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("truncations --k-max 0"), 2);
  EXPECT_EQ(run("truncations --k-max 9"), 2);
  EXPECT_NE(read("stderr.txt").find("8"), std::string::npos);
  EXPECT_EQ(run("truncations --bogus"), 2);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("certify --alpha 0,1 --kind product --k-max 3"), 2);
  EXPECT_EQ(run("certify --alpha sqrt2 --kind quotient --k-max 3"), 2);
  EXPECT_EQ(run("certify --minpoly -1,0,1 --root-index 0 --k-max 3"), 2);
  EXPECT_EQ(run("probe --d 4 --h-max 3"), 2);
  EXPECT_EQ(run("truncations --k-max 3 --emit xml"), 2);
}

TEST_F(Cli, CertifyWritesRecords) {
  ASSERT_EQ(run("certify --alpha sqrt2 --kind product --k-max 6"), 0);
  const auto j = nlohmann::json::parse(read("certify.json"));
  ASSERT_EQ(j["records"].size(), 6u);
  for (const auto& r : j["records"]) {
    EXPECT_EQ(r["eq3"]["verdict"], "pass");
    EXPECT_EQ(r["eq5"]["verdict"], "pass");
  }
  EXPECT_EQ(j["alpha"]["minpoly"], nlohmann::json::array({"-2", "0", "1"}));
  EXPECT_EQ(j["records"][1]["gamma_k"]["minpoly"], nlohmann::json::array({"-121", "0", "5000"}));
  EXPECT_EQ(j["verdicts"]["exit_status"], 0);

  ASSERT_EQ(run("certify --minpoly -2,0,1 --root-index 1 --kind sum --k-max 4 --emit csv"), 0);
  EXPECT_FALSE(fs::exists(dir_ / "certify.json.tmp"));
  EXPECT_NE(read("certify.csv").find("2,1.98790e+4"), std::string::npos);
}

TEST_F(Cli, StrictModeCountsEveryReading) {
  EXPECT_EQ(run("certify --alpha sqrt2 --kind product --k-max 4"), 0);
  EXPECT_EQ(run("certify --alpha sqrt2 --kind product --k-max 4 --strict"), 1);
}

TEST_F(Cli, ParallelOutputsAreByteIdentical) {
  const fs::path a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(run("oracle --alpha sqrt2 --kind product --n 1 --h-max 80 --jobs 1", a), 0);
  ASSERT_EQ(run("oracle --alpha sqrt2 --kind product --n 1 --h-max 80 --jobs 8", b), 0);
  EXPECT_EQ(slurp(a / "oracle.json"), slurp(b / "oracle.json"));
  EXPECT_EQ(slurp(a / "oracle.csv"), slurp(b / "oracle.csv"));
  const auto j = nlohmann::json::parse(slurp(a / "oracle.json"));
  EXPECT_TRUE(j["exceptions"].empty());
  EXPECT_EQ(j["bound_exponent"], 10);
}

TEST_F(Cli, ScanProbeDecompose) {
  ASSERT_EQ(run("scan --target liouville --n 1 --ladder 10,100"), 0);
  const std::string scan = read("scan.csv");
  EXPECT_NE(scan.find("-1 9,0,9,"), std::string::npos);
  EXPECT_NE(scan.find("-11 100,0,100,"), std::string::npos);

  ASSERT_EQ(run("probe --d 2 --h-max 5 --epsilon 0"), 0);
  const auto p = nlohmann::json::parse(read("probe.json"));
  EXPECT_FALSE(p["rows"].empty());

  std::ofstream(dir_ / "alt12.txt") << "base=10\n1 2\n";
  ASSERT_EQ(run("decompose --digits " + (dir_ / "alt12.txt").string() + " --m 3 --k-max 5"), 0);
  const auto d = nlohmann::json::parse(read("decompose.json"));
  EXPECT_EQ(d["left"]["algebraic_part"]["minpoly"], nlohmann::json::array({"-1", "0", "0", "4"}));
  EXPECT_TRUE(d["pass"].get<bool>());
}

}  // namespace
