#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(STEKLOV_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("steklov_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, MeshCommand) {
  const auto r = run("mesh --domain square --n 8");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("vertices").size(), 81u);
  EXPECT_EQ(doc.at("triangles").size(), 128u);

  const auto dir = scratch_dir("mesh");
  ASSERT_EQ(run("mesh --domain lshape --n 2 --out " + (dir / "l.json").string()).code, 0);
  const auto l = nlohmann::json::parse(read_file(dir / "l.json"));
  EXPECT_EQ(l.at("triangles").size(), 24u);
  EXPECT_EQ(l.at("domain"), "l_shape");

  // bounds from the written file
  const auto b = run("bounds --mesh " + (dir / "l.json").string() + " --k 1");
  EXPECT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("0.5106"), std::string::npos) << b.out;
  EXPECT_NE(b.out.find("0.3443305"), std::string::npos) << b.out;
  fs::remove_all(dir);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("mesh --domain square --n 0").code, 2);
  EXPECT_EQ(run("mesh --domain disk --n 2").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("convergence --domain square --levels 4").code, 2);
  EXPECT_EQ(run("bounds --domain square --n 2 --method fem").code, 2);
  EXPECT_EQ(run("bounds --domain square --n 2 --format xml").code, 2);
  EXPECT_EQ(run("bounds --domain square --n 1 --k 5").code, 2);
  EXPECT_EQ(run("bounds --k 1").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, IoErrors) {
  EXPECT_EQ(run("bounds --mesh \"\"").code, 1);
  EXPECT_EQ(run("bounds --mesh /nonexistent/mesh.json").code, 1);
  EXPECT_EQ(run("bounds --domain square --n 2 --refs /nonexistent/refs.json").code, 1);
}

TEST(Cli, BoundsSquareConforming) {
  const auto r = run("bounds --domain square --n 8 --k 3");
  ASSERT_EQ(r.code, 0);
  for (const char* token : {"0.2042", "0.4059", "0.4543", "0.2401798", "0.2288347", "sqrt2/8"})
    EXPECT_NE(r.out.find(token), std::string::npos) << token << "\n" << r.out;
  // header plus one row for λ1 and one for the degenerate pair
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST(Cli, BoundsSquareCr) {
  const auto r = run("bounds --domain square --n 8 --method cr --k 1");
  ASSERT_EQ(r.code, 0);
  for (const char* token : {"0.4038323", "0.2401793", "0.2311264"})
    EXPECT_NE(r.out.find(token), std::string::npos) << token << "\n" << r.out;
}

TEST(Cli, DeterministicCsv) {
  const auto a = run("convergence --domain lshape --levels 1,2 --method both");
  const auto b = run("convergence --domain lshape --levels 1,2 --method both");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("method,n_coarse,n_fine,quantity,k,order"), std::string::npos);
}

TEST(Cli, JsonOutputAndFiles) {
  const auto dir = scratch_dir("json");
  const auto r = run("convergence --domain square --levels 2,4 --format json --out " + (dir / "c.json").string());
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(read_file(dir / "c.json"));
  ASSERT_EQ(doc.at("levels").size(), 2u);
  EXPECT_EQ(doc.at("command"), "convergence");
  EXPECT_EQ(doc.at("rates").size(), 1u);

  ASSERT_EQ(run("convergence --domain square --levels 2,4 --out " + (dir / "c.csv").string()).code, 0);
  EXPECT_TRUE(fs::exists(dir / "c.csv"));
  EXPECT_TRUE(fs::exists(dir / "c_rates.csv"));

  ASSERT_EQ(run("bounds --domain square --n 2 --no-refs --dump-matrices " + (dir / "m").string()).code, 0);
  EXPECT_TRUE(fs::exists(dir / "m"));
  EXPECT_FALSE(fs::is_empty(dir / "m"));
  fs::remove_all(dir);
}

TEST(Cli, CustomReferences) {
  const auto dir = scratch_dir("refs");
  std::ofstream(dir / "refs.json") << R"({"unit_square": {"values": [0.2, 1.0, 1.0], "source": "test"}})";
  const auto r = run("bounds --domain square --n 2 --k 1 --refs " + (dir / "refs.json").string());
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0.2000000"), std::string::npos) << r.out;
  const auto none = run("bounds --domain square --n 2 --k 1 --no-refs");
  EXPECT_EQ(none.out.find("0.2400790"), std::string::npos);
  fs::remove_all(dir);
}
