#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fermatfree/cli.hpp"
#include "support.hpp"

using namespace fermatfree;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("fermatfree_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const auto path = temp_dir() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, BoundsCsv) {
  const auto r = run({"bounds", "--qmax", "2", "--csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "q,e_min,m,r,m_min,superlinear_ok,ratio\n2,3,1,1,1,true,3/2\n");
  const auto t = run({"bounds", "--qmax", "32", "--csv"});
  EXPECT_EQ(lines_of(t.out).size(), 19u);
  EXPECT_EQ(run({"bounds", "--qmax", "32", "--csv"}).out, t.out);
  const auto human = run({"bounds", "--qmax", "32"});
  EXPECT_EQ(human.code, 0);
  EXPECT_EQ(lines_of(human.out).size(), 19u);
}

TEST(Cli, CheckAndSplit) {
  const std::string line = write("line_q2.curve", io::format_curve(make_line(FermatContext::from_q(2), Field::make(2, 2))));
  const auto r = run({"check", line});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines_of(r.out).front(), "free=false span=2 splitting=[1,1,-1]");
  EXPECT_NE(r.out.find("free_fast=false\n"), std::string::npos);
  const auto s = run({"split", line});
  EXPECT_EQ(s.out, "E: [1,1,-1] margin=-1 free=false\n");

  const std::string cubic = write("cubic.curve", fixtures::kFreeCubicFile);
  const auto c = run({"check", "--verify-both", cubic});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(lines_of(c.out).front(), "free=true span=4 splitting=[1,1,1]");
  EXPECT_NE(c.out.find("r<=m OK (Lemma: free implies r<=m)"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"bounds"}).code, 2);
  EXPECT_EQ(run({"bounds", "--qmax", "abc"}).code, 2);
  EXPECT_EQ(run({"check", "/nonexistent/file.curve"}).code, 2);
  EXPECT_EQ(run({"search", "--q", "2", "--e", "1", "--field", "GF(2)", "--mode", "sideways"}).code, 2);
  EXPECT_EQ(run({"search", "--q", "2", "--e", "1"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);

  std::string off = fixtures::kFreeCubicFile;
  off.replace(off.rfind("[1,1]"), 5, "[1,0]");
  const auto r = run({"check", write("off.curve", off)});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("NotOnX"), std::string::npos);
  EXPECT_EQ(run({"search", "--q", "6", "--e", "1", "--field", "GF(2)"}).code, 1);
  EXPECT_EQ(run({"search", "--q", "2", "--e", "4", "--field", "GF(2^2)"}).code, 1);  // budget
}

TEST(Cli, SearchWritesReplayableCurves) {
  const auto dir = temp_dir() / "hits";
  std::filesystem::remove_all(dir);
  const auto r = run({"search", "--q", "2", "--e", "3", "--field", "GF(2)", "--mode", "exhaustive", "--mitm", "0,1/2,3",
                      "--threads", "2", "--max-hits", "3", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines_of(r.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[0].rfind("hit 0 assignment=", 0), 0u);
  EXPECT_NE(ls[0].find("free=true"), std::string::npos);
  EXPECT_NE(ls[3].find("truncated=true"), std::string::npos);
  for (int i = 0; i < 3; ++i) {
    const auto file = dir / ("hit_000" + std::to_string(i) + ".curve");
    ASSERT_TRUE(std::filesystem::exists(file));
    const auto c = run({"check", "--verify-both", file.string()});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(lines_of(c.out).front().rfind("free=true span=", 0), 0u);
  }
}

TEST(Cli, SearchModesAndAnsatzFiles) {
  const auto rnd = run({"search", "--q", "2", "--e", "3", "--field", "GF(2)", "--mode", "random:2000:9", "--threads", "1"});
  ASSERT_EQ(rnd.code, 0) << rnd.err;
  EXPECT_NE(rnd.out.find("seed=9"), std::string::npos);
  const auto seeded = run({"search", "--q", "2", "--e", "3", "--field", "GF(2)", "--mode", "random:2000", "--seed", "9",
                           "--threads", "3"});
  auto strip_time = [](const std::string& s) { return s.substr(0, s.rfind("wall_time=")); };
  EXPECT_EQ(strip_time(seeded.out), strip_time(rnd.out));

  const std::string ansatz = write("tied.ansatz", "GF(2^2; 1,1,1)\nq=2\ne=1\nv0, 0\nv0, 0\n0, v1\n0, v1\n");
  const auto a = run({"search", "--q", "2", "--e", "1", "--ansatz", ansatz, "--mitm", "0,2/1,3"});
  EXPECT_EQ(a.code, 1);  // tied variables cross the split
  const auto b = run({"search", "--q", "2", "--e", "1", "--ansatz", ansatz});
  EXPECT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("hits=0"), std::string::npos);
  EXPECT_EQ(run({"search", "--q", "2", "--e", "2", "--ansatz", ansatz}).code, 1);
  EXPECT_EQ(run({"search", "--q", "2", "--e", "3", "--field", "GF(2)", "--symmetry", "--threads", "1"}).code, 0);
}

TEST(Cli, Selftest) {
  const auto r = run({"selftest"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
