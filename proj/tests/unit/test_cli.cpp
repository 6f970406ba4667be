#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "nodom/cli.hpp"

using namespace nodom;

namespace {

struct Result {
  int code;
  json report;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  json j;
  try {
    j = json::parse(out.str());
  } catch (const json::exception&) {
    j = json{{"raw", out.str()}};
  }
  return {code, j, err.str()};
}

json stable(json j) {
  j.erase("runtime_ms");
  j.erase("version");
  return j;
}

}  // namespace

TEST(Cli, Constants) {
  const auto r = run({"constants"});
  ASSERT_EQ(r.code, 0) << r.report.dump();
  EXPECT_EQ(r.report.at("command"), "constants");
  EXPECT_NEAR(r.report.at("outputs").at("x1").get<double>(), 0.5814207097, 1e-9);
  EXPECT_NEAR(r.report.at("outputs").at("x0").get<double>(), 0.8844140966, 1e-9);
  EXPECT_TRUE(r.report.at("seed").is_null());
  EXPECT_EQ(r.report.at("version"), cli::kVersion);
  EXPECT_TRUE(r.report.at("runtime_ms").is_number_integer());
  EXPECT_NE(r.err.find("x1"), std::string::npos);
}

TEST(Cli, Threshold) {
  const auto r = run({"threshold", "--grid", "2000"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.report.at("outputs").at("covers_0_65").get<bool>());
  EXPECT_LE(r.report.at("outputs").at("max_excess_at_0_65").get<double>(), 0.0);
}

TEST(Cli, Bound) {
  const auto r = run({"bound", "--gamma", "0.5"});
  ASSERT_EQ(r.code, 0);
  const auto& o = r.report.at("outputs");
  EXPECT_NEAR(o.at("chain_bound").get<double>(), o.at("symmetric_value").get<double>(), 1e-12);
  EXPECT_EQ(run({"bound", "--gamma", "0.5", "--alpha", "2.5"}).code, 1);
}

TEST(Cli, Verify) {
  const auto r = run({"verify", "--gamma", "0.5", "--samples", "200", "--seed", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.report.at("outputs").at("violations"), 0);
  EXPECT_EQ(r.report.at("seed"), 3);
}

TEST(Cli, QuadraticDifferential) {
  const auto svg = (std::filesystem::temp_directory_path() / "nodom_cli_test.svg").string();
  const auto r = run({"qd", "--gamma", "0.5", "--svg", svg});
  ASSERT_EQ(r.code, 0) << r.report.dump();
  const auto& o = r.report.at("outputs");
  EXPECT_EQ(o.at("zeros").size(), 4u);
  EXPECT_EQ(o.at("critical_edges"), 6);
  for (const char* p : {"0", "+1", "-1", "inf"}) {
    ASSERT_TRUE(o.at("circular_boundaries").contains(p)) << p;
    EXPECT_LE(o.at("circular_boundaries").at(p).at("conj_symmetry_error").get<double>(), 1e-6);
  }
  std::ifstream f(svg);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_NE(ss.str().find("<svg"), std::string::npos);
  std::filesystem::remove(svg);
  EXPECT_EQ(run({"qd", "--gamma", "1"}).report.at("error").at("type"), "domain");
  EXPECT_EQ(run({"qd", "--gamma", "0.5", "--walks", "10"}).code, 1);
}

TEST(Cli, Radius) {
  const auto r = run({"radius", "--shape", R"({"kind":"disk","center":[0,0],"radius":2})", "--point", "0.5,0",
                      "--walks", "4000", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.report.dump();
  EXPECT_NEAR(r.report.at("outputs").at("analytic").get<double>(), (4.0 - 0.25) / 2.0, 1e-14);
  EXPECT_LE(std::abs(r.report.at("outputs").at("z_score").get<double>()), 4.0);
  const auto inf = run({"radius", "--shape", R"({"kind":"exterior_disk","center":[0,0],"radius":2})", "--point",
                        "inf", "--walks", "2000", "--seed", "5"});
  ASSERT_EQ(inf.code, 0) << inf.report.dump();
  EXPECT_NEAR(inf.report.at("outputs").at("analytic").get<double>(), 0.5, 1e-14);
}

TEST(Cli, ErrorObjects) {
  auto r = run({"radius", "--shape", "{not json", "--point", "0,0", "--walks", "10", "--seed", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.report.at("error").contains("message"));
  r = run({"radius", "--shape", R"({"kind":"disk","center":[0,0],"radius":1})", "--point", "3,0", "--walks",
           "10", "--seed", "1"});
  EXPECT_EQ(r.code, 1);
  r = run({"bound", "--gamma", "0.5", "--bogus"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.report.at("error").at("type"), "usage");
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"nonsense"}).code, 1);
}

TEST(Cli, OutFile) {
  const auto path = (std::filesystem::temp_directory_path() / "nodom_cli_test.json").string();
  std::ostringstream out, err;
  ASSERT_EQ(cli::run({"--out", path, "bound", "--gamma", "0.3"}, out, err), 0);
  EXPECT_TRUE(out.str().empty());
  std::ifstream f(path);
  const auto j = json::parse(f);
  EXPECT_EQ(j.at("command"), "bound");
  std::filesystem::remove(path);
}

TEST(Cli, DeterministicAcrossThreads) {
  const std::vector<std::string> a{"verify", "--gamma", "0.6", "--samples", "500", "--seed", "8"};
  auto b = a;
  b.insert(b.begin(), {"--threads", "3"});
  EXPECT_EQ(stable(run(a).report), stable(run(b).report));
  const std::vector<std::string> c{"radius", "--shape", R"({"kind":"disk","center":[0.2,0],"radius":1})",
                                   "--point", "0,0", "--walks", "3000", "--seed", "2"};
  auto d = c;
  d.insert(d.begin(), {"--threads", "4"});
  EXPECT_EQ(stable(run(c).report), stable(run(d).report));
}
