#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "crgeom/cli/commands.hpp"

using namespace crgeom;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const json* find_check(const json& report, const std::string& name) {
  for (const auto& c : report["checks"])
    if (c["name"] == name) return &c;
  return nullptr;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(CliVerify, PaperExamplePasses) {
  const auto r = run({"--emit", "json", "verify", "--signature", "2,2"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["overall"], "pass");
  EXPECT_TRUE(j.contains("conventions"));
  const json* c = find_check(j, "R_1^2_{11bar} == -4");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ((*c)["status"], "pass");
  EXPECT_EQ((*c)["residual_summary"], "-4");
  for (const auto& chk : j["checks"]) {
    EXPECT_TRUE(chk.contains("paper_anchor"));
    EXPECT_FALSE(chk.contains("runtime_ms"));
  }
}

TEST(CliVerify, FamilyMembersPass) {
  for (std::string sig : {"2,3", "3,3", "lorentzian:2", "lorentzian:3"}) {
    const auto r = run({"verify", "--signature", sig});
    EXPECT_EQ(r.code, cli::kOk) << sig << "\n" << r.out << r.err;
    EXPECT_NE(r.out.find("overall: pass"), std::string::npos) << sig;
  }
}

TEST(CliVerify, UsageErrors) {
  EXPECT_EQ(run({"verify", "--signature", "1,1"}).code, cli::kUsage);
  EXPECT_EQ(run({"verify", "--signature", "3,2"}).code, cli::kUsage);
  EXPECT_EQ(run({"verify"}).code, cli::kUsage);
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"--emit", "xml", "verify", "--signature", "2,2"}).code, cli::kUsage);
}

TEST(CliVerify, ByteStableOutput) {
  const auto a = run({"--emit", "json", "verify", "--signature", "2,2"});
  const auto b = run({"--emit", "json", "verify", "--signature", "2,2"});
  EXPECT_EQ(a.out, b.out);
  const auto t = run({"--timings", "--emit", "json", "verify", "--signature", "2,2"});
  for (const auto& chk : json::parse(t.out)["checks"]) EXPECT_TRUE(chk.contains("runtime_ms"));
}

TEST(CliInvariants, Targets) {
  const auto conn = run({"invariants", "--example", "pq:2,2", "--target", "connection"});
  ASSERT_EQ(conn.code, cli::kOk);
  EXPECT_NE(conn.out.find("omega[1][2] = 4*zb1*theta1\n"), std::string::npos);
  EXPECT_NE(conn.out.find("A = 0\n"), std::string::npos);

  const auto ricci = run({"invariants", "--target", "ricci"});
  ASSERT_EQ(ricci.code, cli::kOk);
  std::istringstream lines(ricci.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    EXPECT_EQ(line.substr(line.size() - 4), " = 0") << line;
  }
  EXPECT_EQ(count, 16);

  const auto levi = run({"invariants", "--target", "levi"});
  EXPECT_NE(levi.out.find("h[1][1] = 4*z1*zb1\n"), std::string::npos);
  EXPECT_NE(run({"invariants", "--target", "curvature"}).out.find("R[1][2][1][1] = -4"), std::string::npos);
  EXPECT_EQ(run({"invariants", "--target", "chern"}).out, "S[1][2][1][1] = -4\n");
  EXPECT_EQ(run({"invariants", "--target", "torsion"}).code, cli::kUsage);
}

TEST(CliFlow, DefaultsAndFiles) {
  const std::string csv = testing::TempDir() + "crgeom_flow.csv";
  const std::string js = testing::TempDir() + "crgeom_flow.json";
  const auto r = run({"--emit", "json", "flow", "--seeds", "20", "--csv", csv, "--json", js});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_NEAR(j["rates"]["z1"].get<double>(), 1.0, 0.01);
  EXPECT_EQ(slurp(js), r.out);
  const std::string c = slurp(csv);
  EXPECT_EQ(c.rfind("tau,t,z1_re,", 0), 0u);
  std::remove(csv.c_str());
  std::remove(js.c_str());
}

TEST(CliFlow, SeedControlsOutput) {
  const auto a = run({"--emit", "json", "--seed", "7", "flow", "--seeds", "5"});
  const auto b = run({"--emit", "json", "flow", "--seeds", "5", "--seed", "7"});
  const auto c = run({"--emit", "json", "flow", "--seeds", "5", "--seed", "8"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
}

TEST(CliFlow, ParameterErrors) {
  EXPECT_EQ(run({"flow", "--alpha", "-5", "--beta", "-1"}).code, cli::kUsage);
  EXPECT_EQ(run({"flow", "--alpha", "1"}).code, cli::kUsage);
  EXPECT_EQ(run({"flow", "--seeds", "0"}).code, cli::kUsage);
  EXPECT_EQ(run({"flow", "--beta", "x/2"}).code, cli::kUsage);
  EXPECT_EQ(run({"flow", "--seeds", "3", "--alpha", "-1/2", "--beta", "-1/3"}).code, cli::kOk);
}

TEST(CliGeodesic, LeafDeviation) {
  const auto r = run({"--emit", "json", "geodesic", "--example", "pq:2,2", "--leaf"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_LT(j["max_leaf_deviation"].get<double>(), 1e-8);
  EXPECT_EQ(j["leaf"], "z2");
}

TEST(CliGeodesic, ExplicitStartAndErrors) {
  EXPECT_EQ(run({"geodesic", "--start", "0,1,0,0,0", "--tangent", "0,1,0,0", "--grid", "3"}).code, cli::kOk);
  EXPECT_EQ(run({"geodesic", "--start", "0,1,0,0,0", "--tangent", "1,0,0,0", "--grid", "3"}).code, cli::kData);
  EXPECT_EQ(run({"geodesic", "--start", "0,1", "--tangent", "0,1"}).code, cli::kUsage);
  EXPECT_EQ(run({"geodesic"}).code, cli::kUsage);
  EXPECT_EQ(run({"geodesic", "--start", "i,0,0,0,0", "--tangent", "0,1,0,0"}).code, cli::kUsage);
}

TEST(CliSchwarzian, MapsAndErrors) {
  const auto mob = run({"schwarzian", "--map", "(2*z+1)/(z-3)"});
  EXPECT_EQ(mob.code, cli::kOk);
  EXPECT_EQ(mob.out, "0\n");
  const auto cube = run({"--emit", "json", "schwarzian", "--map", "z^3", "--compose-with", "z^2+1"});
  ASSERT_EQ(cube.code, cli::kOk);
  const json j = json::parse(cube.out);
  EXPECT_EQ(j["chain_rule_residual"], "0");
  EXPECT_EQ(run({"schwarzian", "--map", "(z+"}).code, cli::kData);
  EXPECT_EQ(run({"schwarzian", "--map", "1/(z-z)"}).code, cli::kData);
  EXPECT_EQ(run({"schwarzian"}).code, cli::kUsage);
}
