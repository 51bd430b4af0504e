#include <gtest/gtest.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cic/curvature.hpp"
#include "cic/profile.hpp"
#include "cli.hpp"
#include "json.hpp"

using namespace cic;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "cic");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) cells.push_back(cell);
  return cells;
}

double to_double(const std::string& s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  EXPECT_EQ(res.ec, std::errc{}) << s;
  return v;
}

class SeedGuard {
 public:
  explicit SeedGuard(const char* value) { setenv("CIC_SEED", value, 1); }
  ~SeedGuard() { unsetenv("CIC_SEED"); }
};

}  // namespace

TEST(Cli, ProbeCylinderCsv) {
  const auto r = run({"probe", "--product", "S3:1 x R1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream is(r.out);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  EXPECT_EQ(header, "manifold,dim,frames,seed,min,max,mean,spread,is_constant");
  const auto cells = split(row, ',');
  ASSERT_EQ(cells.size(), 9u);
  EXPECT_EQ(cells[1], "4");
  EXPECT_EQ(cells[2], "1000");
  EXPECT_EQ(cells[3], "42");
  EXPECT_NEAR(to_double(cells[4]), 2.0, 1e-10);
  EXPECT_NEAR(to_double(cells[5]), 2.0, 1e-10);
  EXPECT_EQ(cells[8], "true");
}

TEST(Cli, ProbeIsByteDeterministic) {
  const auto a = run({"probe", "--product", "S5:1 x R1", "--format", "json"});
  const auto b = run({"probe", "--product", "S5:1 x R1", "--format", "json"});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_FALSE(j.at("is_constant").get<bool>());
  EXPECT_GT(j.at("spread").get<double>(), 1.5);
}

TEST(Cli, SeedFlagAndEnvironment) {
  const auto base = run({"probe", "--product", "S5:1 x R1"});
  const auto other = run({"probe", "--product", "S5:1 x R1", "--seed", "7"});
  EXPECT_NE(base.out, other.out);
  {
    SeedGuard g("7");
    EXPECT_EQ(run({"probe", "--product", "S5:1 x R1"}).out, other.out);
  }
  {
    SeedGuard g("seven");
    EXPECT_EQ(run({"probe", "--product", "S5:1 x R1"}).code, kExitUsage);
  }
}

TEST(Cli, ProbeTensorFile) {
  const auto path = std::filesystem::temp_directory_path() / "cic_cli_tensor.json";
  {
    std::ofstream f(path);
    f << to_json(build_constant_curvature(4, 1.0)).dump();
  }
  const auto r = run({"probe", "--tensor", path.string(), "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("min").get<double>(), 4.0, 1e-10);
  EXPECT_NEAR(j.at("max").get<double>(), 4.0, 1e-10);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"probe", "--tensor", path.string()}).code, kExitUsage);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"probe", "--product", "Q3:1"}).code, kExitUsage);
  EXPECT_EQ(run({"probe"}).code, kExitUsage);
  EXPECT_EQ(run({"probe", "--product", "S3:1 x R1", "--frames", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"probe", "--product", "S3:1 x R1", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(run({"classify", "3", "1", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"classify", "4", "x", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"profile", "trig", "--C", "2", "--alpha", "1.5"}).code, kExitUsage);
  EXPECT_EQ(run({"nonsense"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
}

TEST(Cli, ClassifyWithWitness) {
  const auto r = run({"classify", "4", "1", "3", "--witness"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const auto& o = j.at("outcomes").at(0);
  EXPECT_EQ(o.at("family"), "Trig");
  EXPECT_TRUE(o.at("witness").at("verified").get<bool>());
  EXPECT_EQ(o.at("constraints").at("alpha").at("text"), "(0, 0.5)");
}

TEST(Cli, ClassifyAcceptsFractionsAndNegatives) {
  const auto r = run({"classify", "4", "3/4", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("outcomes").at(0).at("family"), "Trig");

  const auto h = nlohmann::json::parse(run({"classify", "4", "-1", "-4"}).out);
  EXPECT_EQ(h.at("outcomes").at(0).at("tag"), "ConstantCurvature");

  const auto b = nlohmann::json::parse(run({"classify", "4", "4/3", "8/3"}).out);
  EXPECT_EQ(b.at("outcomes").at(0).at("tag"), "Empty");
}

TEST(Cli, ClassifyEmptyCarriesObstruction) {
  const auto r = run({"classify", "4", "1", "1.5", "--witness"});
  ASSERT_EQ(r.code, kExitOk);
  const auto o = nlohmann::json::parse(r.out).at("outcomes").at(0);
  EXPECT_EQ(o.at("tag"), "Empty");
  EXPECT_EQ(o.at("reason"), "C ≤ 2c");
  EXPECT_EQ(o.at("obstruction").at("failure").at("s"), 0.0);
}

TEST(Cli, ProfileCsvRoundTrip) {
  const auto r = run({"profile", "trig", "--C", "2", "--alpha", "0.3", "--c", "0", "--grid", "101"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "s,x,xp,lambda,mu,cic");
  const auto fam = ProfileFamily::trig(2.0, 0.3);
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    const auto cells = split(line, ',');
    ASSERT_EQ(cells.size(), 6u);
    const double s = to_double(cells[0]);
    const auto smp = sample_profile(fam, {0.0, 1}, s);
    EXPECT_EQ(to_double(cells[1]), smp.x);
    EXPECT_EQ(to_double(cells[3]), smp.lambda);
    EXPECT_EQ(to_double(cells[5]), smp.cic);
    ++rows;
  }
  EXPECT_EQ(rows, 101u);
}

TEST(Cli, ProfileLeavingTheDomainFails) {
  const auto r = run({"profile", "trig", "--C", "1.5", "--alpha", "0.2", "--c", "1"});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_EQ(r.out, "s,x,xp,lambda,mu,cic\n");
  EXPECT_NE(r.err.find("leaves the domain at s = 0"), std::string::npos);

  const auto e = run({"profile", "exponential", "--C", "-1", "--A", "1", "--B", "1", "--c", "0"});
  EXPECT_EQ(e.code, kExitFailure);
  EXPECT_NE(e.err.find("|x'| >= 1"), std::string::npos);
  EXPECT_GT(std::count(e.out.begin(), e.out.end(), '\n'), 2);
}

TEST(Cli, ProfileJson) {
  const auto r = run({"profile", "parabolic", "--beta", "2", "--grid", "11", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("samples").size(), 11u);
  for (const auto& smp : j.at("samples")) EXPECT_NEAR(smp.at("cic").get<double>(), 0.0, 1e-12);
}

TEST(Cli, CheckPassesWithFewFrames) {
  const auto r = run({"check", "--frames", "10"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_NE(r.out.find("all suites passed"), std::string::npos);
}
