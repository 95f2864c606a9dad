#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "fracspec/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fracspec");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = fracspec::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST(Cli, ValidateScale4) {
  const auto r = run({"validate", "--spec", "scale4"});
  EXPECT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["report"]["ok"].get<bool>());
  EXPECT_TRUE(doc["failing"].empty());
}

TEST(Cli, ValidateMiddleThirdFails) {
  const auto r = run({"validate", "--spec", "middlethird"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(nlohmann::json::parse(r.out)["failing"].empty());
}

TEST(Cli, SpectrumSigmaTable) {
  const auto r = run({"spectrum", "--spec", "scale4", "--s", "2", "--enum-depth", "12", "--product-depth", "30"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.front(), "depth,sigma,increment");
  ASSERT_EQ(rows.size(), 13u);
  const auto last = rows.back();
  EXPECT_EQ(last.substr(0, 3), "12,");
  const double sigma = std::stod(last.substr(3, last.find(',', 3) - 3));
  EXPECT_NEAR(sigma, 1.0, 1e-3);
}

TEST(Cli, SpectrumFrequencyList) {
  const auto path = testing::TempDir() + "freqs.csv";
  const auto r = run({"spectrum", "--enum-depth", "2", "--frequencies-out", path});
  ASSERT_EQ(r.code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "index,xi1\n0,0\n1,1\n2,4\n3,5\n");
}

TEST(Cli, CuntzMiddleThirdListsFailures) {
  const auto r = run({"cuntz", "--spec", "middlethird"});
  EXPECT_EQ(r.code, 1);
  const auto doc = nlohmann::json::parse(r.out);
  const auto failing = doc["failing"].get<std::vector<std::string>>();
  EXPECT_NE(std::find(failing.begin(), failing.end(), "completeness"), failing.end());
  EXPECT_GT(doc["relations"]["completeness"].get<double>(), 0.4);
}

TEST(Cli, CuntzScale4Passes) {
  const auto r = run({"cuntz", "--spec", "scale4", "--box", "16"});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["states"][0]["value"]["re"].get<double>(), 1.0);
}

TEST(Cli, TransformGrid) {
  const auto r = run({"transform", "--grid", "0:4:5"});
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], "t,re,im,abs,backend,depth");
  EXPECT_EQ(rows[1], "0,1,0,1,product,30");
  EXPECT_EQ(rows[2], "1,0,0,0,product,30");
  EXPECT_EQ(rows[5], "4,0,0,0,product,30");
}

TEST(Cli, TransformJsonBothBackends) {
  const auto r = run({"transform", "--spec", "scale4x2", "--grid", "0:1:2,1/2:1/2:1", "--backend", "both",
                      "--quadrature-depth", "6", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_EQ(doc[1]["t1"].get<double>(), 1.0);
  EXPECT_EQ(doc[1]["t2"].get<double>(), 0.5);
  EXPECT_LT(doc[1]["discrepancy"].get<double>(), 1e-3);
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> args{"transform", "--grid", "-3:3:61", "--format", "json"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> pair{"pair", "--spec", "scale4"};
  EXPECT_EQ(run(pair).out, run(pair).out);
}

TEST(Cli, PairScale4) {
  const auto r = run({"pair", "--spec", "scale4"});
  EXPECT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["tiling"]["fundamental_domain_exact"].get<bool>());
  EXPECT_EQ(doc["orthogonality"]["exact_zeros"], doc["orthogonality"]["pairs"]);
}

TEST(Cli, MeasureCsv) {
  const auto r = run({"measure", "--spec", "scale4", "--quadrature-depth", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x1,weight\n0,0.25\n0.5,0.25\n0.125,0.25\n0.625,0.25\n");
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"spectrum", "--s", "1/0"}).code, 2);
  EXPECT_EQ(run({"spectrum", "--s", "1,2"}).code, 2);
  EXPECT_EQ(run({"transform", "--grid", "0:1"}).code, 2);
  EXPECT_EQ(run({"transform", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"validate", "--spec", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(run({"spectrum", "--product-depth", "100000"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
