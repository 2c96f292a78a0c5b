// Copyright 2026 The fockbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include "fockbell/cli.h"
#include "fockbell/pipeline.h"

namespace fockbell::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> v;
  std::istringstream is(line);
  for (std::string c; std::getline(is, c, ',');) v.push_back(c);
  if (!line.empty() && line.back() == ',') v.emplace_back();
  return v;
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e-5), "1e-05");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.3333333333333333");
  EXPECT_EQ(std::stod(format_double(0.2928)), 0.2928);
}

TEST(Response, ResonantSinglePhoton) {
  const Result r = invoke({"response", "--n", "1", "--psi", "auto"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "n,g,tau,psi,sigma_re,sigma_im,kappa_re,kappa_im,abs_sigma2,abs_kappa2");
  EXPECT_EQ(l[1], "1,0.1,1e-05,0.1,1,0,0,0,1,0");
}

TEST(Response, AntiResonantHalfCoupler) {
  const Result r = invoke({"response", "--n", "0", "--tau", "0.5", "--g", "0", "--psi", "3.14159265"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto c = cells(lines(r.out)[1]);
  EXPECT_NEAR(std::stod(c[4]), 1.0 / 3.0, 1e-8);
  EXPECT_NEAR(std::stod(c[8]) + std::stod(c[9]), 1.0, 1e-15);
}

TEST(Response, Json) {
  const Result r = invoke({"response", "--n", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n"], 2);
  EXPECT_NEAR(j["abs_sigma2"].get<double>() + j["abs_kappa2"].get<double>(), 1.0, 1e-12);
}

TEST(Validation, NamesTheField) {
  Result r = invoke({"response", "--tau", "1.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("tau out of range (0,1)"), std::string::npos);
  r = invoke({"truth-table", "--eta", "-0.1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("eta out of range [0,1]"), std::string::npos);
  r = invoke({"truth-table", "--eta-d", "2"});
  EXPECT_NE(r.err.find("eta_d"), std::string::npos);
  r = invoke({"truth-table", "--g", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("g must be non-zero"), std::string::npos);
  r = invoke({"truth-table", "--psi", "abc"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("psi"), std::string::npos);
  r = invoke({"truth-table", "--z2", "-3"});
  EXPECT_NE(r.err.find("z2"), std::string::npos);
  r = invoke({"truth-table", "--arm", "x"});
  EXPECT_NE(r.err.find("arm"), std::string::npos);
  r = invoke({"truth-table", "--format", "xml"});
  EXPECT_NE(r.err.find("format"), std::string::npos);
  EXPECT_EQ(invoke({"truth-table", "--bogus"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
}

TEST(Help, ExitsZero) {
  const Result r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("truth-table"), std::string::npos);
}

TEST(TruthTable, HeaderAndRows) {
  const Result r = invoke({"truth-table", "--z2", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l[0], "label,p_off_off,p_off_on,p_on_off,p_on_on,p_correct");
  const char* names[] = {"PSI_PLUS", "PSI_MINUS", "PHI_PLUS", "PHI_MINUS"};
  for (int i = 0; i < 4; ++i) {
    const auto c = cells(l[i + 1]);
    ASSERT_EQ(c.size(), 6u);
    EXPECT_EQ(c[0], names[i]);
    EXPECT_GE(std::stod(c[5]), 0.999);
    EXPECT_DOUBLE_EQ(std::stod(c[5]), std::stod(c[i + 1]));
  }
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(TruthTable, MatchesLibraryAtPreset) {
  const Result r = invoke({"truth-table"});
  const auto l = lines(r.out);
  int row = 1;
  for (BellLabel label : kBellLabels) {
    const AnalyticRun run = run_analytic(label, PipelineConfig::ideal());
    const auto c = cells(l[row++]);
    for (int s = 0; s < 4; ++s) EXPECT_EQ(std::stod(c[s + 1]), run.probabilities[s]);
  }
}

TEST(TruthTable, BlindFilterMisroutesPhi) {
  const auto l = lines(invoke({"truth-table", "--eta", "0"}).out);
  for (int row : {3, 4}) {
    const auto c = cells(l[row]);
    EXPECT_EQ(std::stod(c[3]) + std::stod(c[4]), 0.0);
    EXPECT_EQ(std::stod(c[5]), 0.0);
  }
}

TEST(TruthTable, Reproducible) {
  EXPECT_EQ(invoke({"truth-table", "--eta-d", "0.7"}).out, invoke({"truth-table", "--eta-d", "0.7"}).out);
}

TEST(TruthTable, JsonIncludesInference) {
  const auto j = nlohmann::json::parse(invoke({"truth-table", "--format", "json"}).out);
  EXPECT_EQ(j["inferred"]["on_on"], "PHI_MINUS");
  EXPECT_EQ(j["rows"].size(), 4u);
  EXPECT_EQ(j["params"]["z2"], 1e4);
}

TEST(Confusion, RowSumsAndDeadDetectors) {
  Result r = invoke({"confusion", "--eta-d", "0.3"});
  ASSERT_EQ(r.code, 0);
  auto l = lines(r.out);
  EXPECT_EQ(l[0], "true_label,PSI_PLUS,PSI_MINUS,PHI_PLUS,PHI_MINUS");
  for (int row = 1; row <= 4; ++row) {
    const auto c = cells(l[row]);
    double sum = 0.0;
    for (int i = 1; i <= 4; ++i) sum += std::stod(c[i]);
    EXPECT_NEAR(sum, 1.0, 1e-10);
  }
  l = lines(invoke({"confusion", "--eta-d", "0"}).out);
  for (int row = 1; row <= 4; ++row) {
    const auto c = cells(l[row]);
    EXPECT_EQ(c[2], "0");
    EXPECT_EQ(c[4], "0");
  }
}

TEST(Confusion, ModerateProbeNearIdentity) {
  const auto l = lines(invoke({"confusion", "--z2", "100"}).out);
  for (int row = 1; row <= 4; ++row) {
    const auto c = cells(l[row]);
    for (int i = 1; i <= 4; ++i) EXPECT_NEAR(std::stod(c[i]), row == i ? 1.0 : 0.0, 1e-3);
  }
}

TEST(Sweep, SingleStepEqualsTruthTable) {
  const auto sweep_lines = lines(invoke({"sweep", "--param", "eta", "--from", "0.2", "--to", "0.9", "--steps", "1"}).out);
  ASSERT_EQ(sweep_lines.size(), 2u);
  const auto header = cells(sweep_lines[0]);
  const auto row = cells(sweep_lines[1]);
  ASSERT_EQ(header.size(), row.size());
  EXPECT_EQ(header.back(), "error");
  EXPECT_EQ(row.back(), "");
  const auto truth = lines(invoke({"truth-table"}).out);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(row[12 + i], cells(truth[i + 1])[5]);
}

TEST(Sweep, LogTauRowsAreAnalytic) {
  const Result r = invoke({"sweep", "--param", "tau", "--from", "1e-6", "--to", "1e-2", "--steps", "5", "--scale", "log"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 6u);
  for (int i = 1; i <= 5; ++i) {
    const auto c = cells(l[i]);
    EXPECT_NEAR(std::stod(c[1]), std::pow(10.0, -6 + (i - 1)), 1e-18 + 1e-15 * std::pow(10.0, -6 + (i - 1)));
    PipelineConfig cfg = PipelineConfig::ideal();
    cfg.filter.tau = std::stod(c[1]);
    double mean = 0.0;
    for (BellLabel label : kBellLabels) mean += run_analytic(label, cfg).p_correct(label) / 4.0;
    EXPECT_EQ(std::stod(c[16]), mean);
  }
}

TEST(Sweep, HoldProductKeepsFilterColumns) {
  const auto l = lines(invoke({"sweep", "--param", "eta", "--from", "0.1", "--to", "0.8", "--steps", "4",
                               "--z2", "200", "--hold-product"}).out);
  ASSERT_EQ(l.size(), 5u);
  for (int i = 2; i <= 4; ++i) {
    for (int col = 8; col < 12; ++col) EXPECT_NEAR(std::stod(cells(l[i])[col]), std::stod(cells(l[1])[col]), 1e-12);
  }
}

TEST(Sweep, ErrorsAndErrorRows) {
  EXPECT_EQ(invoke({"sweep", "--param", "tau", "--from", "0.1", "--to", "0.2", "--steps", "0"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--param", "zz", "--from", "0.1", "--to", "0.2"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--param", "tau", "--from", "0", "--to", "0.2", "--scale", "log"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--param", "g", "--from", "0.1", "--to", "0.2", "--hold-product"}).code, 2);
  const Result r = invoke({"sweep", "--param", "tau", "--from", "0.5", "--to", "1.5", "--steps", "3"});
  ASSERT_EQ(r.code, 0);
  const auto l = lines(r.out);
  EXPECT_EQ(cells(l[1]).back(), "");
  EXPECT_TRUE(l[2].ends_with(",\"tau out of range (0,1)\"")) << l[2];
  EXPECT_EQ(cells(l[3])[1], "1.5");
}

TEST(Shots, JsonShapeAndDeterminism) {
  const Result a = invoke({"shots", "--label", "PSI_PLUS", "--shots", "1000", "--seed", "42"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, invoke({"shots", "--label", "PSI_PLUS", "--shots", "1000", "--seed", "42"}).out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["counts"]["off_off"], 284);
  EXPECT_EQ(j["counts"]["off_on"], 716);
  EXPECT_EQ(j["inferred"]["PSI_MINUS"], 716);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["shots"], 1000);
}

TEST(Shots, ZeroShotsAndSeeds) {
  const auto j = nlohmann::json::parse(invoke({"shots", "--label", "PHI_PLUS", "--shots", "0"}).out);
  for (const char* k : {"off_off", "off_on", "on_off", "on_on"}) EXPECT_EQ(j["counts"][k], 0);
  EXPECT_EQ(invoke({"shots", "--label", "PHI_PLUS", "--seed", "-1"}).code, 0);
  EXPECT_EQ(invoke({"shots", "--label", "PHI_PLUS", "--seed", "18446744073709551615"}).code, 0);
  EXPECT_EQ(invoke({"shots", "--label", "PHI_PLUS", "--seed", "x"}).code, 2);
  EXPECT_EQ(invoke({"shots", "--label", "PHI_PLUS", "--shots", "-5"}).code, 2);
}

TEST(Shots, UnknownLabel) {
  const Result r = invoke({"shots", "--label", "BELL", "--shots", "10"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("label"), std::string::npos);
}

TEST(Shots, PhiMinusWithinThreeSigma) {
  const auto j = nlohmann::json::parse(invoke({"shots", "--label", "PHI_MINUS", "--shots", "100000", "--seed", "3"}).out);
  const double p = run_analytic(BellLabel::kPhiMinus, PipelineConfig::ideal()).at({true, true});
  const double sd = std::sqrt(p * (1.0 - p) * 1e5);
  EXPECT_LE(std::abs(j["counts"]["on_on"].get<double>() - 1e5 * p), 3.0 * sd + 1e-9);
}

TEST(Output, WritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "fockbell_cli_test.csv";
  const Result r = invoke({"confusion", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), invoke({"confusion"}).out);
  std::filesystem::remove(path);
  EXPECT_EQ(invoke({"confusion", "--out", "/nonexistent-dir/x.csv"}).code, 1);
}

TEST(Binary, ExitCodes) {
  const std::string cli = FOCKBELL_CLI_PATH;
  int status = std::system((cli + " response --tau 1.5 >/dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
  status = std::system((cli + " truth-table >/dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(status), 0);
}

}  // namespace
}  // namespace fockbell::cli
