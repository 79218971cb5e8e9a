// Copyright 2026 The fairot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fairot/pipeline.hpp"

namespace fairot {
namespace {

namespace fs = std::filesystem;

const std::string kData = FAIROT_TEST_DATA;

std::string tmp_path(const std::string& name) {
  fs::create_directories(FAIROT_TEST_TMPDIR);
  return (fs::path(FAIROT_TEST_TMPDIR) / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

RunConfig fixture_config() {
  RunConfig cfg;
  cfg.input = kData + "/four_row.csv";
  cfg.id_column = "id";
  cfg.grid = 2;
  cfg.min_group_size = 2;
  return cfg;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <typename F>
Run run(F f, const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = f(cfg, out, err);
  return {code, out.str(), err.str()};
}

TEST_CASE("transform appends fair scores and keeps input bytes") {
  auto cfg = fixture_config();
  cfg.theta = 1.0;
  const auto r = run(run_transform, cfg);
  REQUIRE(r.code == kExitOk);
  CHECK(r.out == "id,group,score,fair_score\na,A,0,1\nb,A,2,3\nc,B,2,1\nd,B,4,3\n");

  cfg.theta = 0.5;
  const auto half = run(run_transform, cfg);
  CHECK(half.out == "id,group,score,fair_score\na,A,0,0.5\nb,A,2,2.5\nc,B,2,1.5\nd,B,4,3.5\n");
}

TEST_CASE("transform preserves quoting, CRLF and extra columns") {
  const auto in = tmp_path("quoted.csv");
  write(in, "name,group,score,note\r\n\"x, y\",A,0,\"keep \"\"me\"\"\"\r\nz,B,1.50,\r\n");
  RunConfig cfg;
  cfg.input = in;
  cfg.min_group_size = 1;
  const auto r = run(run_transform, cfg);
  REQUIRE(r.code == kExitOk);
  CHECK(r.out == "name,group,score,note,fair_score\r\n\"x, y\",A,0,\"keep \"\"me\"\"\",0\r\n"
                 "z,B,1.50,,1.5\r\n");
}

TEST_CASE("transform writes output and report files deterministically") {
  auto cfg = fixture_config();
  cfg.theta = 0.5;
  cfg.output = tmp_path("out1.csv");
  cfg.report = tmp_path("rep1.json");
  cfg.selection = SelectionRule::at_threshold(2.0);
  REQUIRE(run(run_transform, cfg).code == kExitOk);
  const auto csv1 = slurp(cfg.output);
  const auto json1 = slurp(cfg.report);
  REQUIRE(run(run_transform, cfg).code == kExitOk);
  CHECK(slurp(cfg.output) == csv1);
  CHECK(slurp(cfg.report) == json1);
  CHECK(json1.find("\"individual_fairness_error\"") != std::string::npos);
  CHECK(json1.find("\"group_sizes\"") != std::string::npos);
  CHECK(json1.find("\"rule\"") != std::string::npos);
}

TEST_CASE("report goes to stdout when the CSV goes to a file") {
  auto cfg = fixture_config();
  cfg.output = tmp_path("out2.csv");
  const auto r = run(run_transform, cfg);
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.front() == '{');
}

TEST_CASE("small groups warn but still run") {
  auto cfg = fixture_config();
  cfg.min_group_size = 100;
  cfg.output = tmp_path("out3.csv");
  const auto r = run(run_transform, cfg);
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("\"warnings\"") != std::string::npos);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("validation errors exit with status 2") {
  RunConfig missing;
  missing.input = kData + "/missing_group_row7.csv";
  const auto r = run(run_transform, missing);
  CHECK(r.code == kExitInvalid);
  CHECK(r.err.find("row 7") != std::string::npos);

  auto theta = fixture_config();
  theta.theta = 1.5;
  CHECK(run(run_transform, theta).code == kExitInvalid);

  auto over = fixture_config();
  over.theta_overrides[GroupKey{{"Z"}}] = 1.0;
  CHECK(run(run_transform, over).code == kExitInvalid);

  auto column = fixture_config();
  column.score_columns = {"nope"};
  CHECK(run(run_transform, column).code == kExitInvalid);

  auto nofile = fixture_config();
  nofile.input = kData + "/absent.csv";
  CHECK(run(run_transform, nofile).code == kExitInvalid);

  const auto bad = tmp_path("bad_score.csv");
  write(bad, "group,score\nA,1\nB,x\n");
  RunConfig bad_cfg;
  bad_cfg.input = bad;
  const auto b = run(run_transform, bad_cfg);
  CHECK(b.code == kExitInvalid);
  CHECK(b.err.find("row 2") != std::string::npos);
}

TEST_CASE("ids default to row numbers") {
  const auto path = tmp_path("noid.csv");
  write(path, "group,score\nA,1\nB,2\n");
  RunConfig cfg;
  cfg.input = path;
  const auto loaded = load_input(cfg);
  CHECK(loaded.population.id(0) == "row-1");
  CHECK(loaded.population.id(1) == "row-2");
}

TEST_CASE("intersectional group columns") {
  const auto path = tmp_path("inter.csv");
  write(path, "sex,race,score\nf,x,1\nf,y,2\nm,x,3\nf,x,4\n");
  RunConfig cfg;
  cfg.input = path;
  cfg.group_columns = {"sex", "race"};
  const auto loaded = load_input(cfg);
  CHECK(loaded.population.group_count() == 3);
  CHECK(loaded.population.group_keys()[0].label() == "f|x");
}

TEST_CASE("multi-dimensional transform") {
  const auto path = tmp_path("nd.csv");
  std::string text = "group,s1,s2\n";
  for (int i = 0; i < 12; ++i) {
    text += "A," + std::to_string(0.05 * i) + "," + std::to_string(0.5 - 0.03 * i) + "\n";
    text += "B," + std::to_string(1 + 0.05 * i) + "," + std::to_string(1.5 - 0.02 * i) + "\n";
  }
  write(path, text);
  RunConfig cfg;
  cfg.input = path;
  cfg.score_columns = {"s1", "s2"};
  cfg.theta = 1.0;
  const auto r = run(run_transform, cfg);
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("group,s1,s2,fair_score_s1,fair_score_s2\n", 0) == 0);
  cfg.theta = 0.0;
  const auto zero = run(run_transform, cfg);
  REQUIRE(zero.code == kExitOk);
  CHECK(zero.out.find("A,0.000000,0.500000,0,0.5\n") != std::string::npos);

  const auto bary = run(run_barycenter, cfg);
  REQUIRE(bary.code == kExitOk);
  CHECK(bary.out.rfind("mass,s1,s2\n", 0) == 0);
}

TEST_CASE("audit prints only the report") {
  auto cfg = fixture_config();
  cfg.theta = 1.0;
  const auto r = run(run_audit, cfg);
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.front() == '{');
  CHECK(r.out.find("fair_score") == std::string::npos);
}

TEST_CASE("sweep emits one row per theta") {
  auto cfg = fixture_config();
  cfg.sweep_thetas = {0.0, 0.5, 1.0};
  cfg.selection = SelectionRule::at_threshold(2.0);
  const auto r = run(run_sweep, cfg);
  REQUIRE(r.code == kExitOk);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "theta,individual_fairness_error,group_fairness_w2,group_fairness_ks,"
        "utility_loss_mean_abs,utility_loss_w2,selection_ratio");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("barycenter csv") {
  const auto r = run(run_barycenter, fixture_config());
  REQUIRE(r.code == kExitOk);
  CHECK(r.out == "rank,quantile\n0.25,1\n0.75,3\n");
}

TEST_CASE("synth output feeds back into transform") {
  RunConfig cfg;
  cfg.synth_groups = two_gaussian_scenario(30);
  cfg.seed = 4;
  cfg.output = tmp_path("synth.csv");
  REQUIRE(run(run_synth, cfg).code == kExitOk);
  const auto text = slurp(cfg.output);
  CHECK(text.rfind("id,group,score\nA-0,A,", 0) == 0);

  RunConfig again = cfg;
  again.output = tmp_path("synth2.csv");
  REQUIRE(run(run_synth, again).code == kExitOk);
  CHECK(slurp(again.output) == text);

  RunConfig t;
  t.input = cfg.output;
  t.id_column = "id";
  t.theta = 0.3;
  CHECK(run(run_transform, t).code == kExitOk);
}

TEST_CASE("verify passes on the fixture and catches corruption") {
  auto cfg = fixture_config();
  const auto ok = run(run_verify, cfg);
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("FAIL") == std::string::npos);

  cfg.corrupt_barycenter = true;
  const auto bad = run(run_verify, cfg);
  CHECK(bad.code == kExitFailure);
  CHECK(bad.out.find("FAIL") != std::string::npos);

  RunConfig big;
  big.input = kData + "/nine_per_group.csv";
  const auto refused = run(run_verify, big);
  CHECK(refused.code == kExitInvalid);
  CHECK(refused.err.find("refused") != std::string::npos);
}

TEST_CASE("non-converged transport exits with status 1") {
  const auto path = tmp_path("nd_hard.csv");
  std::string text = "group,s1,s2\n";
  for (int i = 0; i < 8; ++i) {
    text += "A," + std::to_string(0.1 * i) + "," + std::to_string(0.3 * (i % 3)) + "\n";
    text += "B," + std::to_string(2 + 0.1 * i) + "," + std::to_string(0.2 * (i % 4)) + "\n";
  }
  write(path, text);
  RunConfig cfg;
  cfg.input = path;
  cfg.score_columns = {"s1", "s2"};
  cfg.theta = 1.0;
  cfg.nd.sinkhorn.max_iter = 1;
  cfg.nd.sinkhorn.tol = 1e-14;
  CHECK(run(run_transform, cfg).code == kExitFailure);
}

TEST_CASE("serial and openmp backends give identical output") {
  RunConfig cfg;
  cfg.synth_groups = two_gaussian_scenario(200);
  cfg.output = tmp_path("backend_in.csv");
  REQUIRE(run(run_synth, cfg).code == kExitOk);
  RunConfig t;
  t.input = cfg.output;
  t.theta = 0.6;
  t.backend = kernels::Backend::serial;
  const auto a = run(run_transform, t);
  t.backend = kernels::Backend::openmp;
  const auto b = run(run_transform, t);
  CHECK(a.out == b.out);
}

}  // namespace
}  // namespace fairot
