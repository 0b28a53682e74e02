// Copyright 2026 The fplab Authors
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

#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "fplab/construction.h"
#include "fplab/engine.h"
#include "fplab/errors.h"
#include "fplab/io.h"

using namespace fplab;

namespace {

PayoffMatrix K(std::size_t n) { return BuildK(ConstructionParams{n, 0}); }

std::filesystem::path TempDir() {
  const auto dir = std::filesystem::temp_directory_path() / "fplab_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("integers round-trip through JSON") {
  CHECK(IntegerToJson(Integer(42)).is_number_integer());
  const Integer big = Integer::Pow(10, 30);
  CHECK(IntegerToJson(big).is_string());
  CHECK(IntegerFromJson(IntegerToJson(big)) == big);
  CHECK(IntegerToJson(Integer(int64_t{1} << 53)).is_string());
  CHECK(IntegerFromJson(Json("-17")) == Integer(-17));
  CHECK_THROWS_AS(IntegerFromJson(Json(1.5)), ParseError);
  CHECK_THROWS_AS(IntegerFromJson(Json("12a")), ParseError);
}

TEST_CASE("matrix JSON") {
  const PayoffMatrix a = K(2);
  const Json j = MatrixToJson(a, ConstructionParams{2, 0});
  CHECK(j["n_rows"] == 2);
  CHECK(j["entries"] == Json::array({2, 3, 1, 0}));
  CHECK(j["meta"]["construction"] == "K");
  CHECK(MatrixFromJson(j) == a);
  PayoffMatrix huge(1, 2);
  huge(0, 1) = Integer::Pow(7, 40);
  CHECK(MatrixFromJson(Json::parse(MatrixToJson(huge).dump())) == huge);

  CHECK_THROWS_AS(MatrixFromJson(Json::parse(R"({"n_rows":2,"n_cols":2,"entries":[1,2,3]})")),
                  ParseError);
  CHECK_THROWS_AS(MatrixFromJson(Json::parse(R"({"n_rows":2,"entries":[1,2]})")),
                  ParseError);
  CHECK_THROWS_AS(MatrixFromJson(Json::parse(R"({"n_rows":0,"n_cols":0,"entries":[]})")),
                  ParseError);
  // The hash ignores metadata and tracks entries.
  CHECK(MatrixSha256(a) == MatrixSha256(MatrixFromJson(j)));
  CHECK(MatrixSha256(a) != MatrixSha256(K(4)));
  CHECK(MatrixSha256(a).size() == 64);
}

TEST_CASE("sha256 of known strings") {
  CHECK(Sha256Hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(Sha256Hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("state JSON round-trip") {
  const PayoffMatrix a = K(4);
  TieBreakRule rule = TieBreakRule::LexMin();
  const Trace t = Run(a, a, {4, 1}, rule, StopCondition::MaxRounds(500));
  const Json j = StateToJson(t.final_state);
  CHECK(j["t"] == "500");
  CHECK(j["R"][0].is_string());
  CHECK(StateFromJson(j) == t.final_state);
  Json bad = j;
  bad["t"] = "499";
  CHECK_THROWS_AS(StateFromJson(bad), ParseError);
  bad = j;
  bad["current"] = Json::array({0, 1});
  CHECK_THROWS_AS(StateFromJson(bad), ParseError);
  bad = j;
  bad["row_counts"][0] = "-1";
  CHECK_THROWS_AS(StateFromJson(bad), ParseError);
}

TEST_CASE("trace CSV round-trip") {
  const PayoffMatrix a = K(4);
  TieBreakRule rule = TieBreakRule::LexMin();
  const Trace t = Run(a, a, {4, 1}, rule, StopCondition::FirstHit({2, 3}),
                      RunOptions{.record_snapshots = false});
  std::ostringstream os;
  WriteTraceCsv(os, t);
  CHECK(os.str().rfind("round,row_action,col_action\n1,4,1\n2,1,1\n4,1,4\n", 0) == 0);
  std::istringstream is(os.str());
  CHECK(ReadTraceCsv(is) == t.switches);

  std::istringstream no_header("1,4,1\n");
  CHECK_THROWS_AS(ReadTraceCsv(no_header), ParseError);
  std::istringstream bad_line("round,row_action,col_action\n1,4\n");
  CHECK_THROWS_AS(ReadTraceCsv(bad_line), ParseError);
  std::istringstream zero("round,row_action,col_action\n1,0,1\n");
  CHECK_THROWS_AS(ReadTraceCsv(zero), ParseError);
}

TEST_CASE("checkpoint round-trip") {
  const PayoffMatrix a = K(4);
  TieBreakRule rule = TieBreakRule::Random(12);
  Checkpoint c;
  c.trace = Run(a, a, {4, 1}, rule, StopCondition::MaxRounds(300));
  c.trace.stop_reason = StopReason::kNone;
  c.matrix_sha256 = c.matrix_b_sha256 = MatrixSha256(a);
  c.rule = "random";
  c.seed = 12;
  c.rule_state = rule.SerializeState();
  c.stop = "rounds:1000";
  c.engine = "naive";
  const Checkpoint back = CheckpointFromJson(Json::parse(CheckpointToJson(c).dump()));
  CHECK(back.trace == c.trace);
  CHECK(back.rule_state == c.rule_state);
  CHECK(back.seed == 12);
  CHECK(back.stop == c.stop);
  CHECK_THROWS_AS(CheckpointFromJson(Json::parse("{}")), ParseError);
}

TEST_CASE("file helpers") {
  const auto dir = TempDir();
  WriteJsonFile(dir / "m.json", MatrixToJson(K(2)));
  CHECK(MatrixFromJson(ReadJsonFile(dir / "m.json")) == K(2));
  CHECK(ReadFile(dir / "m.json").back() == '\n');
  WriteFile(dir / "bad.json", "{nope");
  CHECK_THROWS_AS(ReadJsonFile(dir / "bad.json"), ParseError);
  CHECK_THROWS_AS(ReadFile(dir / "missing.json"), IoError);
  CHECK_THROWS_AS(WriteFile(dir / "no" / "such" / "dir.txt", "x"), IoError);
}
