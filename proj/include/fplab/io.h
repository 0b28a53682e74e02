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

// File formats.
//
// Matrix JSON: {"n_rows": r, "n_cols": c, "entries": [...row-major...],
// "meta": {"construction": "K", "n": n, "z": z}}. Entries beyond the 53-bit
// range a JSON number can carry exactly are written as decimal strings; the
// reader accepts either form everywhere.
//
// State JSON: t, current profile, R, C and both count vectors, all integers
// as decimal strings.
//
// Trace CSV: header "round,row_action,col_action", one line per switch event.
//
// Checkpoint JSON: a state plus the switch list, the rule and its generator
// state, the stop condition and the matrix hash, enough to resume a run.

#ifndef FPLAB_IO_H_
#define FPLAB_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "fplab/construction.h"
#include "fplab/engine.h"
#include "fplab/game.h"
#include "fplab/tie_break.h"

namespace fplab {

using Json = nlohmann::ordered_json;

Json IntegerToJson(const Integer& v);  // number when 53-bit safe, else string
Integer IntegerFromJson(const Json& j);  // number or decimal string
Json IntVectorToJson(const IntVector& v, bool as_strings);
IntVector IntVectorFromJson(const Json& j);

Json MatrixToJson(const PayoffMatrix& a,
                  const std::optional<ConstructionParams>& meta = std::nullopt);
PayoffMatrix MatrixFromJson(const Json& j);

Json StateToJson(const FPState& s);
FPState StateFromJson(const Json& j);

void WriteTraceCsv(std::ostream& os, const Trace& trace);
// Switch events without snapshots. Throws ParseError naming the line.
std::vector<SwitchEvent> ReadTraceCsv(std::istream& is);

struct Checkpoint {
  std::string matrix_sha256;
  std::string matrix_b_sha256;
  std::string rule;
  std::uint64_t seed = 0;
  std::string rule_state;
  std::string stop;
  std::string engine;
  Trace trace;
};
Json CheckpointToJson(const Checkpoint& c);
Checkpoint CheckpointFromJson(const Json& j);

// SHA-256 of the canonical JSON form of the matrix (entries only, no meta).
std::string MatrixSha256(const PayoffMatrix& a);
std::string Sha256Hex(const std::string& bytes);

// Whole-file helpers. Throw IoError on I/O failure and ParseError on
// malformed content.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, const std::string& bytes);
Json ReadJsonFile(const std::filesystem::path& path);
void WriteJsonFile(const std::filesystem::path& path, const Json& j);

}  // namespace fplab

#endif  // FPLAB_IO_H_
