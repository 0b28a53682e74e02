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

#include "fplab/io.h"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "fplab/errors.h"

namespace fplab {

namespace {

constexpr std::int64_t kSafeJsonInteger = (std::int64_t{1} << 53) - 1;

Json ProfileToJson(const Profile& p) { return Json::array({p.row, p.col}); }

Profile ProfileFromJson(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() ||
      !j[1].is_number_unsigned()) {
    throw ParseError("profile must be a [row, col] pair, got " + j.dump());
  }
  Profile p{j[0].get<std::size_t>(), j[1].get<std::size_t>()};
  if (p.row < 1 || p.col < 1) {
    throw ParseError("profile indices are 1-based, got " + j.dump());
  }
  return p;
}

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::size_t SizeField(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_number_unsigned()) {
    throw ParseError(std::string("field '") + key +
                     "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

Json IntegerToJson(const Integer& v) {
  const auto small = v.ToInt64();
  if (small && *small <= kSafeJsonInteger && *small >= -kSafeJsonInteger) {
    return *small;
  }
  return v.ToString();
}

Integer IntegerFromJson(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return Integer::FromString(j.get<std::string>());
  throw ParseError("expected an integer or a decimal string, got " + j.dump());
}

Json IntVectorToJson(const IntVector& v, bool as_strings) {
  Json out = Json::array();
  for (const auto& x : v) {
    out.push_back(as_strings ? Json(x.ToString()) : IntegerToJson(x));
  }
  return out;
}

IntVector IntVectorFromJson(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of integers");
  IntVector out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(IntegerFromJson(x));
  return out;
}

Json MatrixToJson(const PayoffMatrix& a,
                  const std::optional<ConstructionParams>& meta) {
  Json j;
  j["n_rows"] = a.rows();
  j["n_cols"] = a.cols();
  j["entries"] = IntVectorToJson(a.entries(), false);
  if (meta) {
    j["meta"] = {{"construction", "K"},
                 {"n", meta->n},
                 {"z", IntegerToJson(meta->z)}};
  }
  return j;
}

PayoffMatrix MatrixFromJson(const Json& j) {
  const std::size_t rows = SizeField(j, "n_rows");
  const std::size_t cols = SizeField(j, "n_cols");
  IntVector entries = IntVectorFromJson(Field(j, "entries"));
  if (entries.size() != rows * cols) {
    throw ParseError("matrix has " + std::to_string(entries.size()) +
                     " entries, expected " + std::to_string(rows) + " x " +
                     std::to_string(cols));
  }
  try {
    return PayoffMatrix(rows, cols, std::move(entries));
  } catch (const DimensionError& e) {
    throw ParseError(std::string("bad matrix shape: ") + e.what());
  }
}

Json StateToJson(const FPState& s) {
  Json j;
  j["t"] = s.t.ToString();
  j["current"] = ProfileToJson(s.current);
  j["R"] = IntVectorToJson(s.row_utility, true);
  j["C"] = IntVectorToJson(s.col_utility, true);
  j["row_counts"] = IntVectorToJson(s.row_counts.counts(), true);
  j["col_counts"] = IntVectorToJson(s.col_counts.counts(), true);
  return j;
}

FPState StateFromJson(const Json& j) {
  FPState s;
  s.t = IntegerFromJson(Field(j, "t"));
  s.current = ProfileFromJson(Field(j, "current"));
  s.row_utility = IntVectorFromJson(Field(j, "R"));
  s.col_utility = IntVectorFromJson(Field(j, "C"));
  try {
    s.row_counts = CountVector(IntVectorFromJson(Field(j, "row_counts")));
    s.col_counts = CountVector(IntVectorFromJson(Field(j, "col_counts")));
  } catch (const DomainError& e) {
    throw ParseError(std::string("bad play counts: ") + e.what());
  }
  if (s.row_counts.total() != s.t || s.col_counts.total() != s.t) {
    throw ParseError("play counts do not total t = " + s.t.ToString());
  }
  return s;
}

void WriteTraceCsv(std::ostream& os, const Trace& trace) {
  os << "round,row_action,col_action\n";
  for (const auto& ev : trace.switches) {
    os << ev.round << ',' << ev.profile.row << ',' << ev.profile.col << '\n';
  }
}

std::vector<SwitchEvent> ReadTraceCsv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "round,row_action,col_action") {
    throw ParseError("trace CSV must start with 'round,row_action,col_action'");
  }
  std::vector<SwitchEvent> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("trace CSV line " + std::to_string(lineno) +
                       ": expected three fields");
    }
    SwitchEvent ev;
    try {
      ev.round = Integer::FromString(line.substr(0, comma));
      ev.profile = ParseProfile(line.substr(comma + 1));
    } catch (const ParseError& e) {
      throw ParseError("trace CSV line " + std::to_string(lineno) + ": " +
                       e.what());
    }
    out.push_back(std::move(ev));
  }
  return out;
}

Json CheckpointToJson(const Checkpoint& c) {
  Json j;
  j["format"] = "fplab-checkpoint";
  j["version"] = 1;
  j["matrix_sha256"] = c.matrix_sha256;
  j["matrix_b_sha256"] = c.matrix_b_sha256;
  j["engine"] = c.engine;
  j["rule"] = c.rule;
  j["seed"] = std::to_string(c.seed);
  j["rule_state"] = c.rule_state;
  j["stop"] = c.stop;
  j["init"] = ProfileToJson(c.trace.init);
  j["state"] = StateToJson(c.trace.final_state);
  Json sw = Json::array();
  for (const auto& ev : c.trace.switches) {
    Json e;
    e["round"] = ev.round.ToString();
    e["profile"] = ProfileToJson(ev.profile);
    if (ev.row_snapshot) e["R"] = IntVectorToJson(*ev.row_snapshot, true);
    if (ev.col_snapshot) e["C"] = IntVectorToJson(*ev.col_snapshot, true);
    sw.push_back(std::move(e));
  }
  j["switches"] = std::move(sw);
  return j;
}

Checkpoint CheckpointFromJson(const Json& j) {
  if (!j.is_object() || j.value("format", "") != "fplab-checkpoint") {
    throw ParseError("not an fplab checkpoint");
  }
  Checkpoint c;
  c.matrix_sha256 = Field(j, "matrix_sha256").get<std::string>();
  c.matrix_b_sha256 = Field(j, "matrix_b_sha256").get<std::string>();
  c.engine = Field(j, "engine").get<std::string>();
  c.rule = Field(j, "rule").get<std::string>();
  const std::string seed = Field(j, "seed").get<std::string>();
  try {
    std::size_t used = 0;
    c.seed = std::stoull(seed, &used);
    if (used != seed.size()) throw std::invalid_argument(seed);
  } catch (const std::exception&) {
    throw ParseError("malformed seed '" + seed + "'");
  }
  c.rule_state = Field(j, "rule_state").get<std::string>();
  c.stop = Field(j, "stop").get<std::string>();
  c.trace.init = ProfileFromJson(Field(j, "init"));
  c.trace.final_state = StateFromJson(Field(j, "state"));
  for (const auto& e : Field(j, "switches")) {
    SwitchEvent ev;
    ev.round = IntegerFromJson(Field(e, "round"));
    ev.profile = ProfileFromJson(Field(e, "profile"));
    if (e.contains("R")) ev.row_snapshot = IntVectorFromJson(e["R"]);
    if (e.contains("C")) ev.col_snapshot = IntVectorFromJson(e["C"]);
    c.trace.switches.push_back(std::move(ev));
  }
  return c;
}

std::string Sha256Hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw IoError("SHA-256 computation failed");
  }
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int k = 0; k < len; ++k) os << std::setw(2) << int{digest[k]};
  return os.str();
}

std::string MatrixSha256(const PayoffMatrix& a) {
  return Sha256Hex(MatrixToJson(a).dump());
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return os.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << bytes;
  out.close();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

Json ReadJsonFile(const std::filesystem::path& path) {
  const std::string text = ReadFile(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void WriteJsonFile(const std::filesystem::path& path, const Json& j) {
  WriteFile(path, j.dump(2) + "\n");
}

}  // namespace fplab
