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

// fplab: command-line front end.
//
// Exit codes: 0 success, 1 failed check or audit, 2 usage error (including
// malformed numbers, profiles and input files), 3 I/O error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fplab/bounds.h"
#include "fplab/construction.h"
#include "fplab/engine.h"
#include "fplab/equilibrium.h"
#include "fplab/errors.h"
#include "fplab/experiment.h"
#include "fplab/fast_forward.h"
#include "fplab/io.h"
#include "fplab/tie_break.h"

namespace {

using namespace fplab;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

class UsageError : public Error {
 public:
  using Error::Error;
};

// Everything a subcommand's flags bind to. Numeric flags that must be exact
// are taken as strings and parsed by the library.
struct Flags {
  std::size_t n = 0;
  std::string z = "0";
  std::string out = "-";
  std::string matrix;
  std::string matrix_b;
  std::string init;
  std::string rule = "lexmin";
  std::uint64_t seed = 0;
  std::string engine = "fast";
  std::string stop;
  std::string cap;
  std::string trace_out = "-";
  std::string state_out;
  bool equivalence_check = false;
  std::string snapshot_every;
  std::string checkpoint = "fplab_checkpoint.json";
  std::string resume;
  std::string tie_budget = "10000";
  std::string x;
  std::string y;
  std::string eps;
  std::size_t samples = 10000;
  unsigned threads = 0;
  std::string trace;
  std::string state;
  std::uint64_t horizon_factor = 64;
};

void Emit(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
  } else {
    WriteFile(path, body);
  }
}

PayoffMatrix LoadMatrix(const std::string& path) {
  try {
    return MatrixFromJson(ReadJsonFile(path));
  } catch (const Json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

std::vector<Ratio> ParseRatios(const std::string& csv) {
  std::vector<Ratio> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(Ratio::FromString(tok));
  if (out.empty()) throw ParseError("empty strategy '" + csv + "'");
  return out;
}

Json RatiosToJson(const std::vector<Ratio>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(r.ToString());
  return out;
}

Json CellsToJson(const std::vector<CellValue>& cells) {
  Json out = Json::array();
  for (const auto& c : cells) {
    out.push_back({{"cell", {c.cell.row, c.cell.col}},
                   {"value", IntegerToJson(c.value)}});
  }
  return out;
}

int CmdConstruct(const Flags& f) {
  ConstructionParams p{f.n, Integer::FromString(f.z)};
  try {
    p.Validate();
  } catch (const ConstructionError& e) {
    throw UsageError(e.what());
  }
  Emit(f.out, MatrixToJson(BuildK(p), p).dump(2) + "\n");
  return kOk;
}

int CmdValidate(const Flags& f) {
  const PayoffMatrix a = LoadMatrix(f.matrix);
  const StructureReport rep = ValidateStructure(a);
  Json j;
  j["ok"] = rep.ok();
  j["n"] = rep.n;
  j["z"] = IntegerToJson(rep.z);
  j["max_cell"] = {rep.max_cell.row, rep.max_cell.col};
  j["max_value"] = IntegerToJson(rep.max_value);
  Json rows = Json::array();
  for (const auto& r : rep.row_nonzeros) rows.push_back(CellsToJson(r));
  j["row_nonzeros"] = std::move(rows);
  Json cols = Json::array();
  for (const auto& c : rep.col_nonzeros) cols.push_back(CellsToJson(c));
  j["col_nonzeros"] = std::move(cols);
  j["nonzero_values"] = IntVectorToJson(rep.nonzero_values, false);
  j["violations"] = rep.violations;
  std::cout << j.dump(2) << "\n";
  return rep.ok() ? kOk : kCheckFailed;
}

Trace RunEngine(const std::string& engine, const PayoffMatrix& a,
                const PayoffMatrix& b, Trace start, TieBreakRule& rule,
                const StopCondition& stop, const RunOptions& options) {
  if (engine == "naive") return Resume(a, b, std::move(start), rule, stop, options);
  return ResumeFastForward(a, b, std::move(start), rule, stop, options);
}

int CmdSimulate(const Flags& f) {
  if (f.engine != "naive" && f.engine != "fast") {
    throw UsageError("--engine must be naive or fast, got '" + f.engine + "'");
  }
  std::optional<Profile> init;
  if (!f.init.empty()) init = ParseProfile(f.init);
  const PayoffMatrix a = LoadMatrix(f.matrix);
  const PayoffMatrix b = f.matrix_b.empty() ? a : LoadMatrix(f.matrix_b);

  std::optional<Checkpoint> ckpt;
  if (!f.resume.empty()) {
    try {
      ckpt = CheckpointFromJson(ReadJsonFile(f.resume));
    } catch (const Json::exception& e) {
      throw ParseError("'" + f.resume + "': " + e.what());
    }
    if (ckpt->matrix_sha256 != MatrixSha256(a) ||
        ckpt->matrix_b_sha256 != MatrixSha256(b)) {
      throw UsageError("checkpoint '" + f.resume +
                       "' was written for a different matrix");
    }
  }
  const std::string rule_name = ckpt ? ckpt->rule : f.rule;
  const std::uint64_t seed = ckpt ? ckpt->seed : f.seed;
  TieBreakRule rule = TieBreakRule::FromName(rule_name, seed);
  if (ckpt) rule.RestoreState(ckpt->rule_state);

  std::string stop_text = f.stop.empty() && ckpt ? ckpt->stop : f.stop;
  if (stop_text.empty()) throw UsageError("--stop is required");
  StopCondition stop = StopCondition::Parse(stop_text);
  if (!f.cap.empty()) stop.round_cap = Integer::FromString(f.cap);

  RunOptions options;
  options.record_snapshots = false;
  options.tie_budget = Integer::FromString(f.tie_budget);
  if (!f.snapshot_every.empty()) {
    options.checkpoint_every = Integer::FromString(f.snapshot_every);
    if (options.checkpoint_every.sign() <= 0) {
      throw UsageError("--snapshot-every needs k >= 1");
    }
    const std::string a_hash = MatrixSha256(a);
    const std::string b_hash = MatrixSha256(b);
    options.on_checkpoint = [a_hash, b_hash, stop_text, &f](
                                const Trace& t, const TieBreakRule& r) {
      Checkpoint c{a_hash, b_hash, r.name(), r.seed(), r.SerializeState(),
                   stop_text, f.engine, t};
      WriteJsonFile(f.checkpoint, CheckpointToJson(c));
    };
  }

  Trace start;
  if (ckpt) {
    start = ckpt->trace;
    CheckState(start.final_state, a, b);
  } else {
    if (!init) throw UsageError("--init is required");
    CheckProfile(*init, a.rows(), a.cols());
    start = StartTrace(a, b, *init, options.record_snapshots);
  }

  if (f.equivalence_check) {
    TieBreakRule other = rule;
    RunOptions plain = options;
    plain.on_checkpoint = nullptr;
    plain.checkpoint_every = 0;
    const Trace fast = RunEngine("fast", a, b, start, rule, stop, plain);
    const Trace naive = RunEngine("naive", a, b, start, other, stop, plain);
    const auto diff = DiffTraces(naive, fast);
    Json j;
    j["equivalent"] = !diff.has_value();
    j["switches"] = fast.switches.size();
    j["final_round"] = fast.final_state.t.ToString();
    if (diff) j["first_difference"] = *diff;
    std::cout << j.dump(2) << "\n";
    return diff ? kCheckFailed : kOk;
  }

  const Trace trace = RunEngine(f.engine, a, b, std::move(start), rule, stop,
                                options);
  std::ostringstream csv;
  WriteTraceCsv(csv, trace);
  Emit(f.trace_out, csv.str());
  if (!f.state_out.empty()) {
    Json state = StateToJson(trace.final_state);
    state["stop_reason"] = ToString(trace.stop_reason);
    Emit(f.state_out, state.dump(2) + "\n");
  }
  return kOk;
}

int CmdGap(const Flags& f) {
  const PayoffMatrix a = LoadMatrix(f.matrix);
  MixedProfile m{ParseRatios(f.x), ParseRatios(f.y)};
  try {
    m.Validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const GapBreakdown g = NashGap(a, m);
  Json j;
  j["row_gap"] = g.row_gap.ToString();
  j["col_gap"] = g.col_gap.ToString();
  j["total"] = g.total.ToString();
  j["total_decimal"] = g.total.ToDecimal(12);
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int CmdPureNe(const Flags& f) {
  const PayoffMatrix a = LoadMatrix(f.matrix);
  const PayoffMatrix b = f.matrix_b.empty() ? a : LoadMatrix(f.matrix_b);
  Json list = Json::array();
  for (const auto& p : PureNEEnumerate(a, b)) list.push_back({p.row, p.col});
  Json j;
  j["pure_ne"] = std::move(list);
  std::cout << j.dump(2) << "\n";
  return kOk;
}

Json AuditSampleToJson(const AuditSample& s) {
  return {{"index", s.index},
          {"family", ToString(s.family)},
          {"x", RatiosToJson(s.profile.x)},
          {"y", RatiosToJson(s.profile.y)}};
}

Json AuditReportToJson(const AuditReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["n"] = r.n;
  j["eps"] = r.eps.ToString();
  j["seed"] = std::to_string(r.seed);
  j["samples"] = r.samples;
  j["tested"] = r.tested;
  j["skipped"] = r.skipped;
  j["refuted"] = r.refuted;
  Json fam;
  for (std::size_t k = 0; k < r.tested_per_family.size(); ++k) {
    fam[ToString(static_cast<SampleFamily>(k))] = r.tested_per_family[k];
  }
  j["tested_per_family"] = std::move(fam);
  Json v = Json::array();
  for (const auto& s : r.violations) v.push_back(AuditSampleToJson(s));
  j["violations"] = std::move(v);
  return j;
}

int CmdAuditConcentration(const Flags& f) {
  if (f.n < 2 || f.n % 2 != 0) throw UsageError("--n must be even and >= 2");
  const PayoffMatrix a = BuildK(ConstructionParams{f.n, 0});
  const Ratio eps = f.eps.empty()
                        ? Ratio(Integer(1), Integer(static_cast<std::int64_t>(
                                                56 * f.n * f.n * f.n)))
                        : Ratio::FromString(f.eps);
  try {
    const AuditReport r = ConcentrationAudit(a, eps, f.samples, f.seed, f.threads);
    std::cout << AuditReportToJson(r).dump(2) << "\n";
    return kOk;
  } catch (const LemmaViolation& e) {
    std::cout << AuditReportToJson(e.report()).dump(2) << "\n";
    std::cerr << "fplab: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

Json BoundReportToJson(const BoundReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["n"] = r.n;
  j["lb_first_hit"] = r.lb_first_hit.ToString();
  if (r.lb_main) {
    j["lb_main"] = r.lb_main->ToString();
    j["lb_main_decimal"] = r.lb_main->ToDecimal(12);
    j["lb_main_exact"] = r.lb_main_exact;
  }
  j["measured_first_hit"] = r.measured_first_hit.ToString();
  j["first_hit_ok"] = r.first_hit_ok;
  j["spiral_ok"] = r.spiral_ok;
  j["alternation_ok"] = r.alternation_ok;
  Json hits = Json::array();
  for (const auto& h : r.hits) {
    hits.push_back({{"ell", h.ell},
                    {"cell", {h.cell.row, h.cell.col}},
                    {"round", h.round.ToString()},
                    {"zero_rows_ok", h.zero_rows_ok},
                    {"zero_cols_ok", h.zero_cols_ok}});
  }
  j["first_hits"] = std::move(hits);
  j["base_value"] = r.base_value.ToString();
  j["base_ok"] = r.base_ok;
  Json rec = Json::array();
  for (const auto& c : r.recursion) {
    rec.push_back({{"ell", c.ell},
                   {"factor", c.factor.ToString()},
                   {"lhs", c.lhs.ToString()},
                   {"rhs_proof_form", c.rhs_proof.ToString()},
                   {"proof_form_ok", c.proof_ok},
                   {"rhs_literal_form", c.rhs_literal.ToString()},
                   {"literal_form_ok", c.literal_ok}});
  }
  j["recursion"] = std::move(rec);
  Json st = Json::array();
  for (const auto& s : r.stepping_stones) {
    st.push_back({{"layer", s.layer},
                  {"stage", s.stage},
                  {"relation", s.relation},
                  {"lhs", s.lhs.ToString()},
                  {"rhs", s.rhs.ToString()},
                  {"ok", s.ok}});
  }
  j["stepping_stones"] = std::move(st);
  j["t_star"] = r.t_star.ToString();
  j["r_below_at_t_star"] = r.r_below_at_t_star.ToString();
  j["r_above_at_t_star"] = r.r_above_at_t_star.ToString();
  j["chain_ok"] = r.chain_ok;
  j["failures"] = r.failures;
  return j;
}

int CmdAuditRun(const Flags& f) {
  const PayoffMatrix a = LoadMatrix(f.matrix);
  std::ifstream in(f.trace);
  if (!in) throw IoError("cannot open '" + f.trace + "' for reading");
  Trace trace;
  trace.switches = ReadTraceCsv(in);
  if (trace.switches.empty()) throw ParseError("trace '" + f.trace + "' is empty");
  trace.init = trace.switches.front().profile;
  try {
    trace.final_state = StateFromJson(ReadJsonFile(f.state));
  } catch (const Json::exception& e) {
    throw ParseError("'" + f.state + "': " + e.what());
  }
  CheckState(trace.final_state, a, a);
  ReconstructSnapshots(a, a, trace);
  std::optional<Ratio> eps;
  if (!f.eps.empty()) eps = Ratio::FromString(f.eps);
  const BoundReport r = AuditRun(a, trace, eps);
  std::cout << BoundReportToJson(r).dump(2) << "\n";
  return r.ok() ? kOk : kCheckFailed;
}

int CmdBound(const Flags& f) {
  try {
    std::cout << "lb_first_hit " << LbFirstHit(f.n) << "\n";
    if (!f.eps.empty()) {
      const Ratio eps = Ratio::FromString(f.eps);
      const Ratio mb = MainBound(f.n, eps);
      std::cout << "main_bound " << mb.ToString() << "\n";
      std::cout << "main_bound_decimal " << mb.ToDecimal(12) << "\n";
      std::cout << "main_bound_sqrt_exact "
                << (MainBoundIsExact(eps) ? "true" : "false") << "\n";
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return kOk;
}

int CmdSweepInit(const Flags& f) {
  if (f.n < 2 || f.n % 2 != 0) throw UsageError("--n must be even and >= 2");
  const Integer cap = f.cap.empty() ? Integer::Pow(Integer(10), 30)
                                    : Integer::FromString(f.cap);
  const SweepSummary s = SweepInit(f.n, f.rule, f.seed, cap, f.threads);
  Emit(f.out, SweepCsv(s));
  std::cerr << "reached " << s.reached << " of " << s.rows.size();
  if (s.mean_first_hit) {
    std::cerr << ", mean first hit " << s.mean_first_hit->ToString() << " ("
              << s.mean_first_hit->ToDecimal(12) << ")";
  }
  std::cerr << "\n";
  return kOk;
}

int CmdExperiment(const Flags& f) {
  if (f.n < 4 || f.n % 2 != 0) throw UsageError("--n must be even and >= 4");
  if (f.out.empty() || f.out == "-") throw UsageError("--out <dir> is required");
  ExperimentOptions o;
  o.rule = f.rule;
  o.seed = f.seed;
  o.horizon_factor = f.horizon_factor;
  TieBreakRule::FromName(o.rule, o.seed);
  const ExperimentResult r = WriteExperiment(f.n, o, f.out);
  std::cerr << "first hit " << r.first_hit << ", horizon " << r.horizon
            << ", " << r.trace.switches.size() << " profiles, wrote " << f.out
            << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact fictitious-play laboratory", "fplab"};
  app.require_subcommand(1);
  Flags f;

  auto* construct = app.add_subcommand("construct", "Build K^n(z) as matrix JSON");
  construct->add_option("--n", f.n, "Even side length")->required();
  construct->add_option("--z", f.z, "Non-negative offset");
  construct->add_option("--out", f.out, "Output file ('-' for stdout)");

  auto* validate = app.add_subcommand("validate", "Structural report of a matrix");
  validate->add_option("--matrix", f.matrix)->required();

  auto* simulate = app.add_subcommand("simulate", "Run fictitious play");
  simulate->add_option("--matrix", f.matrix, "Row player's payoffs")->required();
  simulate->add_option("--matrix-b", f.matrix_b, "Column player's payoffs (default: same)");
  simulate->add_option("--init", f.init, "Initial profile i,j (1-based)");
  simulate->add_option("--rule", f.rule, "lexmin|lexmax|stay|random");
  simulate->add_option("--seed", f.seed, "Seed for the random rule");
  simulate->add_option("--engine", f.engine, "naive|fast");
  simulate->add_option("--stop", f.stop, "rounds:T | first-hit:i,j | gap:p/q");
  simulate->add_option("--cap", f.cap, "Extra bound on the round counter");
  simulate->add_option("--trace-out", f.trace_out, "Trace CSV ('-' for stdout)");
  simulate->add_option("--state-out", f.state_out, "Final state JSON ('-' for stdout)");
  simulate->add_flag("--equivalence-check", f.equivalence_check,
                     "Run both engines and compare");
  simulate->add_option("--snapshot-every", f.snapshot_every,
                       "Write a checkpoint every k rounds");
  simulate->add_option("--checkpoint", f.checkpoint, "Checkpoint path");
  simulate->add_option("--resume", f.resume, "Continue from a checkpoint");
  simulate->add_option("--tie-budget", f.tie_budget,
                       "Fast engine: max consecutive tied rounds");

  auto* gap = app.add_subcommand("gap", "Nash gap of a mixed profile");
  gap->add_option("--matrix", f.matrix)->required();
  gap->add_option("--x", f.x, "Row strategy as comma-separated rationals")->required();
  gap->add_option("--y", f.y, "Column strategy as comma-separated rationals")->required();

  auto* purene = app.add_subcommand("purene", "Enumerate pure Nash equilibria");
  purene->add_option("--matrix", f.matrix)->required();
  purene->add_option("--matrix-b", f.matrix_b);

  auto* audit = app.add_subcommand("audit", "Sampled and trajectory audits");
  audit->require_subcommand(1);
  auto* concentration =
      audit->add_subcommand("concentration", "Sampled equilibrium-concentration audit");
  concentration->add_option("--n", f.n)->required();
  concentration->add_option("--eps", f.eps, "Rational eps (default 1/(56 n^3))");
  concentration->add_option("--samples", f.samples);
  concentration->add_option("--seed", f.seed);
  concentration->add_option("--threads", f.threads, "0 = hardware concurrency");
  auto* run = audit->add_subcommand("run", "Audit a K^n(0) trace");
  run->add_option("--matrix", f.matrix)->required();
  run->add_option("--trace", f.trace, "Trace CSV")->required();
  run->add_option("--state", f.state, "Final state JSON written by simulate")->required();
  run->add_option("--eps", f.eps, "Also evaluate the main bound at eps");

  auto* bound = app.add_subcommand("bound", "Evaluate the lower-bound formulas");
  bound->add_option("--n", f.n)->required();
  bound->add_option("--eps", f.eps);

  auto* sweep = app.add_subcommand("sweep-init", "First hit from every initial profile");
  sweep->add_option("--n", f.n)->required();
  sweep->add_option("--rule", f.rule);
  sweep->add_option("--seed", f.seed);
  sweep->add_option("--cap", f.cap);
  sweep->add_option("--threads", f.threads);
  sweep->add_option("--out", f.out, "CSV path ('-' for stdout)");

  auto* experiment = app.add_subcommand("experiment", "Switch table, gap and strategy series");
  experiment->add_option("--n", f.n)->required();
  experiment->add_option("--rule", f.rule);
  experiment->add_option("--seed", f.seed);
  experiment->add_option("--horizon-factor", f.horizon_factor);
  experiment->add_option("--out", f.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*construct) return CmdConstruct(f);
    if (*validate) return CmdValidate(f);
    if (*simulate) return CmdSimulate(f);
    if (*gap) return CmdGap(f);
    if (*purene) return CmdPureNe(f);
    if (*concentration) return CmdAuditConcentration(f);
    if (*run) return CmdAuditRun(f);
    if (*bound) return CmdBound(f);
    if (*sweep) return CmdSweepInit(f);
    if (*experiment) return CmdExperiment(f);
  } catch (const IoError& e) {
    std::cerr << "fplab: " << e.what() << "\n";
    return kIo;
  } catch (const UsageError& e) {
    std::cerr << "fplab: usage: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "fplab: usage: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionError& e) {
    std::cerr << "fplab: usage: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "fplab: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
