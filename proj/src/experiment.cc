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

#include "fplab/experiment.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <thread>

#include "fplab/construction.h"
#include "fplab/equilibrium.h"
#include "fplab/errors.h"
#include "fplab/fast_forward.h"
#include "fplab/io.h"
#include "fplab/tie_break.h"

namespace fplab {

ExperimentResult RunExperiment(std::size_t n, const ExperimentOptions& options) {
  if (n < 4 || n % 2 != 0) {
    throw DomainError("experiment needs an even n >= 4, got " +
                      std::to_string(n));
  }
  if (options.horizon_factor < 2) {
    throw DomainError("horizon factor must be >= 2");
  }
  const PayoffMatrix a = BuildK(ConstructionParams{n, 0});
  TieBreakRule rule = TieBreakRule::FromName(options.rule, options.seed);
  const Profile init{n, 1};
  const Profile ne{n / 2, n / 2 + 1};

  ExperimentResult out;
  out.n = n;
  Trace trace =
      RunFastForward(a, a, init, rule, StopCondition::FirstHit(ne));
  out.first_hit = trace.final_state.t;
  out.horizon =
      out.first_hit * Integer(static_cast<std::int64_t>(options.horizon_factor));
  out.trace = ResumeFastForward(a, a, std::move(trace), rule,
                                StopCondition::MaxRounds(out.horizon));

  std::set<Integer> rounds{Integer(1), out.horizon};
  for (const auto& ev : out.trace.switches) {
    rounds.insert(ev.round);
    if (ev.round > Integer(1)) rounds.insert(ev.round - 1);
  }
  for (Integer p = 1; p <= out.horizon; p *= Integer(2)) rounds.insert(p);
  for (Integer m = out.first_hit * Integer(2); m <= out.horizon;
       m *= Integer(2)) {
    rounds.insert(m);
  }
  for (const Integer& t : rounds) {
    const FPState s = StateAtRound(a, a, out.trace, t);
    SeriesPoint pt;
    pt.round = t;
    pt.gap = EmpiricalGap(s.row_utility, s.col_utility, s.row_counts);
    pt.x = Empirical(s.row_counts, s.col_counts).x;
    out.series.push_back(std::move(pt));
  }
  return out;
}

std::string TransitionsCsv(const ExperimentResult& r) {
  std::ostringstream os;
  os << "switch_index,round,row_action,col_action\n";
  for (std::size_t k = 0; k < r.trace.switches.size(); ++k) {
    const auto& ev = r.trace.switches[k];
    os << k + 1 << ',' << ev.round << ',' << ev.profile.row << ','
       << ev.profile.col << '\n';
  }
  return os.str();
}

std::string NashGapCsv(const ExperimentResult& r) {
  std::ostringstream os;
  os << "round,gap_exact,gap_decimal\n";
  for (const auto& p : r.series) {
    os << p.round << ',' << p.gap.ToString() << ',' << p.gap.ToDecimal(12)
       << '\n';
  }
  return os.str();
}

std::string RowStrategyCsv(const ExperimentResult& r) {
  std::ostringstream os;
  os << "round";
  for (std::size_t k = 1; k <= r.n; ++k) os << ",x_" << k;
  os << '\n';
  for (const auto& p : r.series) {
    os << p.round;
    for (const auto& v : p.x) os << ',' << v.ToString();
    os << '\n';
  }
  return os.str();
}

ExperimentResult WriteExperiment(std::size_t n, const ExperimentOptions& options,
                                 const std::filesystem::path& out_dir) {
  ExperimentResult r = RunExperiment(n, options);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());
  }
  const std::vector<std::pair<std::string, std::string>> files = {
      {"transitions.csv", TransitionsCsv(r)},
      {"nash_gap.csv", NashGapCsv(r)},
      {"row_strategy.csv", RowStrategyCsv(r)},
  };
  const PayoffMatrix a = BuildK(ConstructionParams{n, 0});
  Json manifest;
  manifest["tool_version"] = kToolVersion;
  manifest["command"] = "experiment";
  manifest["matrix"] = {{"construction", "K"},
                        {"n", n},
                        {"z", 0},
                        {"sha256", MatrixSha256(a)}};
  manifest["init"] = Json::array({n, 1});
  manifest["rule"] = options.rule;
  manifest["seed"] = std::to_string(options.seed);
  manifest["engine"] = "fast";
  manifest["stop"] = StopCondition::FirstHit(Profile{n / 2, n / 2 + 1}).ToString();
  manifest["horizon_factor"] = options.horizon_factor;
  manifest["first_hit"] = r.first_hit.ToString();
  manifest["horizon"] = r.horizon.ToString();
  Json outputs = Json::array();
  for (const auto& [name, body] : files) {
    WriteFile(out_dir / name, body);
    outputs.push_back({{"path", name}, {"sha256", Sha256Hex(body)}});
  }
  manifest["outputs"] = std::move(outputs);
  WriteJsonFile(out_dir / "manifest.json", manifest);
  return r;
}

SweepSummary SweepInit(std::size_t n, const std::string& rule_name,
                       std::uint64_t seed, const Integer& cap,
                       unsigned threads) {
  const PayoffMatrix a = BuildK(ConstructionParams{n, 0});
  TieBreakRule::FromName(rule_name, seed);  // validate the name up front
  const Profile ne{n / 2, n / 2 + 1};
  SweepSummary s;
  s.rows.resize(n * n);
  const auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < n * n; k += stride) {
      SweepRow& row = s.rows[k];
      row.init = Profile{k / n + 1, k % n + 1};
      TieBreakRule rule = TieBreakRule::FromName(rule_name, seed);
      try {
        row.first_hit = FirstHit(a, a, row.init, rule, ne, cap);
      } catch (const NotReached&) {
        row.first_hit.reset();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n * n));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
  }
  Integer total;
  for (const auto& row : s.rows) {
    if (!row.first_hit) continue;
    ++s.reached;
    total += *row.first_hit;
  }
  if (s.reached > 0) {
    s.mean_first_hit =
        Ratio(total, Integer(static_cast<std::int64_t>(s.reached)));
  }
  return s;
}

std::string SweepCsv(const SweepSummary& s) {
  std::ostringstream os;
  os << "init_row,init_col,first_hit\n";
  for (const auto& row : s.rows) {
    os << row.init.row << ',' << row.init.col << ','
       << (row.first_hit ? row.first_hit->ToString() : "not_reached") << '\n';
  }
  return os.str();
}

}  // namespace fplab
